use std::fs;
use std::path::{Path, PathBuf};

use fracdiff::TimeSeries64;
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Decimal rendering with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text with a header row, LF line endings and 17-digit values.
pub fn csv_table(header: &[String], rows: &[Vec<f64>]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&v| fmt17(v)))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Argument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

pub fn series_csv(clean: &TimeSeries64, noisy: Option<&TimeSeries64>) -> CliResult<String> {
    match noisy {
        None => {
            let rows: Vec<Vec<f64>> = clean
                .times()
                .iter()
                .zip(clean.values())
                .map(|(&t, &u)| vec![t, u])
                .collect();
            csv_table(&["t".into(), "u".into()], &rows)
        }
        Some(n) => {
            let rows: Vec<Vec<f64>> = clean
                .times()
                .iter()
                .zip(clean.values())
                .zip(n.values())
                .map(|((&t, &c), &u)| vec![t, c, u])
                .collect();
            csv_table(&["t".into(), "u_clean".into(), "u_noisy".into()], &rows)
        }
    }
}

/// Reads `t` and the observed column (`u_noisy` if present, else `u`).
pub fn read_series(path: &Path) -> CliResult<TimeSeries64> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_series(&text).map_err(|message| CliError::Series {
        path: path.display().to_string(),
        message,
    })
}

pub fn parse_series(text: &str) -> Result<TimeSeries64, String> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| e.to_string())?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let t_col = col("t").ok_or("missing column `t`")?;
    let u_col = col("u_noisy")
        .or_else(|| col("u"))
        .ok_or("missing column `u` (or `u_noisy`)")?;
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| format!("line {line}: {e}"))?;
        let field = |c: usize| -> Result<f64, String> {
            let s = rec.get(c).ok_or(format!("line {line}: missing field"))?;
            s.trim()
                .parse::<f64>()
                .map_err(|e| format!("line {line}: cannot parse `{s}` as a number ({e})"))
        };
        times.push(field(t_col)?);
        values.push(field(u_col)?);
    }
    TimeSeries64::new(times, values).map_err(|e| e.to_string())
}

/// Pretty JSON with a trailing newline.
pub fn json_text<S: Serialize>(value: &S) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            let s = fmt17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_uses_lf() {
        let s = csv_table(&["a".into(), "b".into()], &[vec![1.0, 2.0]]).unwrap();
        assert!(!s.contains('\r'));
        assert_eq!(s.lines().count(), 2);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = parse_series("t,u\n1,2\n2,abc\n").unwrap_err();
        assert!(e.contains("line 3"), "{e}");
        assert!(parse_series("x,y\n1,2\n").is_err());
        let s = parse_series("t,u_clean,u_noisy\n1,2,3\n2,1,1.5\n").unwrap();
        assert_eq!(s.values(), &[3.0, 1.5]);
    }
}
