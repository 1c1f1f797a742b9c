//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use fracdiff::caputo::caputo_l1;
use fracdiff::forward::{asymptotic_leading, geometric_times, solve_pointwise, ProblemSpec};
use fracdiff::mittag_leffler::{ml_eval, MlParams};
use fracdiff::noise::{add_noise, NormalStream};
use fracdiff::recovery::{recover, RecoveryConfig};
use fracdiff::spectral::{
    balakrishnan_neg_power, discretize, eigendecompose, fractional_apply, resolvent_positivity_check,
    BalakrishnanConfig, OperatorSpec, Spectrum,
};
use serde_json::Value;

mod oracles {
    include!("../../core/tests/oracles/ml_series_table.rs");
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn spectrum(op: &OperatorSpec<f64>) -> Spectrum<f64> {
    eigendecompose(&discretize(op).unwrap()).unwrap()
}

fn sin_cubed(op: &OperatorSpec<f64>) -> Vec<f64> {
    op.interpolate(|x| (PI * x).sin().powi(3))
}

fn h_norm(s: &Spectrum<f64>, v: &[f64]) -> f64 {
    s.norm(v)
}

/// e^{x^2} erfc(x) from the Laplace continued fraction.
fn erfcx(x: f64) -> f64 {
    let mut tail = x;
    for k in (1..4000).rev() {
        tail = x + (k as f64 * 0.5) / tail;
    }
    1.0 / (tail * PI.sqrt())
}

fn ml_accuracy() -> Outcome {
    let mut series_err: f64 = 0.0;
    for &(alpha, z, want) in oracles::ML_SERIES_ORACLE {
        let got = ml_eval(&MlParams::with_alpha(alpha).unwrap(), z).map_err(|e| e.to_string())?;
        series_err = series_err.max(rel(got, want));
    }
    let p = MlParams::with_alpha(0.5).unwrap();
    let mut erfcx_err: f64 = 0.0;
    for i in 0..=300 {
        let z = -(10f64.powf(1.0 + 3.0 * i as f64 / 300.0));
        erfcx_err = erfcx_err.max(rel(ml_eval(&p, z).unwrap(), erfcx(-z)));
    }
    ensure(
        series_err <= 1e-10 && erfcx_err <= 1e-8,
        format!(
            "series oracle {series_err:.2e} <= 1e-10 over {} points, erfcx {erfcx_err:.2e} <= 1e-8",
            oracles::ML_SERIES_ORACLE.len()
        ),
    )
}

fn random_nonnegative(g: &mut NormalStream, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            let x = g.next();
            if x > 0.5 {
                x
            } else {
                0.0
            }
        })
        .collect();
    if v.iter().all(|&x| x == 0.0) {
        v[n / 2] = 1.0;
    }
    v
}

fn fractional_oracle() -> Outcome {
    let op = OperatorSpec::unit(200);
    let d = discretize(&op).unwrap();
    let s = eigendecompose(&d).unwrap();
    let mut g = NormalStream::new(2);
    let data = vec![
        sin_cubed(&op),
        op.interpolate(|x| x * (1.0 - x)),
        (0..200).map(|_| g.next()).collect::<Vec<f64>>(),
    ];
    let mut worst: f64 = 0.0;
    for beta in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for v in &data {
            let x = fractional_apply(&s, -beta, v).unwrap();
            let y = balakrishnan_neg_power(&d, beta, v, &BalakrishnanConfig::default())
                .map_err(|e| e.to_string())?;
            let diff: Vec<f64> = x.iter().zip(&y).map(|(p, q)| p - q).collect();
            worst = worst.max(h_norm(&s, &diff) / h_norm(&s, &x));
        }
    }
    ensure(worst <= 1e-6, format!("max relative h-norm gap {worst:.2e} <= 1e-6"))
}

fn positivity() -> Outcome {
    let mut failures = Vec::new();
    let mut g = NormalStream::new(3);
    let mut min_ratio = f64::INFINITY;
    for op in [OperatorSpec::unit(60), OperatorSpec::variable_diffusivity(60)] {
        let d = discretize(&op).unwrap();
        let s = eigendecompose(&d).unwrap();
        for trial in 0..20 {
            let a = random_nonnegative(&mut g, 60);
            for beta in [0.25, 0.5, 0.75] {
                let w = fractional_apply(&s, -beta, &a).unwrap();
                let max = w.iter().cloned().fold(f64::MIN, f64::max);
                let min = w.iter().cloned().fold(f64::MAX, f64::min);
                min_ratio = min_ratio.min(min / max);
                if !(min > 0.0) {
                    failures.push(format!("trial {trial} beta {beta}"));
                }
            }
            for eta in [0.0, 1.0, 10.0] {
                if !resolvent_positivity_check(&d, eta, &a).unwrap() {
                    failures.push(format!("trial {trial} eta {eta}"));
                }
            }
        }
    }
    ensure(
        failures.is_empty(),
        format!("40 data x 3 exponents x 3 shifts, min entry/max {min_ratio:.2e}, failures {failures:?}"),
    )
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn asymptotic_law() -> Outcome {
    let op = OperatorSpec::unit(99);
    let s = spectrum(&op);
    let a = sin_cubed(&op);
    let mut lines = Vec::new();
    let mut ok = true;
    for (alpha, beta) in [(0.5, 0.7), (1.5, 0.3)] {
        let times = geometric_times(1e2, 1e4, 61).unwrap();
        let p = ProblemSpec::new(alpha, beta, a.clone(), 49, times.clone()).unwrap();
        let u = solve_pointwise(&p, &s).unwrap();
        let lx: Vec<f64> = times.iter().map(|t| t.ln()).collect();
        let ly: Vec<f64> = u.values().iter().map(|v| v.abs().ln()).collect();
        let slope = least_squares_slope(&lx, &ly);
        let law = asymptotic_leading(&p, &s).unwrap();
        let rem: Vec<f64> = times
            .iter()
            .zip(u.values())
            .map(|(&t, &v)| t.powf(2.0 * alpha) * (v - law.eval(t)).abs())
            .collect();
        let head = rem[..20].iter().cloned().fold(0.0, f64::max);
        let tail = rem[41..].iter().cloned().fold(0.0, f64::max);
        let pass = (slope + alpha).abs() <= 1e-2 && tail <= 1.5 * head;
        ok &= pass;
        lines.push(format!(
            "({alpha}, {beta}): slope {slope:.5}, remainder {head:.3e} -> {tail:.3e}"
        ));
    }
    ensure(ok, lines.join("; "))
}

fn caputo_residual(alpha: f64, dt: f64) -> f64 {
    let op = OperatorSpec::unit(40);
    let s = spectrum(&op);
    let phi = s.eigenvector(1).to_vec();
    let steps = (1.0 / dt).round() as usize;
    let times: Vec<f64> = (1..=steps).map(|i| i as f64 * dt).collect();
    let p = ProblemSpec::new(alpha, 0.5, phi.clone(), 20, times).unwrap();
    let u = solve_pointwise(&p, &s).unwrap();
    let mut samples = vec![phi[20]];
    samples.extend_from_slice(u.values());
    let d = caputo_l1(&samples, alpha, dt).unwrap();
    let rate = s.eigenvalue(1).powf(0.5);
    (d[steps] + rate * samples[steps]).abs() / phi[20]
}

fn caputo_order() -> Outcome {
    let r: Vec<f64> = [1e-2, 5e-3, 2.5e-3].iter().map(|&dt| caputo_residual(0.5, dt)).collect();
    let orders: Vec<f64> = r.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let min = orders.iter().cloned().fold(f64::INFINITY, f64::min);
    let r: Vec<String> = r.iter().map(|x| format!("{x:.3e}")).collect();
    ensure(min >= 1.4, format!("residuals [{}], orders {orders:.3?} >= 1.4", r.join(", ")))
}

fn round_trip() -> Outcome {
    let op = OperatorSpec::unit(99);
    let s = spectrum(&op);
    let a = sin_cubed(&op);
    let times = geometric_times(0.1, 1e4, 200).unwrap();
    let config = RecoveryConfig::default();
    let (mut clean_err, mut noisy_err) = (0.0f64, 0.0f64);
    let mut bad = Vec::new();
    for alpha in [0.3, 0.5, 0.7, 1.3, 1.7] {
        for beta in [0.2, 0.5, 0.8] {
            let p = ProblemSpec::new(alpha, beta, a.clone(), 49, times.clone()).unwrap();
            let u = solve_pointwise(&p, &s).unwrap();
            let noisy = add_noise(&u, 0.01, 7).unwrap();
            for (series, tol, worst) in [(&u, 1e-3, &mut clean_err), (&noisy, 2e-2, &mut noisy_err)] {
                match recover(series, &s, &a, 49, &config) {
                    Ok(r) => {
                        let e = (r.alpha_hat - alpha)
                            .abs()
                            .max(r.beta_hat.map_or(f64::INFINITY, |b| (b - beta).abs()));
                        *worst = worst.max(e);
                        if !(e <= tol) {
                            bad.push(format!("({alpha}, {beta}) tol {tol}: error {e:.2e}"));
                        }
                    }
                    Err(e) => bad.push(format!("({alpha}, {beta}) tol {tol}: {e}")),
                }
            }
        }
    }
    ensure(
        bad.is_empty(),
        format!("15 clean max error {clean_err:.2e} <= 1e-3, 15 noisy (1%, seed 7) max error {noisy_err:.2e} <= 2e-2 {bad:?}"),
    )
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn cli(args: &[&str]) -> Result<i32, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_fracdiff"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    o.status
        .code()
        .ok_or_else(|| "terminated by signal".to_string())
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn counterexample() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let cfg = fixture("counterexample");
    let cfg = cfg.to_str().unwrap();
    let series = dir.path().join("series.csv");
    let solved = cli(&["solve", "--config", cfg, "--out", out])?;
    let land = cli(&["landscape", "--config", cfg, "--series", series.to_str().unwrap(), "--out", out])?;
    let summary = read_json(&dir.path().join("landscape.json"))?;
    let variation = summary["beta_variation"].as_f64().unwrap_or(f64::NAN);
    let flat = summary["beta_flat"].as_bool().unwrap_or(false);
    let recovered = cli(&["recover", "--config", cfg, "--series", series.to_str().unwrap(), "--out", out])?;
    let r = read_json(&dir.path().join("recovery.json"))?;
    let warned = r["warnings"]
        .as_array()
        .is_some_and(|w| w.iter().any(|s| s.as_str().unwrap_or("").contains("beta undetermined")));
    ensure(
        solved == 0 && land == 0 && variation < 1e-12 && flat && recovered == 2 && warned,
        format!(
            "50x50 beta variation {variation:.2e} < 1e-12, flat {flat}, recover exit {recovered}, warning {warned}"
        ),
    )
}

fn landscape_uniqueness() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let cfg = fixture("landscape");
    let code = cli(&["landscape", "--config", cfg.to_str().unwrap(), "--grid", "50x50", "--out", out])?;
    let s = read_json(&dir.path().join("landscape.json"))?;
    let minima = s["local_minima"].as_array().cloned().unwrap_or_default();
    let at = |c: &Value| (c["alpha"].as_f64().unwrap_or(f64::NAN), c["beta"].as_f64().unwrap_or(f64::NAN));
    let argmin = at(&s["argmin"]);
    let near_truth = (argmin.0 - 0.5).abs() < 1e-12 && (argmin.1 - 0.45).abs() < 1e-12;
    ensure(
        code == 0 && minima.len() == 1 && near_truth,
        format!(
            "{} local minima on 50x50, argmin ({:.2}, {:.2}), truth (0.5, 0.45)",
            minima.len(),
            argmin.0,
            argmin.1
        ),
    )
}

fn outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn run_fixture(name: &str, dir: &Path) -> Result<(), String> {
    let cfg = fixture(name);
    let cfg = cfg.to_str().unwrap();
    let out = dir.to_str().unwrap();
    let series = dir.join("series.csv");
    let series = series.to_str().unwrap();
    cli(&["solve", "--config", cfg, "--out", out])?;
    cli(&["recover", "--config", cfg, "--series", series, "--out", out])?;
    cli(&["landscape", "--config", cfg, "--series", series, "--grid", "12x8", "--out", out])?;
    Ok(())
}

fn determinism() -> Outcome {
    let names = [
        "roundtrip",
        "roundtrip_noisy",
        "roundtrip_superdiffusive",
        "landscape",
        "counterexample",
        "variable_diffusivity",
    ];
    let mut differing = Vec::new();
    let mut files = 0;
    for name in names {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        run_fixture(name, a.path())?;
        run_fixture(name, b.path())?;
        let (fa, fb) = (outputs(a.path()), outputs(b.path()));
        files += fa.len();
        if fa.len() != 5 || fa != fb {
            differing.push(name);
        }
    }
    ensure(
        differing.is_empty(),
        format!("{} fixtures, {files} files byte-identical across two runs {differing:?}", names.len()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Mittag-Leffler accuracy", ml_accuracy),
        ("fractional power oracle agreement", fractional_oracle),
        ("discrete positivity", positivity),
        ("long-time asymptotic law", asymptotic_law),
        ("Caputo identity order", caputo_order),
        ("order round trip", round_trip),
        ("counterexample regression", counterexample),
        ("uniqueness landscape", landscape_uniqueness),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{tag} criterion {} ({name}): {detail} [{secs:.1} s]", i + 1);
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
