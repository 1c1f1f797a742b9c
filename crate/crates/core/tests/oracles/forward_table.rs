pub const FORWARD_ORACLE: &[(f64, f64)] = &[
    (0.01, 0.18331936656792225354),
    (0.031622776601683793, 0.14890087837839170346),
    (0.1, 0.10924890122867767553),
    (0.31622776601683793, 0.072073258176357689576),
    (1.0, 0.043767911818316620442),
    (3.1622776601683793, 0.025370129825157042723),
    (10.0, 0.014417604736214149863),
    (31.622776601683793, 0.0081355644013383359739),
    (100.0, 0.0045800012787162539397),
];
