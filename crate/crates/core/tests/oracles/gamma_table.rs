// Generated by gen_gamma_oracle.py: (x, 1/Gamma(x)) at 40 digits.
pub const RECIP_GAMMA_ORACLE: &[(f64, f64)] = &[
    (-49.7, 2.4170233910240893532e+63),
    (-33.25, 4.7064141405307810582e+36),
    (-20.5, -3.527764206197439298e+18),
    (-10.1, -4.5179023580186051102e+5),
    (-3.5, 3.7024941420321506331),
    (-2.5, -1.057855469152043038),
    (-1.5, 4.2314218766081721521e-1),
    (-0.999, -9.9957598318524976753e-4),
    (-0.5, -2.8209479177387814347e-1),
    (-0.25, -2.0401223477456574527e-1),
    (0.001, 1.0005765597449938948e-3),
    (0.1, 1.0511370061117778683e-1),
    (0.3, 3.3427275256419054098e-1),
    (0.5, 5.6418958354775628695e-1),
    (0.75, 8.1604893909826298108e-1),
    (1.5, 1.1283791670955125739),
    (2.5, 7.5225277806367504926e-1),
    (3.3, 3.7265635737367961586e-1),
    (7.77, 3.1431284540341862158e-4),
    (10.5, 8.8239572002038009055e-7),
    (17.2, 2.724872513708159847e-14),
    (25.5, 3.2396317992225029757e-25),
    (33.3, 1.3355454245501485667e-36),
    (44.4, 3.6530664383685197788e-54),
    (49.9, 2.4283567763226979763e-63),
];
