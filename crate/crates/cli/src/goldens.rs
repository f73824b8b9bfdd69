//! Reference values for the exceptional polynomials.

pub struct QexpGolden {
    pub n: u64,
    pub f1: Option<&'static str>,
    pub f2: Option<&'static str>,
    pub big_f1: Option<&'static str>,
    pub big_f2: Option<&'static str>,
    pub degrees: (usize, usize),
    pub gh_valuation: i64,
    /// Invariant name and its factorization.
    pub invariants: &'static [(&'static str, &'static str)],
}

const LEVEL_5: QexpGolden = QexpGolden {
    n: 5,
    f1: Some("t + 5"),
    f2: Some("t + 10"),
    big_f1: Some("j - 1600"),
    big_f2: Some("2j + 25"),
    degrees: (1, 1),
    gh_valuation: 2,
    invariants: &[],
};

const LEVEL_7: QexpGolden = QexpGolden {
    n: 7,
    f1: Some("t^2 + 7t + 7"),
    f2: Some("t^4 + 21t^3 + 168t^2 + 588t + 735"),
    big_f1: Some("j^2 - 1104j - 288000"),
    big_f2: Some("15j^4 - 28857j^3 + 20163177j^2 - 5403404499j - 141176604743"),
    degrees: (2, 4),
    gh_valuation: 4,
    invariants: &[
        ("f1(0)", "7"),
        ("f2(0)", "3 * 5 * 7^2"),
        ("Disc f1", "3 * 7"),
        ("Disc f2", "-3^3 * 7^6"),
        ("Res(f1, f2)", "7^4"),
        ("Disc F1", "2^8 * 3^3 * 7^3"),
        ("Disc F2", "-3 * 7^18 * 43^2 * 139^2 * 421^2 * 591751^2"),
        ("Res(F1, F2)", "5 * 7^12 * 47 * 3491 * 5939 * 244603"),
    ],
};

const LEVEL_13: QexpGolden = QexpGolden {
    n: 13,
    f1: None,
    f2: None,
    big_f1: None,
    big_f2: None,
    degrees: (7, 35),
    gh_valuation: 14,
    invariants: &[],
};

pub fn qexp_golden(n: u64) -> Option<&'static QexpGolden> {
    [&LEVEL_5, &LEVEL_7, &LEVEL_13].into_iter().find(|g| g.n == n)
}
