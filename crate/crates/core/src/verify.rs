//! Named verification suites. Each suite returns one [`VerifyOutcome`] per
//! check, with a record for every case it examined so runs can be diffed.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::analytic::{
    bessel_sum_closed_form, bessel_sum_coefficient, bessel_sum_direct,
    bessel_sum_expected_coefficient, hohum_report, hohum_target, odd_double_factorial, rid1_report,
    zeta_partial,
};
use crate::error::{Error, Result};
use crate::exact::{frac, rat, BigRational};
use crate::matrix::{
    bernoulli_from_matrix, diag_closed_form, rid2_residual, row_report, subdiag1_closed_form,
    subdiag2_closed_form, MInverse,
};
use crate::oracle::{bernoulli_recurrence, zeta_even_exact};
use crate::qpoly::{b2n_from_q, term_from_q, QPolynomialFamily};
use crate::to_f64;

/// Largest `n` the Bessel-sum suites run to; `(2n+1)!!` and the
/// alternating sums stay well inside `f64` range there.
pub const BESSEL_MAX_N: usize = 6;
/// Largest `n` for the zeta bridge; keeps `pi^(2n)` finite.
pub const ZETA_MAX_N: usize = 100;
/// `x` values for the sinc-sum convergence check.
pub const RID1_XS: [f64; 3] = [0.5, 1.5, 2.5];
/// Relative tolerance for `-(2n+1)!! * closed form = pi^n / sqrt(2)`.
pub const CLOSED_FORM_REL_TOL: f64 = 1e-8;
/// Absolute tolerance between the closed form and the direct `l`-sum.
pub const CLOSED_VS_DIRECT_TOL: f64 = 1e-5;
/// Bound on `error(2N) / error(N)` at `n = 1`.
pub const HOHUM_HALVING_RATIO: f64 = 0.75;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Rid2,
    Rows,
    ClosedForms,
    Qpoly,
    Rid1,
    Hohum,
    Zeta,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Rid2,
        Suite::Rows,
        Suite::ClosedForms,
        Suite::Qpoly,
        Suite::Rid1,
        Suite::Hohum,
        Suite::Zeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rid2 => "rid2",
            Suite::Rows => "rows",
            Suite::ClosedForms => "closed_forms",
            Suite::Qpoly => "qpoly",
            Suite::Rid1 => "rid1",
            Suite::Hohum => "hohum",
            Suite::Zeta => "zeta",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// What a check ranged over.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum CheckRange {
    Interval { from: usize, to: usize },
    Params(Vec<String>),
}

impl fmt::Display for CheckRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckRange::Interval { from, to } => write!(f, "n={from}..={to}"),
            CheckRange::Params(ps) => write!(f, "{}", ps.join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseRecord {
    pub case: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyOutcome {
    pub check_name: String,
    pub range: CheckRange,
    pub passed: bool,
    pub first_failure: Option<CaseRecord>,
    pub cases: Vec<CaseRecord>,
}

impl VerifyOutcome {
    fn new(check_name: &str, range: CheckRange, cases: Vec<CaseRecord>) -> Self {
        let first_failure = cases.iter().find(|c| !c.passed).cloned();
        Self {
            check_name: check_name.into(),
            range,
            passed: first_failure.is_none(),
            first_failure,
            cases,
        }
    }
}

fn case(case: impl Into<String>, passed: bool, detail: impl Into<String>) -> CaseRecord {
    CaseRecord {
        case: case.into(),
        passed,
        detail: detail.into(),
    }
}

fn interval(from: usize, to: usize) -> CheckRange {
    CheckRange::Interval { from, to }
}

/// Run one suite (or all of them). `max_n` bounds the exact suites;
/// `terms` is the truncation used by the numeric ones.
pub fn run_suite(suite: Suite, max_n: usize, terms: usize) -> Vec<VerifyOutcome> {
    let max_n = max_n.max(1);
    let terms = terms.max(1);
    match suite {
        Suite::Rid2 => vec![verify_rid2(max_n)],
        Suite::Rows => verify_rows(max_n),
        Suite::ClosedForms => verify_closed_forms(max_n),
        Suite::Qpoly => verify_qpoly(max_n),
        Suite::Rid1 => verify_rid1(terms),
        Suite::Hohum => verify_hohum(max_n, terms),
        Suite::Zeta => vec![verify_zeta(max_n, terms)],
        Suite::All => Suite::EACH
            .into_iter()
            .flat_map(|s| run_suite(s, max_n, terms))
            .collect(),
    }
}

pub fn verify_rid2(max_n: usize) -> VerifyOutcome {
    let table = bernoulli_recurrence(2 * max_n);
    let cases = (1..=max_n)
        .map(|n| match rid2_residual(n, &table) {
            Ok(r) => case(format!("n={n}"), r.is_one(), format!("residual {r}")),
            Err(e) => case(format!("n={n}"), false, e.to_string()),
        })
        .collect();
    VerifyOutcome::new("rid2_residual", interval(1, max_n), cases)
}

pub fn verify_rows(max_n: usize) -> Vec<VerifyOutcome> {
    let minv = MInverse::new(max_n);
    let inv = minv.inverse();
    let oracle = bernoulli_recurrence(2 * max_n);
    let reports: Vec<_> = (1..=max_n)
        .map(|n| row_report(n, inv).expect("row within size"))
        .collect();

    let per_row =
        |name: &str, from: usize, get: &dyn Fn(&crate::matrix::RowReport) -> Option<bool>| {
            let cases = reports
                .iter()
                .filter(|r| r.n >= from)
                .filter_map(|r| get(r).map(|ok| case(format!("n={}", r.n), ok, "")))
                .collect();
            VerifyOutcome::new(name, interval(from, max_n), cases)
        };

    let mut out = vec![
        per_row("row_sign_uniform", 1, &|r| Some(r.sign_uniform)),
        per_row("column1_vanishes", 3, &|r| r.column1_vanishes),
        per_row("term_count", 1, &|r| Some(r.term_count)),
        per_row("strictly_decreasing", 1, &|r| Some(r.strictly_decreasing)),
        per_row("dominance", 1, &|r| Some(r.dominance)),
        per_row("ratio_3_7", 3, &|r| r.ratio_3_7),
    ];

    let cases = (1..=max_n)
        .map(|n| {
            let b = bernoulli_from_matrix(n, inv).expect("row within size");
            let want = oracle.b2n(n).expect("oracle covers 2n");
            case(format!("n={n}"), b == want, format!("B_{} = {b}", 2 * n))
        })
        .collect();
    out.push(VerifyOutcome::new(
        "matrix_bernoulli_vs_oracle",
        interval(1, max_n),
        cases,
    ));

    let identity = minv
        .matrix()
        .mul(inv)
        .map(|p| p.is_identity())
        .unwrap_or(false);
    out.push(VerifyOutcome::new(
        "m_times_minv_identity",
        interval(1, max_n),
        vec![case(format!("size={max_n}"), identity, "")],
    ));
    out
}

pub fn verify_closed_forms(max_n: usize) -> Vec<VerifyOutcome> {
    let minv = MInverse::new(max_n);
    let inv = minv.inverse();
    let entry = |n: usize, k: usize| inv.get(n, k).expect("within size").abs();
    let cmp = |n: usize, want: BigRational, got: BigRational| {
        case(
            format!("n={n}"),
            want == got,
            format!("closed {want}, matrix {got}"),
        )
    };

    let diag = (1..=max_n)
        .map(|n| cmp(n, diag_closed_form(n), entry(n, n)))
        .collect();
    let sub1 = (2..=max_n)
        .map(|n| cmp(n, subdiag1_closed_form(n).expect("n >= 2"), entry(n, n - 1)))
        .collect();
    let sub2 = (3..=max_n)
        .map(|n| cmp(n, subdiag2_closed_form(n).expect("n >= 3"), entry(n, n - 2)))
        .collect();

    let displayed = [
        vec![frac(1, 6)],
        vec![frac(-1, 45), frac(7, 360)],
        vec![frac(1, 315), frac(-89, 15120), frac(31, 15120)],
    ];
    let mut fam = QPolynomialFamily::new();
    let qcases = displayed
        .iter()
        .enumerate()
        .map(|(l, want)| {
            let got = fam.get(l);
            case(
                format!("l={l}"),
                got.coeffs() == want.as_slice(),
                got.to_string(),
            )
        })
        .collect();

    vec![
        VerifyOutcome::new("diag_closed_form", interval(1, max_n), diag),
        VerifyOutcome::new("subdiag1_closed_form", interval(2, max_n), sub1),
        VerifyOutcome::new("subdiag2_closed_form", interval(3, max_n), sub2),
        VerifyOutcome::new("q_displayed_coefficients", interval(0, 2), qcases),
    ]
}

pub fn verify_qpoly(max_n: usize) -> Vec<VerifyOutcome> {
    let oracle = bernoulli_recurrence(2 * max_n);
    let minv = MInverse::new(max_n);
    let mut fam = QPolynomialFamily::new();

    let b2n = (1..=max_n)
        .map(|n| {
            let got = b2n_from_q(n, &mut fam);
            let want = oracle.b2n(n).expect("covered").abs();
            case(
                format!("n={n}"),
                got == want,
                format!("|B_{}| = {got}", 2 * n),
            )
        })
        .collect();

    let mut terms = Vec::new();
    for n in 2..=max_n {
        let bad = (2..=n).find(|&k| {
            let got = term_from_q(n, k, &mut fam).expect("2 <= k <= n");
            got != minv.inverse().get(n, k).expect("within size").abs()
        });
        terms.push(match bad {
            None => case(format!("n={n}"), true, ""),
            Some(k) => case(format!("n={n}"), false, format!("column {k} differs")),
        });
    }

    let degrees = (0..max_n.saturating_sub(2).max(1))
        .map(|l| {
            let q = fam.get(l);
            let ok = q.degree() == Some(l);
            case(format!("l={l}"), ok, format!("degree {:?}", q.degree()))
        })
        .collect::<Vec<_>>();
    let top = degrees.len() - 1;

    vec![
        VerifyOutcome::new("b2n_from_q_vs_oracle", interval(1, max_n), b2n),
        VerifyOutcome::new("term_from_q_vs_minv", interval(2, max_n), terms),
        VerifyOutcome::new("q_degree", interval(0, top), degrees),
    ]
}

/// Truncations used by the sinc-sum check: `terms/100`, `terms/10`, `terms`.
pub fn rid1_checkpoints(terms: usize) -> Vec<usize> {
    vec![(terms / 100).max(1), (terms / 10).max(1), terms]
}

pub fn verify_rid1(terms: usize) -> Vec<VerifyOutcome> {
    let cps = rid1_checkpoints(terms);
    let cases = RID1_XS
        .iter()
        .map(|&x| {
            let r = rid1_report(x, &cps);
            let errs: Vec<String> = r
                .truncations
                .iter()
                .map(|t| format!("L={}:{:.3e}", t.terms, t.abs_error))
                .collect();
            // Fewer than three distinct truncations cannot show decay.
            let decades = r.truncations.len() == 3;
            let mut detail = errs.join(" ");
            if !decades {
                detail += " (needs terms >= 100)";
            }
            case(format!("x={x}"), decades && r.strictly_converging(), detail)
        })
        .collect();
    vec![VerifyOutcome::new(
        "rid1_decade_decay",
        CheckRange::Params(RID1_XS.iter().map(|x| format!("x={x}")).collect()),
        cases,
    )]
}

/// Leading-order estimate of `|pi^n/sqrt(2) - hohum_partial(n, terms)|`.
///
/// At `z = pi l`, `j_n(z)` reduces to its cosine part: `1/z` for odd `n`,
/// `n(n+1)/(2 z^2)` for even `n`. Summing the tail of those terms gives the
/// estimate below.
pub fn hohum_error_model(n: usize, terms: usize) -> f64 {
    let (p, a) = if n % 2 == 1 {
        (1, 1.0)
    } else {
        (2, (n * (n + 1)) as f64 / 2.0)
    };
    let df = to_f64(&rat(odd_double_factorial(n)));
    let power = (n + p - 1) as i32;
    df * SQRT_2 * a / (PI.powi(p as i32) * power as f64 * (terms as f64).powi(power))
}

/// Pass threshold for one truncated Bessel sum: twice the model error plus
/// a rounding floor.
pub fn hohum_tolerance(n: usize, terms: usize) -> f64 {
    2.0 * hohum_error_model(n, terms) + 1e-12 * hohum_target(n)
}

pub fn verify_hohum(max_n: usize, terms: usize) -> Vec<VerifyOutcome> {
    let top = max_n.min(BESSEL_MAX_N);
    let table = bernoulli_recurrence(2 * top);
    let errors: Vec<f64> = (1..=top)
        .map(|n| hohum_report(n, &[terms]).truncations[0].abs_error)
        .collect();

    let per_n = (1..=top)
        .map(|n| {
            let err = errors[n - 1];
            let tol = hohum_tolerance(n, terms);
            case(
                format!("n={n}"),
                err <= tol,
                format!("error {err:.3e}, tolerance {tol:.3e}"),
            )
        })
        .collect();

    let largest = errors
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i + 1)
        .unwrap_or(1);
    let largest_case = vec![case(
        format!("N={terms}"),
        largest == 1,
        format!("largest error at n={largest}"),
    )];

    let r = hohum_report(1, &[terms, 2 * terms]);
    let ratio = r.truncations[1].abs_error / r.truncations[0].abs_error;
    let halving = vec![case(
        format!("N={terms}"),
        ratio <= HOHUM_HALVING_RATIO,
        format!("error(2N)/error(N) = {ratio:.4}"),
    )];

    let exact = (1..=top)
        .map(|n| {
            let c = bessel_sum_coefficient(n, &table).expect("table covers 2n");
            let ok = c == bessel_sum_expected_coefficient(n);
            case(format!("n={n}"), ok, format!("coefficient {c}"))
        })
        .collect();

    let end_to_end = (1..=top)
        .map(|n| {
            let closed = bessel_sum_closed_form(n, &table).expect("table covers 2n");
            let df = to_f64(&rat(odd_double_factorial(n)));
            let target = hohum_target(n);
            let rel = ((-df * closed) - target).abs() / target;
            case(
                format!("n={n}"),
                rel <= CLOSED_FORM_REL_TOL,
                format!("relative error {rel:.3e}"),
            )
        })
        .collect();

    let vs_direct = (2..=top)
        .map(|n| {
            let closed = bessel_sum_closed_form(n, &table).expect("table covers 2n");
            let direct = bessel_sum_direct(n, terms);
            let diff = (closed - direct).abs();
            let tol = CLOSED_VS_DIRECT_TOL + hohum_tolerance(n, terms);
            case(
                format!("n={n}"),
                diff <= tol,
                format!("difference {diff:.3e}"),
            )
        })
        .collect();

    vec![
        VerifyOutcome::new("hohum_truncation_error", interval(1, top), per_n),
        VerifyOutcome::new("hohum_error_largest_at_n1", interval(1, top), largest_case),
        VerifyOutcome::new("hohum_n1_error_halving", interval(1, 1), halving),
        VerifyOutcome::new("bessel_closed_form_exact", interval(1, top), exact),
        VerifyOutcome::new(
            "bessel_closed_form_end_to_end",
            interval(1, top),
            end_to_end,
        ),
        VerifyOutcome::new("bessel_closed_form_vs_direct", interval(2, top), vs_direct),
    ]
}

/// `sum_{k>K} k^(-2n) < 1 / ((2n-1) K^(2n-1))`.
pub fn zeta_tail_bound(n: usize, terms: usize) -> f64 {
    let p = (2 * n - 1) as f64;
    1.0 / (p * (terms as f64).powf(p))
}

pub fn verify_zeta(max_n: usize, terms: usize) -> VerifyOutcome {
    let top = max_n.min(ZETA_MAX_N);
    let table = bernoulli_recurrence(2 * top);
    let cases = (1..=top)
        .map(|n| {
            let exact = zeta_even_exact(n, &table).expect("covered").to_f64();
            let partial = zeta_partial(2 * n as u32, terms);
            let diff = (exact - partial).abs();
            let tol = zeta_tail_bound(n, terms) + 1e-14 * exact;
            case(
                format!("n={n}"),
                diff <= tol,
                format!("difference {diff:.3e}, tolerance {tol:.3e}"),
            )
        })
        .collect();
    VerifyOutcome::new("zeta_bridge", interval(1, top), cases)
}
