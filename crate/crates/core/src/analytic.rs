//! Floating-point checks of the scattering-side identities: the sinc sum
//! that equals one, the alternating spherical-Bessel sum for `pi^n / sqrt(2)`,
//! its finite zeta-value closed forms, zeta partial sums and the 2D cross
//! section of the inverse-square potential.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, frac, rat, BigInt, BigRational};
use crate::oracle::{zeta_even_exact, BernoulliTable};
use crate::to_f64;

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.carry);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `sin(z) / z`, with the even Taylor series near zero.
pub fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// `j_n(z)` for `z > 0`.
pub fn spherical_bessel_j(n: usize, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::NonPositiveArgument {
            name: "z",
            value: z.to_string(),
        });
    }
    Ok(spherical_bessel_upto(n, z)[n])
}

/// `j_0(z), ..., j_n(z)` for `z > 0`.
///
/// Small `z` uses the ascending series, `n < z` the upward recurrence, and
/// otherwise Miller's downward recurrence normalized against `j_0`/`j_1`.
pub fn spherical_bessel_upto(n: usize, z: f64) -> Vec<f64> {
    if z < 1.0 {
        (0..=n).map(|l| series_j(l, z)).collect()
    } else if (n as f64) < z {
        upward_j(n, z)
    } else {
        downward_j(n, z)
    }
}

fn upward_j(n: usize, z: f64) -> Vec<f64> {
    let (s, c) = z.sin_cos();
    let mut out = Vec::with_capacity(n + 1);
    out.push(s / z);
    if n >= 1 {
        out.push(s / (z * z) - c / z);
    }
    for l in 1..n {
        let next = (2 * l + 1) as f64 / z * out[l] - out[l - 1];
        out.push(next);
    }
    out
}

fn downward_j(n: usize, z: f64) -> Vec<f64> {
    let start = 2 * n.max(z.ceil() as usize) + 30;
    let mut out = vec![0.0; n + 1];
    let (mut above, mut cur) = (0.0f64, 1e-300f64);
    for l in (0..start).rev() {
        // cur holds f_{l+1}, above holds f_{l+2}
        let next = (2 * l + 3) as f64 / z * cur - above;
        above = cur;
        cur = next;
        if l <= n {
            out[l] = cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            above *= 1e-250;
            for v in out.iter_mut().skip(l) {
                *v *= 1e-250;
            }
        }
    }
    let (s, c) = z.sin_cos();
    let j0 = s / z;
    let j1 = s / (z * z) - c / z;
    // n >= z >= 1 here, so out[1] exists.
    let scale = if j0.abs() >= j1.abs() {
        j0 / out[0]
    } else {
        j1 / out[1]
    };
    out.iter().map(|v| v * scale).collect()
}

fn series_j(n: usize, z: f64) -> f64 {
    // z^n / (2n+1)!!
    let lead = (1..=n).fold(1.0, |acc, i| acc * z / (2 * i + 1) as f64);
    let h = -z * z / 2.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        term *= h / (k as f64 * (2 * n + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// `sinc(pi x) + 2 sum_{l=1}^{terms} (-1)^l sinc(pi sqrt(l^2 + x^2))`, which
/// tends to 1.
pub fn rid1_partial(x: f64, terms: usize) -> f64 {
    let mut acc = CompensatedSum::default();
    rid1_accumulate(x, 1, terms, &mut acc);
    sinc(PI * x) + 2.0 * acc.value()
}

fn rid1_accumulate(x: f64, from: usize, to: usize, acc: &mut CompensatedSum) {
    let x2 = x * x;
    for l in from..=to {
        let lf = l as f64;
        let t = sinc(PI * (lf * lf + x2).sqrt());
        acc.add(if l % 2 == 0 { t } else { -t });
    }
}

/// `(2n+1)!! = (2n+1)! / (2^n n!)`.
pub fn odd_double_factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::from(1), |acc, i| acc * (2 * i + 1))
}

/// Target of the Bessel-sum identity, `pi^n / sqrt(2)`.
pub fn hohum_target(n: usize) -> f64 {
    PI.powi(n as i32) / SQRT_2
}

/// `sum_{l=1}^{terms} (-1)^l J_{n+1/2}(pi l) / l^(n+1/2)`, evaluated as
/// `sqrt(2) sum (-1)^l j_n(pi l) / l^n`.
pub fn bessel_sum_direct(n: usize, terms: usize) -> f64 {
    let mut acc = CompensatedSum::default();
    bessel_accumulate(n, 1, terms, &mut acc);
    SQRT_2 * acc.value()
}

fn bessel_accumulate(n: usize, from: usize, to: usize, acc: &mut CompensatedSum) {
    for l in from..=to {
        let lf = l as f64;
        let j = spherical_bessel_upto(n, PI * lf)[n];
        let t = j / lf.powi(n as i32);
        acc.add(if l % 2 == 0 { t } else { -t });
    }
}

/// `-(2n+1)!! sqrt(2) sum_{l=1}^{terms} (-1)^l j_n(pi l) / l^n`, which tends
/// to `pi^n / sqrt(2)` with an `O(1/terms)` error at `n = 1`.
pub fn hohum_partial(n: usize, terms: usize) -> f64 {
    -to_f64(&rat(odd_double_factorial(n))) * bessel_sum_direct(n, terms)
}

/// `Gamma(x)` at integer `x`, `None` at the poles `x <= 0`.
fn gamma_int(x: i64) -> Option<BigInt> {
    (x > 0).then(|| factorial(x as u64 - 1))
}

/// Exact rational `c` with `sum_l (-1)^l J_{n+1/2}(l pi) / l^(n+1/2) = c sqrt(2) pi^n`,
/// from the finite zeta-value closed forms (separate even and odd `n`).
/// Terms whose Gamma argument is a pole contribute zero.
pub fn bessel_sum_coefficient(n: usize, table: &BernoulliTable) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
        });
    }
    let h = (n / 2) as i64;
    let mut sum = BigRational::from_integer(0.into());
    for k in 0..=((n as i64 - 1) / 2) {
        // zeta(2k+2h+2) / pi^(2k+2) (even) or / pi^(2k+1) (odd) is zc * pi^n
        let zc = zeta_even_exact((k + h + 1) as usize, table)?.pi_coefficient;
        let top = factorial((2 * h + 2 * k + 1) as u64);
        let (below, gamma, pow2) = if n % 2 == 0 {
            (
                factorial(2 * k as u64 + 1),
                gamma_int(2 * h - 2 * k),
                2 * k + 1,
            )
        } else {
            (factorial(2 * k as u64), gamma_int(2 * h + 2 - 2 * k), 2 * k)
        };
        let Some(gamma) = gamma else { continue };
        let term = BigRational::new(top, below * gamma * (BigInt::from(1) << pow2)) * zc;
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let outer = if h % 2 == 0 { 1 } else { -1 } * if n % 2 == 0 { 1 } else { -1 };
    Ok(sum * rat(outer))
}

/// The closed forms evaluated in floating point.
pub fn bessel_sum_closed_form(n: usize, table: &BernoulliTable) -> Result<f64> {
    let c = bessel_sum_coefficient(n, table)?;
    Ok(to_f64(&c) * SQRT_2 * PI.powi(n as i32))
}

/// `-1 / (2 (2n+1)!!)`: the coefficient forced by the `pi^n / sqrt(2)` identity.
pub fn bessel_sum_expected_coefficient(n: usize) -> BigRational {
    -frac(1, 2) / rat(odd_double_factorial(n))
}

/// `sum_{k=1}^{terms} k^(-s)`, accumulated smallest term first.
pub fn zeta_partial(s: u32, terms: usize) -> f64 {
    let s = s as i32;
    let mut acc = CompensatedSum::default();
    for k in (1..=terms).rev() {
        acc.add((k as f64).powi(-s));
    }
    acc.value()
}

/// Integrated 2D cross section `2 pi^2 m kappa / (hbar^2 k)` for `V = kappa / r^2`.
pub fn cross_section(mass: f64, kappa: f64, k: f64, hbar: f64) -> Result<f64> {
    for (name, value) in [("mass", mass), ("kappa", kappa), ("k", k), ("hbar", hbar)] {
        if !(value > 0.0) {
            return Err(Error::NonPositiveArgument {
                name,
                value: value.to_string(),
            });
        }
    }
    Ok(2.0 * PI * PI * mass * kappa / (hbar * hbar * k))
}

/// One truncation of a partial-sum identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Truncation {
    #[serde(rename = "L")]
    pub terms: usize,
    pub value: f64,
    pub abs_error: f64,
}

/// Partial sums of one identity at increasing truncation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub identity_name: String,
    pub parameter: f64,
    pub target: f64,
    pub truncations: Vec<Truncation>,
}

impl ConvergenceReport {
    /// True when the error shrinks strictly at every step.
    pub fn strictly_converging(&self) -> bool {
        self.truncations
            .windows(2)
            .all(|w| w[1].abs_error < w[0].abs_error)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("L,value,abs_error\n");
        for t in &self.truncations {
            out.push_str(&format!("{},{:e},{:e}\n", t.terms, t.value, t.abs_error));
        }
        out
    }
}

fn sorted_checkpoints(checkpoints: &[usize]) -> Vec<usize> {
    let mut cps: Vec<usize> = checkpoints.iter().copied().filter(|&c| c > 0).collect();
    cps.sort_unstable();
    cps.dedup();
    cps
}

/// Sinc-sum partial sums at each checkpoint, sharing one pass over `l`.
pub fn rid1_report(x: f64, checkpoints: &[usize]) -> ConvergenceReport {
    let mut acc = CompensatedSum::default();
    let mut done = 0;
    let head = sinc(PI * x);
    let truncations = sorted_checkpoints(checkpoints)
        .into_iter()
        .map(|cp| {
            rid1_accumulate(x, done + 1, cp, &mut acc);
            done = cp;
            let value = head + 2.0 * acc.value();
            Truncation {
                terms: cp,
                value,
                abs_error: (value - 1.0).abs(),
            }
        })
        .collect();
    ConvergenceReport {
        identity_name: "rid1".into(),
        parameter: x,
        target: 1.0,
        truncations,
    }
}

/// Bessel-sum partial sums for `pi^n / sqrt(2)` at each checkpoint.
pub fn hohum_report(n: usize, checkpoints: &[usize]) -> ConvergenceReport {
    let prefactor = -to_f64(&rat(odd_double_factorial(n))) * SQRT_2;
    let target = hohum_target(n);
    let mut acc = CompensatedSum::default();
    let mut done = 0;
    let truncations = sorted_checkpoints(checkpoints)
        .into_iter()
        .map(|cp| {
            bessel_accumulate(n, done + 1, cp, &mut acc);
            done = cp;
            let value = prefactor * acc.value();
            Truncation {
                terms: cp,
                value,
                abs_error: (value - target).abs(),
            }
        })
        .collect();
    ConvergenceReport {
        identity_name: "hohum".into(),
        parameter: n as f64,
        target,
        truncations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::bernoulli_recurrence;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(PI).abs() < 1e-15);
        assert!((sinc(PI / 2.0) - 2.0 / PI).abs() < 1e-15);
        // both branches agree at the switch
        let z = 1e-4;
        assert!((sinc(z * 0.999) - (z * 0.999).sin() / (z * 0.999)).abs() < 1e-16);
    }

    #[test]
    fn bessel_low_orders() {
        assert_eq!(spherical_bessel_j(0, 2.3).unwrap(), sinc(2.3));
        assert!((spherical_bessel_j(1, PI).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((spherical_bessel_j(2, PI).unwrap() - 3.0 / (PI * PI)).abs() < 1e-15);
        assert!(spherical_bessel_j(2, 0.0).is_err());
        assert!(spherical_bessel_j(2, -1.0).is_err());
    }

    #[test]
    fn bessel_reference_values() {
        // 40-digit reference values.
        let cases = [
            (0, 1.5, 0.664_996_657_736_036_3),
            (3, 1.0, 0.009_006_581_117_112_516),
            (5, 2.5, 0.007_357_638_737_768_936),
            (10, 3.0, 3.526_003_893_175_256_3e-6),
            (20, 10.0, 2.308_371_961_319_468_7e-6),
            (40, 5.0, 1.210_347_583_370_466_1e-33),
            (40, 50.0, -0.026_063_369_521_863_83),
            (7, 0.3, 1.076_068_491_011_497_4e-10),
            (2, 0.01, 6.666_619_047_751_323e-6),
            (15, 100.0, 0.007_877_261_747_818_648),
            (30, 31.0, 0.036_769_697_464_896_52),
        ];
        for (n, z, want) in cases {
            let got = spherical_bessel_j(n, z).unwrap();
            assert!(close(got, want, 1e-12), "j_{n}({z}) = {got}, want {want}");
        }
    }

    #[test]
    fn bessel_recurrence_consistency() {
        for z in [PI, 2.0 * PI, 10.0 * PI] {
            let js = spherical_bessel_upto(21, z);
            for n in 1..=20 {
                let lhs = js[n + 1];
                let rhs = (2 * n + 1) as f64 / z * js[n] - js[n - 1];
                let scale = lhs.abs().max(((2 * n + 1) as f64 / z * js[n]).abs());
                assert!((lhs - rhs).abs() <= 1e-10 * scale, "n={n} z={z}");
                // single-order calls agree with the sequence
                assert_eq!(
                    spherical_bessel_j(n, z).unwrap(),
                    spherical_bessel_upto(n, z)[n]
                );
            }
        }
    }

    #[test]
    fn rid1_at_zero_is_exactly_one_up_to_rounding() {
        for l in [1, 10, 100] {
            assert!((rid1_partial(0.0, l) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rid1_decays() {
        let r = rid1_report(0.5, &[100, 1000, 10_000]);
        assert!(r.strictly_converging(), "{r:?}");
        assert_eq!(r.truncations[2].value, rid1_partial(0.5, 10_000));
        assert!(r.to_csv().starts_with("L,value,abs_error\n100,"));
    }

    #[test]
    fn hohum_small() {
        let e1 = (hohum_partial(2, 1) - hohum_target(2)).abs();
        let e2 = (hohum_partial(2, 2) - hohum_target(2)).abs();
        assert!(e2 < e1);
        let r = hohum_report(1, &[1000, 10, 100]);
        let terms: Vec<_> = r.truncations.iter().map(|t| t.terms).collect();
        assert_eq!(terms, vec![10, 100, 1000]);
        assert!(r.strictly_converging());
        assert!((r.truncations[2].value - hohum_partial(1, 1000)).abs() < 1e-12);
    }

    #[test]
    fn closed_form_coefficients_are_exact() {
        let t = bernoulli_recurrence(120);
        for n in 1..=60 {
            assert_eq!(
                bessel_sum_coefficient(n, &t).unwrap(),
                bessel_sum_expected_coefficient(n),
                "n = {n}"
            );
        }
        assert!(bessel_sum_coefficient(61, &t).is_err());
        let v = bessel_sum_closed_form(1, &t).unwrap();
        assert!(close(v, -PI / (3.0 * SQRT_2), 1e-15));
    }

    #[test]
    fn zeta_partials() {
        assert_eq!(zeta_partial(2, 1), 1.0);
        assert!((zeta_partial(4, 10_000) - PI.powi(4) / 90.0).abs() < 1e-12);
        assert!((zeta_partial(2, 1_000_000) - PI * PI / 6.0).abs() < 1.1e-6);
    }

    #[test]
    fn cross_section_scaling() {
        let base = cross_section(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((base - 2.0 * PI * PI).abs() < 1e-12);
        let dk = cross_section(1.0, 1.0, 2.0, 1.0).unwrap();
        assert!((dk - base / 2.0).abs() < 1e-12);
        let dkappa = cross_section(1.0, 2.0, 1.0, 1.0).unwrap();
        assert!((dkappa - 2.0 * base).abs() < 1e-12);
        assert!(cross_section(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(cross_section(1.0, 1.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn compensated_merge() {
        let mut a = CompensatedSum::default();
        let mut b = CompensatedSum::default();
        for i in 0..1000 {
            a.add(0.1);
            b.add(1e-17 * i as f64);
        }
        a.merge(&b);
        assert!((a.value() - (100.0 + 1e-17 * 499_500.0)).abs() < 1e-13);
    }
}
