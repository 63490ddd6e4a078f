//! Classical Bernoulli-number generators used as ground truth, and exact
//! `zeta(2n) / pi^(2n)` coefficients derived from them.
//!
//! Convention: `B_1 = -1/2`. Only even indices are stored; `B_1` is fixed
//! and every odd index from 3 on is zero.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, frac, rat, BigInt, BigRational};

/// How a table of Bernoulli numbers was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recurrence,
    #[serde(rename = "akiyama")]
    AkiyamaTanigawa,
    #[serde(rename = "matrix")]
    MatrixInverse,
    #[serde(rename = "qpoly")]
    QPolynomial,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Recurrence,
        Method::AkiyamaTanigawa,
        Method::MatrixInverse,
        Method::QPolynomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Recurrence => "recurrence",
            Method::AkiyamaTanigawa => "akiyama",
            Method::MatrixInverse => "matrix",
            Method::QPolynomial => "qpoly",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug)]
enum Generator {
    Recurrence,
    /// Working row of the Akiyama-Tanigawa triangle after the last index.
    AkiyamaTanigawa(Vec<BigRational>),
    /// Values supplied from outside; cannot be extended here.
    Fixed,
}

/// Signed `B_{2n}` for `0 <= 2n <= max_index`.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    method: Method,
    even: Vec<BigRational>,
    generator: Generator,
}

impl PartialEq for BernoulliTable {
    fn eq(&self, other: &Self) -> bool {
        self.even == other.even
    }
}

impl BernoulliTable {
    /// Wrap values `B_0, B_2, ..., B_{2N}` computed elsewhere.
    pub fn from_even_values(method: Method, even: Vec<BigRational>) -> Self {
        Self {
            method,
            even,
            generator: Generator::Fixed,
        }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Largest even index held.
    pub fn max_index(&self) -> usize {
        2 * self.even.len().saturating_sub(1)
    }

    /// `B_{2n}` for `n = 0..=max_index/2`.
    pub fn even_values(&self) -> &[BigRational] {
        &self.even
    }

    pub fn covers(&self, index: usize) -> bool {
        index % 2 == 1 || index <= self.max_index()
    }

    /// `B_m`.
    pub fn get(&self, index: usize) -> Result<BigRational> {
        match index {
            1 => Ok(frac(-1, 2)),
            m if m % 2 == 1 => Ok(BigRational::zero()),
            m => self.even.get(m / 2).cloned().ok_or(Error::IndexOutOfTable {
                index: m,
                max_index: self.max_index(),
            }),
        }
    }

    /// `B_{2n}`.
    pub fn b2n(&self, n: usize) -> Result<BigRational> {
        self.get(2 * n)
    }

    /// Grow the table to cover `max_index`. Values already present never
    /// change.
    pub fn extend_to(&mut self, max_index: usize) -> Result<()> {
        if max_index <= self.max_index() {
            return Ok(());
        }
        match &mut self.generator {
            Generator::Recurrence => recurrence_extend(&mut self.even, max_index),
            Generator::AkiyamaTanigawa(row) => at_extend(&mut self.even, row, max_index),
            Generator::Fixed => {
                return Err(Error::IndexOutOfTable {
                    index: max_index,
                    max_index: self.max_index(),
                })
            }
        }
        Ok(())
    }
}

/// All `B_m` up to `max_index` from `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli_recurrence(max_index: usize) -> BernoulliTable {
    let mut even = vec![BigRational::one()];
    recurrence_extend(&mut even, max_index);
    BernoulliTable {
        method: Method::Recurrence,
        even,
        generator: Generator::Recurrence,
    }
}

fn recurrence_extend(even: &mut Vec<BigRational>, max_index: usize) {
    // B_1 is fixed by convention; the recurrence resumes after the last stored index.
    let start = (2 * even.len() - 1).max(2);
    for m in start..=max_index {
        let m64 = m as u64;
        // k = 0 and k = 1 terms, then the even k < m.
        let mut sum = rat(binomial(m64 + 1, 0)) + rat(binomial(m64 + 1, 1)) * frac(-1, 2);
        for (j, b) in even.iter().enumerate().skip(1) {
            let k = 2 * j;
            if k >= m {
                break;
            }
            sum += rat(binomial(m64 + 1, k as i64)) * b;
        }
        let b_m = -sum / rat(m64 + 1);
        if m % 2 == 1 {
            assert!(b_m.is_zero(), "recurrence produced nonzero B_{m} = {b_m}");
        } else {
            even.push(b_m);
        }
    }
}

/// All `B_m` up to `max_index` via the Akiyama-Tanigawa triangle.
pub fn bernoulli_akiyama_tanigawa(max_index: usize) -> BernoulliTable {
    let mut even = Vec::new();
    let mut row = Vec::new();
    at_extend(&mut even, &mut row, max_index);
    BernoulliTable {
        method: Method::AkiyamaTanigawa,
        even,
        generator: Generator::AkiyamaTanigawa(row),
    }
}

fn at_extend(even: &mut Vec<BigRational>, row: &mut Vec<BigRational>, max_index: usize) {
    for m in row.len()..=max_index {
        row.push(frac(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = diff * rat(j as i64);
        }
        // row[0] is B_m with the B_1 = +1/2 convention.
        match m {
            1 => {}
            m if m % 2 == 1 => {
                assert!(row[0].is_zero(), "Akiyama-Tanigawa produced nonzero B_{m}");
            }
            _ => even.push(row[0].clone()),
        }
    }
}

/// `beta_m = B_m / m`.
pub fn divided_bernoulli(m: usize, table: &BernoulliTable) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "divided Bernoulli index",
            value: 0,
        });
    }
    Ok(table.get(m)? / rat(m as i64))
}

/// `zeta(2n) = pi_coefficient * pi^(2n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaEvenValue {
    pub power: usize,
    #[serde(serialize_with = "crate::export::ser_rational")]
    pub pi_coefficient: BigRational,
}

impl ZetaEvenValue {
    pub fn to_f64(&self) -> f64 {
        crate::to_f64(&self.pi_coefficient) * std::f64::consts::PI.powi(self.power as i32)
    }
}

/// Exact `zeta(2n) / pi^(2n) = 2^(2n-1) |B_{2n}| / (2n)!`.
pub fn zeta_even_exact(n: usize, table: &BernoulliTable) -> Result<ZetaEvenValue> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "zeta even argument n",
            value: 0,
        });
    }
    let b = table.b2n(n)?.abs();
    let pow2 = BigInt::one() << (2 * n - 1);
    Ok(ZetaEvenValue {
        power: 2 * n,
        pi_coefficient: b * rat(pow2) / rat(factorial(2 * n as u64)),
    })
}
