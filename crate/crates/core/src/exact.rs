//! Exact scalars, combinatorial kernels and dense polynomials over the rationals.
//!
//! Integers and rationals come from `num-bigint`/`num-rational`; a
//! [`BigRational`] is always stored reduced with a positive denominator, and
//! its `Display` form is the canonical `num/den` (or `num` when `den = 1`)
//! used by every export.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use crate::error::{Error, Result};

/// `n!`.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    // Each partial product C(n-k+i, i) is an integer, so the division is exact.
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// Integer as a rational.
pub fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `num/den` as a reduced rational. Panics if `den == 0`; use
/// [`checked_div`] for data-dependent denominators.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn checked_div(a: &BigRational, b: &BigRational) -> Result<BigRational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero {
            numerator: a.to_string(),
        });
    }
    Ok(a / b)
}

/// True when `r` is in canonical form: `gcd(|num|, den) = 1`, `den > 0`,
/// and zero is `0/1`.
pub fn is_reduced(r: &BigRational) -> bool {
    let (num, den) = (r.numer(), r.denom());
    den.is_positive() && num.gcd(den).is_one()
}

/// Parse the canonical `num/den` or `num` form.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(rat).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero {
                    numerator: n.to_string(),
                });
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Bits needed for the larger of numerator and denominator.
pub fn rational_bits(r: &BigRational) -> u64 {
    r.numer().bits().max(r.denom().bits())
}

/// Dense polynomial in one variable with exact rational coefficients;
/// `coeffs[i]` multiplies `n^i`. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `n`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// The polynomial `r` with `r(n) = self(n + a)`.
    pub fn shift(&self, a: i64) -> Self {
        if a == 0 || self.coeffs.len() < 2 {
            return self.clone();
        }
        let a = BigInt::from(a);
        let mut out = vec![BigRational::zero(); self.coeffs.len()];
        // (n + a)^i = sum_j C(i, j) a^(i-j) n^j
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut a_pow = BigInt::one();
            for j in (0..=i).rev() {
                out[j] += c * rat(binomial(i as u64, j as i64) * &a_pow);
                a_pow *= &a;
            }
        }
        Self::from_coeffs(out)
    }

    /// `prod_{i=0}^{length-1} (n - offset - i)`; the constant 1 for length 0.
    pub fn falling_product(offset: i64, length: usize) -> Self {
        (0..length as i64).fold(Self::constant(BigRational::one()), |acc, i| {
            let factor = Self::from_coeffs(vec![rat(-(offset + i)), BigRational::one()]);
            &acc * &factor
        })
    }
}

impl<'a> Add<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: Self) -> RationalPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        RationalPolynomial::from_coeffs(out)
    }
}

impl<'a> Sub<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: Self) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::from_coeffs(out)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*n")?,
                _ => write!(f, "{mag}*n^{i}")?,
            }
        }
        Ok(())
    }
}
