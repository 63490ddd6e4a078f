//! Polynomials `q_l(n)` of degree `l`, generated sequentially, and the
//! closed form for `|B_{2n}|` built from them.
//!
//! ```text
//! q_l(n) = (-1)^l (n-l-3)! / ((2l+3)! (n-2l-3)!)
//!        + sum_{j<l} (-1)^(l+j+1) (n-l-1+j)! / ((2l+1-2j)! (n-2l-1+2j)!) q_j(n+j-l)
//! ```
//!
//! Each factorial ratio `(n-a)!/(n-b)!` is the falling product of `b-a`
//! linear factors starting at `n-a`, so `q_l` is a genuine polynomial and
//! can be evaluated anywhere. The identities involving it are only claimed
//! for `n >= l + 3`.
//!
//! Internally each polynomial is held in the binomial basis `C(n, i)` with
//! integer numerators over one denominator. In that basis `p(n) -> p(n-1)`
//! and `p(n) -> (n - c) p(n)` are linear-time, and the shifted products in
//! the recursion obey `H_{j,s+1}(n) = (n - 2s - 2) H_{j,s}(n-1)`, so the
//! family up to `q_l` costs `O(l^3)` integer operations.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, rat, BigInt, BigRational, RationalPolynomial};
use crate::matrix::diag_closed_form;
use crate::oracle::{BernoulliTable, Method};

/// `sum_i num[i] C(n, i) / den` with `den > 0`.
#[derive(Clone, Debug)]
struct BinomialPoly {
    num: Vec<BigInt>,
    den: BigInt,
}

impl BinomialPoly {
    fn one() -> Self {
        Self {
            num: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }

    /// `p(n) -> p(n - 1)`.
    fn shift_down(&mut self) {
        for i in (0..self.num.len().saturating_sub(1)).rev() {
            let (lo, hi) = self.num.split_at_mut(i + 1);
            lo[i] -= &hi[0];
        }
    }

    /// `p(n) -> (n - c) p(n)`, using `n C(n,i) = (i+1) C(n,i+1) + i C(n,i)`.
    fn mul_linear(&mut self, c: i64) {
        let d = self.num.len();
        let mut out = vec![BigInt::zero(); d + 1];
        for (i, a) in self.num.iter().enumerate() {
            out[i + 1] += a * (i as i64 + 1);
            out[i] += a * (i as i64 - c);
        }
        self.num = out;
    }

    fn eval_int(&self, n: i64) -> BigRational {
        let mut binom = BigInt::one();
        let mut acc = BigInt::zero();
        for (i, a) in self.num.iter().enumerate() {
            if i > 0 {
                binom = binom * (n - i as i64 + 1) / i as i64;
            }
            acc += a * &binom;
        }
        BigRational::new(acc, self.den.clone())
    }

    /// Monomial coefficients, via `C(n, i) = (n)_i / i!`.
    fn to_monomial(&self) -> RationalPolynomial {
        let d = self.num.len();
        let top = factorial(d.saturating_sub(1) as u64);
        let mut coeffs = vec![BigInt::zero(); d];
        // fall = coefficients of n (n-1) ... (n-i+1); weight = top / i!.
        let mut fall = vec![BigInt::one()];
        let mut weight = top.clone();
        for (i, a) in self.num.iter().enumerate() {
            if i > 0 {
                let c = i as i64 - 1;
                fall.insert(0, BigInt::zero());
                for t in 0..fall.len() - 1 {
                    let next = &fall[t + 1] * c;
                    fall[t] -= next;
                }
                weight /= i as u64;
            }
            if a.is_zero() {
                continue;
            }
            let scaled = a * &weight;
            for (t, f) in fall.iter().enumerate() {
                coeffs[t] += &scaled * f;
            }
        }
        let den = &self.den * top;
        RationalPolynomial::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect(),
        )
    }

    /// Divides out the content shared by numerators and denominator.
    fn reduce(&mut self) {
        let g = self.num.iter().fold(self.den.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            self.num.iter_mut().for_each(|x| *x /= &g);
            self.den /= &g;
        }
    }
}

/// Memoized `q_0, q_1, ...`.
#[derive(Clone, Debug, Default)]
pub struct QPolynomialFamily {
    basis: Vec<BinomialPoly>,
    /// `H_{j, l-j}` for every `j <= l`, where `l = basis.len() - 1`.
    shifted: Vec<BinomialPoly>,
    monomial: Vec<Option<RationalPolynomial>>,
}

impl QPolynomialFamily {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of polynomials computed so far.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `q_l` with monomial coefficients, computing `q_0..=q_l` as needed.
    pub fn get(&mut self, l: usize) -> &RationalPolynomial {
        self.ensure(l);
        let basis = &self.basis[l];
        self.monomial[l].get_or_insert_with(|| basis.to_monomial())
    }

    /// `q_l(n)` for any integer `n`.
    pub fn eval(&mut self, l: usize, n: i64) -> BigRational {
        self.ensure(l);
        self.basis[l].eval_int(n)
    }

    fn ensure(&mut self, l: usize) {
        while self.basis.len() <= l {
            self.push_next();
        }
    }

    fn push_next(&mut self) {
        let l = self.basis.len();
        let sign = |e: usize| {
            if e % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        };

        // Advance H_{j, l-1-j} -> H_{j, l-j}.
        for (j, h) in self.shifted.iter_mut().enumerate() {
            let s = (l - 1 - j) as i64;
            h.shift_down();
            h.mul_linear(2 * s + 2);
        }

        // (n-l-3)! / (n-2l-3)!  ->  l factors from n-l-3 down.
        let mut lead = BinomialPoly::one();
        for i in 0..l {
            lead.mul_linear((l + 3 + i) as i64);
        }
        lead.den = factorial(2 * l as u64 + 3);

        // Terms as (sign, numerators, denominator) over a common lcm.
        let mut terms: Vec<(BigInt, &[BigInt], BigInt)> =
            vec![(sign(l), &lead.num, lead.den.clone())];
        for (j, h) in self.shifted.iter().enumerate() {
            let den = &h.den * factorial((2 * l + 1 - 2 * j) as u64);
            terms.push((sign(l + j + 1), &h.num, den));
        }
        let lcm = terms.iter().fold(BigInt::one(), |acc, t| acc.lcm(&t.2));
        let mut num = vec![BigInt::zero(); l + 1];
        for (s, coeffs, den) in &terms {
            let f = s * (&lcm / den);
            for (acc, c) in num.iter_mut().zip(coeffs.iter()) {
                *acc += &f * c;
            }
        }
        let mut q = BinomialPoly { num, den: lcm };
        q.reduce();
        debug_assert!(!q.num[l].is_zero() && q.den.is_positive());

        self.shifted.push(q.clone());
        self.basis.push(q);
        self.monomial.push(None);
    }
}

/// `q_l`, memoized in `family`.
pub fn q_polynomial(l: usize, family: &mut QPolynomialFamily) -> RationalPolynomial {
    family.get(l).clone()
}

/// Column `k` term of `|B_{2n}|`: `n! q_{n-k-1}(n) k! (k-1) / (2k+1)!` for
/// `2 <= k < n`, and `(n!)^2 / (2n+1)!` for `k = n`.
pub fn term_from_q(n: usize, k: usize, family: &mut QPolynomialFamily) -> Result<BigRational> {
    if n < 2 || k < 2 || k > n {
        return Err(Error::OutOfRange {
            what: "decomposition column",
            value: k as i64,
        });
    }
    if k == n {
        return Ok(diag_closed_form(n));
    }
    let q = family.eval(n - k - 1, n as i64);
    let k64 = k as u64;
    Ok(
        rat(factorial(n as u64)) * q * rat(factorial(k64) * (k64 - 1))
            / rat(factorial(2 * k64 + 1)),
    )
}

/// `|B_{2n}| = (n!)^2/(2n+1)! + sum_{k=2}^{n-1} n! q_{n-k-1}(n) k!(k-1)/(2k+1)!`.
pub fn b2n_from_q(n: usize, family: &mut QPolynomialFamily) -> BigRational {
    let mut sum = diag_closed_form(n);
    for k in 2..n {
        sum += term_from_q(n, k, family).expect("2 <= k < n");
    }
    sum
}

/// Signed `B_0..B_{2 max_n}` from the closed form.
pub fn bernoulli_table_from_q(max_n: usize) -> BernoulliTable {
    let mut family = QPolynomialFamily::new();
    let mut even = vec![BigRational::one()];
    for n in 1..=max_n {
        let mag = b2n_from_q(n, &mut family);
        even.push(if n % 2 == 1 { mag } else { -mag });
    }
    BernoulliTable::from_even_values(Method::QPolynomial, even)
}
