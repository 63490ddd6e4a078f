//! The banded lower-triangular matrix `M` with `1 = M * B` over the even
//! Bernoulli numbers, its exact inverse, and the positive decompositions of
//! `|B_{2n}|` read off the rows of `M^-1`.
//!
//! Indices are 1-based throughout: row `m`, column `n`, and row `n` of the
//! inverse sums to `B_{2n}`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, frac, rat, BigInt, BigRational};
use crate::oracle::{BernoulliTable, Method};

/// Lower-triangular square matrix of exact rationals; row `m` stores
/// columns `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl TriangularMatrix {
    pub fn identity(size: usize) -> Self {
        let rows = (1..=size)
            .map(|m| {
                let mut row = vec![BigRational::zero(); m];
                row[m - 1] = BigRational::one();
                row
            })
            .collect();
        Self { rows }
    }

    /// Row `m` must hold exactly `m` entries.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::Parse(format!(
                    "row {} of a triangular matrix has {} entries",
                    i + 1,
                    row.len()
                )));
            }
        }
        Ok(Self { rows })
    }

    pub fn diagonal(entries: Vec<BigRational>) -> Self {
        let rows = entries
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let mut row = vec![BigRational::zero(); i + 1];
                row[i] = d;
                row
            })
            .collect();
        Self { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entries of row `m` (1-based), columns `1..=m`.
    pub fn row(&self, m: usize) -> Result<&[BigRational]> {
        self.check_row(m)?;
        Ok(&self.rows[m - 1])
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigRational]> {
        self.rows.iter().map(Vec::as_slice)
    }

    /// Entry `(m, n)`; zero above the diagonal.
    pub fn get(&self, m: usize, n: usize) -> Result<BigRational> {
        let row = self.row(m)?;
        Ok(match n {
            0 => {
                return Err(Error::OutOfRange {
                    what: "column",
                    value: 0,
                })
            }
            n if n > m => BigRational::zero(),
            n => row[n - 1].clone(),
        })
    }

    fn check_row(&self, m: usize) -> Result<()> {
        if m == 0 || m > self.size() {
            return Err(Error::SizeTooSmall {
                needed: m,
                size: self.size(),
            });
        }
        Ok(())
    }

    /// Product of two lower-triangular matrices of equal size.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeTooSmall {
                needed: self.size().max(other.size()),
                size: self.size().min(other.size()),
            });
        }
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, a_row)| {
                (0..=i)
                    .map(|j| {
                        (j..=i)
                            .filter(|&k| !a_row[k].is_zero())
                            .map(|k| &a_row[k] * &other.rows[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { rows })
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }
}

/// `M(m, n) = 2 (-1)^(m+1) C(2n-1, m) C(2m+1, 2n)`; zero outside
/// `ceil((m+1)/2) <= n <= m`.
pub fn m_entry(m: usize, n: usize) -> BigRational {
    if m == 0 || n == 0 {
        return BigRational::zero();
    }
    let sign = if m % 2 == 1 { 2 } else { -2 };
    let (m, n) = (m as u64, n as u64);
    rat(binomial(2 * n - 1, m as i64) * binomial(2 * m + 1, 2 * n as i64) * sign)
}

/// Inclusive column range where row `m` of `M` is nonzero.
pub fn m_band(m: usize) -> (usize, usize) {
    ((m + 1).div_ceil(2), m)
}

pub fn build_m(size: usize) -> TriangularMatrix {
    let rows = (1..=size)
        .map(|m| (1..=m).map(|n| m_entry(m, n)).collect())
        .collect();
    TriangularMatrix { rows }
}

/// Row of `a^-1` kept as integer numerators over one positive denominator,
/// reduced so the numerators and denominator share no common factor.
#[derive(Clone, Debug)]
struct ScaledRow {
    num: Vec<BigInt>,
    den: BigInt,
}

impl ScaledRow {
    fn to_rationals(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|x| BigRational::new(x.clone(), self.den.clone()))
            .collect()
    }
}

/// Row `i` (0-based) of `a^-1`, given rows `0..i` of the inverse.
///
/// Sums run over integers scaled to the lcm of the contributing
/// denominators, so each row costs a handful of gcds rather than one per
/// entry.
fn inverse_row(a: &TriangularMatrix, inv: &[ScaledRow], i: usize) -> Result<ScaledRow> {
    let a_row = &a.rows[i];
    let diag = &a_row[i];
    if diag.is_zero() {
        return Err(Error::ZeroDiagonal { row: i + 1 });
    }
    // w_k = a_ik / den_k, lcm of their denominators, integer factors f_k.
    let weights: Vec<(usize, BigRational)> = (0..i)
        .filter(|&k| !a_row[k].is_zero())
        .map(|k| (k, &a_row[k] / BigRational::from(inv[k].den.clone())))
        .collect();
    let lcm = weights
        .iter()
        .fold(BigInt::one(), |l, (_, w)| l.lcm(w.denom()));
    let factors: Vec<(usize, BigInt)> = weights
        .into_iter()
        .map(|(k, w)| (k, w.numer() * (&lcm / w.denom())))
        .collect();

    // inv_ij = -(sum_k f_k N_kj) / (lcm a_ii), inv_ii = 1 / a_ii.
    let (p, q) = (diag.numer(), diag.denom());
    let mut num = Vec::with_capacity(i + 1);
    for j in 0..i {
        let mut acc = BigInt::zero();
        for (k, f) in factors.iter().filter(|(k, _)| *k >= j) {
            let x = &inv[*k].num[j];
            if !x.is_zero() {
                acc += f * x;
            }
        }
        num.push(-acc * q);
    }
    num.push(&lcm * q);
    let mut den = lcm * p;
    if den.is_negative() {
        den = -den;
        num.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    let g = num.iter().fold(den.clone(), |g, x| g.gcd(x));
    if !g.is_one() {
        num.iter_mut().for_each(|x| *x /= &g);
        den /= &g;
    }
    Ok(ScaledRow { num, den })
}

/// Exact inverse of a lower-triangular matrix by forward substitution.
pub fn invert_triangular(a: &TriangularMatrix) -> Result<TriangularMatrix> {
    let mut scaled = Vec::with_capacity(a.size());
    for i in 0..a.size() {
        let row = inverse_row(a, &scaled, i)?;
        scaled.push(row);
    }
    Ok(TriangularMatrix {
        rows: scaled.iter().map(ScaledRow::to_rationals).collect(),
    })
}

/// `M` and `M^-1` truncated to a common size. Because `M` is lower
/// triangular, rows already computed never change when the size grows, so
/// [`MInverse::extend_to`] only computes the new rows.
#[derive(Clone, Debug)]
pub struct MInverse {
    m: TriangularMatrix,
    inv: TriangularMatrix,
    scaled: Vec<ScaledRow>,
}

impl MInverse {
    pub fn new(size: usize) -> Self {
        let mut this = Self {
            m: TriangularMatrix { rows: Vec::new() },
            inv: TriangularMatrix { rows: Vec::new() },
            scaled: Vec::new(),
        };
        this.extend_to(size);
        this
    }

    pub fn size(&self) -> usize {
        self.m.size()
    }

    pub fn extend_to(&mut self, size: usize) {
        for m in self.size() + 1..=size {
            self.m.rows.push((1..=m).map(|n| m_entry(m, n)).collect());
            let row =
                inverse_row(&self.m, &self.scaled, m - 1).expect("diagonal of M is never zero");
            self.inv.rows.push(row.to_rationals());
            self.scaled.push(row);
        }
    }

    pub fn matrix(&self) -> &TriangularMatrix {
        &self.m
    }

    pub fn inverse(&self) -> &TriangularMatrix {
        &self.inv
    }
}

/// `B_{2n}` as the sum of row `n` of `M^-1`.
pub fn bernoulli_from_matrix(n: usize, minv: &TriangularMatrix) -> Result<BigRational> {
    Ok(minv.row(n)?.iter().sum())
}

/// Table of `B_0..B_{2 max_n}` read off `M^-1`.
pub fn bernoulli_table_from_matrix(max_n: usize) -> BernoulliTable {
    let minv = MInverse::new(max_n);
    let even = std::iter::once(BigRational::one())
        .chain(minv.inverse().rows().map(|r| r.iter().sum()))
        .collect();
    BernoulliTable::from_even_values(Method::MatrixInverse, even)
}

/// Right-hand side of `1 = (-1)^(n+1) (4n+2) sum_k (2n)!/(n! k! (n-k)!) B_{n+k+1}/(n+k+1)`.
pub fn rid2_residual(n: usize, table: &BernoulliTable) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
        });
    }
    let n64 = n as u64;
    let outer = factorial(2 * n64) / factorial(n64);
    let mut sum = BigRational::zero();
    for k in 0..=n {
        let b = table.get(n + k + 1)?;
        if b.is_zero() {
            continue;
        }
        let trinomial = &outer / (factorial(k as u64) * factorial(n64 - k as u64));
        sum += rat(trinomial) * b / rat(n64 + k as u64 + 1);
    }
    let sign = if n % 2 == 1 { 1 } else { -1 };
    Ok(sum * rat(sign * (4 * n as i64 + 2)))
}

/// Positive terms of `|B_{2n}|` from row `n` of `M^-1`, in column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionRow {
    pub n: usize,
    /// Matrix column of each term.
    pub columns: Vec<usize>,
    #[serde(serialize_with = "crate::export::ser_rationals")]
    pub terms: Vec<BigRational>,
    /// `(-1)^(n+1)`, the common sign of the row.
    pub sign: i8,
}

impl DecompositionRow {
    pub fn total(&self) -> BigRational {
        self.terms.iter().sum()
    }

    /// Running subtotals, term by term.
    pub fn subtotals(&self) -> Vec<BigRational> {
        self.terms
            .iter()
            .scan(BigRational::zero(), |acc, t| {
                *acc += t;
                Some(acc.clone())
            })
            .collect()
    }
}

/// Unsigned nonzero entries of row `n`, ascending column. Fails if the row
/// mixes signs or the column order is not strictly decreasing in magnitude.
pub fn decomposition_row(n: usize, minv: &TriangularMatrix) -> Result<DecompositionRow> {
    let row = minv.row(n)?;
    let mut sign = 0i8;
    let mut columns = Vec::new();
    let mut terms: Vec<BigRational> = Vec::new();
    for (j, x) in row.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let s = if x.is_positive() { 1 } else { -1 };
        if sign == 0 {
            sign = s;
        } else if s != sign {
            return Err(Error::MixedSigns {
                row: n,
                column: j + 1,
            });
        }
        let mag = x.abs();
        if terms.last().is_some_and(|prev| *prev <= mag) {
            return Err(Error::OrderingViolation {
                row: n,
                column: j + 1,
            });
        }
        columns.push(j + 1);
        terms.push(mag);
    }
    Ok(DecompositionRow {
        n,
        columns,
        terms,
        sign,
    })
}

/// Outcome of every structural check on one row of `M^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub n: usize,
    /// All nonzero entries carry sign `(-1)^(n+1)`.
    pub sign_uniform: bool,
    /// `M^-1(n, 1) = 0`; only checked for `n >= 3`.
    pub column1_vanishes: Option<bool>,
    /// One term for `n <= 2`, `n - 1` terms otherwise.
    pub term_count: bool,
    /// `|M^-1(n, k)| > |M^-1(n, k+1)|` for `2 <= k < n`.
    pub strictly_decreasing: bool,
    /// Every term exceeds the sum of all smaller terms in the row.
    pub dominance: bool,
    /// `|M^-1(n, 3)| / |M^-1(n, 2)| = 3/7`; only checked for `n >= 3`.
    pub ratio_3_7: Option<bool>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.sign_uniform
            && self.column1_vanishes != Some(false)
            && self.term_count
            && self.strictly_decreasing
            && self.dominance
            && self.ratio_3_7 != Some(false)
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.sign_uniform {
            out.push("sign_uniform");
        }
        if self.column1_vanishes == Some(false) {
            out.push("column1_vanishes");
        }
        if !self.term_count {
            out.push("term_count");
        }
        if !self.strictly_decreasing {
            out.push("strictly_decreasing");
        }
        if !self.dominance {
            out.push("dominance");
        }
        if self.ratio_3_7 == Some(false) {
            out.push("ratio_3_7");
        }
        out
    }
}

/// Checks the structural claims about row `n` without assuming any of them.
pub fn row_report(n: usize, minv: &TriangularMatrix) -> Result<RowReport> {
    let row = minv.row(n)?;
    let expected_positive = n % 2 == 1;
    let nonzero: Vec<&BigRational> = row.iter().filter(|x| !x.is_zero()).collect();
    let sign_uniform = nonzero.iter().all(|x| x.is_positive() == expected_positive);
    let column1_vanishes = (n >= 3).then(|| row[0].is_zero());
    let term_count = nonzero.len() == if n <= 2 { 1 } else { n - 1 };

    let mags: Vec<BigRational> = row.iter().map(Signed::abs).collect();
    let strictly_decreasing = mags.get(1..).unwrap_or(&[]).windows(2).all(|w| w[0] > w[1]);

    let mut sorted: Vec<BigRational> = nonzero.iter().map(|x| x.abs()).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    // Each term against the sum of the terms strictly smaller than it.
    let mut dominance = true;
    let mut smaller = BigRational::zero();
    let mut i = sorted.len();
    while i > 0 {
        let t = &sorted[i - 1];
        let mut j = i;
        while j > 0 && sorted[j - 1] == *t {
            dominance &= *t > smaller;
            j -= 1;
        }
        smaller += t * rat((i - j) as i64);
        i = j;
    }

    let ratio_3_7 = (n >= 3).then(|| !mags[1].is_zero() && &mags[2] / &mags[1] == frac(3, 7));
    Ok(RowReport {
        n,
        sign_uniform,
        column1_vanishes,
        term_count,
        strictly_decreasing,
        dominance,
        ratio_3_7,
    })
}

/// `|M^-1(n, n)| = (n!)^2 / (2n+1)!`.
pub fn diag_closed_form(n: usize) -> BigRational {
    let n = n as u64;
    let f = factorial(n);
    BigRational::new(&f * &f, factorial(2 * n + 1))
}

/// `|M^-1(n, n-1)| = (n-2) n! (n-1)! / (6 (2n-1)!)` for `n >= 2`.
pub fn subdiag1_closed_form(n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "first sub-diagonal row",
            value: n as i64,
        });
    }
    let n = n as u64;
    Ok(frac(1, 6)
        * rat(n as i64 - 2)
        * BigRational::new(factorial(n) * factorial(n - 1), factorial(2 * n - 1)))
}

/// `|M^-1(n, n-2)| = (7/360) (n - 8/7) (n-3) n! (n-2)! / (2n-3)!` for `n >= 3`.
pub fn subdiag2_closed_form(n: usize) -> Result<BigRational> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "second sub-diagonal row",
            value: n as i64,
        });
    }
    let n = n as u64;
    Ok(frac(7, 360)
        * (rat(n) - frac(8, 7))
        * rat(n as i64 - 3)
        * BigRational::new(factorial(n) * factorial(n - 2), factorial(2 * n - 3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::bernoulli_recurrence;

    #[test]
    fn entries() {
        assert_eq!(m_entry(1, 1), rat(6));
        assert_eq!(m_entry(2, 2), rat(-30));
        assert_eq!(m_entry(2, 1), rat(0));
        assert_eq!(m_entry(3, 3), rat(140));
    }

    #[test]
    fn band_structure() {
        for m in 1..=100 {
            let (lo, hi) = m_band(m);
            assert_eq!(lo, (m + 1).div_ceil(2));
            assert_eq!(hi, m);
            for n in 1..=m + 2 {
                let inside = (lo..=hi).contains(&n);
                assert_eq!(!m_entry(m, n).is_zero(), inside, "M({m},{n})");
            }
        }
    }

    #[test]
    fn build_small() {
        assert_eq!(build_m(1).row(1).unwrap(), &[rat(6)]);
        assert_eq!(build_m(2).row(2).unwrap(), &[rat(0), rat(-30)]);
        let m3 = build_m(3);
        let diag: Vec<_> = (1..=3).map(|i| m3.get(i, i).unwrap()).collect();
        assert_eq!(diag, vec![rat(6), rat(-30), rat(140)]);
        // M(n, n) = (-1)^(n+1) (2n+1)! / (n!)^2
        let m = build_m(30);
        for n in 1..=30u64 {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let f = factorial(n);
            let expected = BigRational::new(factorial(2 * n + 1) * sign, &f * &f);
            assert_eq!(m.get(n as usize, n as usize).unwrap(), expected);
        }
    }

    #[test]
    fn invert_simple_matrices() {
        let id = TriangularMatrix::identity(3);
        assert_eq!(invert_triangular(&id).unwrap(), id);
        let d = TriangularMatrix::diagonal(vec![rat(2), rat(-4)]);
        assert_eq!(
            invert_triangular(&d).unwrap(),
            TriangularMatrix::diagonal(vec![frac(1, 2), frac(-1, 4)])
        );
        let singular = TriangularMatrix::diagonal(vec![rat(1), rat(0)]);
        assert_eq!(
            invert_triangular(&singular).unwrap_err(),
            Error::ZeroDiagonal { row: 2 }
        );
    }

    #[test]
    fn inverse_row_three() {
        let inv = invert_triangular(&build_m(3)).unwrap();
        let row: Vec<_> = inv.row(3).unwrap().iter().map(Signed::abs).collect();
        assert_eq!(row, vec![rat(0), frac(1, 60), frac(1, 140)]);
    }

    #[test]
    fn incremental_matches_direct() {
        let mut inc = MInverse::new(5);
        inc.extend_to(25);
        let direct = invert_triangular(&build_m(25)).unwrap();
        assert_eq!(inc.inverse(), &direct);
        assert!(inc.matrix().mul(inc.inverse()).unwrap().is_identity());
    }

    #[test]
    fn bernoulli_rows() {
        let minv = MInverse::new(10);
        let inv = minv.inverse();
        assert_eq!(bernoulli_from_matrix(1, inv).unwrap(), frac(1, 6));
        assert_eq!(bernoulli_from_matrix(6, inv).unwrap(), frac(-691, 2730));
        assert_eq!(bernoulli_from_matrix(10, inv).unwrap(), frac(-174611, 330));
        assert_eq!(
            bernoulli_from_matrix(11, inv).unwrap_err(),
            Error::SizeTooSmall {
                needed: 11,
                size: 10
            }
        );
        assert_eq!(bernoulli_table_from_matrix(30), bernoulli_recurrence(60));
    }

    #[test]
    fn rid2_small() {
        let t = bernoulli_recurrence(40);
        for n in 1..=20 {
            assert_eq!(rid2_residual(n, &t).unwrap(), rat(1), "n = {n}");
        }
        assert!(matches!(
            rid2_residual(21, &t),
            Err(Error::IndexOutOfTable { .. })
        ));
    }

    #[test]
    fn decompositions() {
        let minv = MInverse::new(10);
        let inv = minv.inverse();
        let r3 = decomposition_row(3, inv).unwrap();
        assert_eq!(r3.terms, vec![frac(1, 60), frac(1, 140)]);
        assert_eq!(r3.columns, vec![2, 3]);
        assert_eq!(r3.sign, 1);
        let r5 = decomposition_row(5, inv).unwrap();
        assert_eq!(
            r5.terms,
            vec![frac(1, 20), frac(3, 140), frac(1, 252), frac(1, 2772)]
        );
        let r9 = decomposition_row(9, inv).unwrap();
        assert_eq!(r9.terms.len(), 8);
        assert_eq!(r9.terms[..2], [frac(3617, 100), frac(10851, 700)]);
        assert_eq!(r9.total(), frac(43867, 798));
        let r10 = decomposition_row(10, inv).unwrap();
        assert_eq!(r10.terms.len(), 9);
        assert_eq!(r10.terms[..2], [frac(43867, 126), frac(43867, 294)]);
        assert_eq!(r9.subtotals().last().unwrap(), &r9.total());
        assert_eq!(decomposition_row(2, inv).unwrap().sign, -1);
    }

    #[test]
    fn decomposition_flags_violations() {
        let mixed = TriangularMatrix::from_rows(vec![vec![rat(1)], vec![rat(1), rat(-1)]]).unwrap();
        assert_eq!(
            decomposition_row(2, &mixed).unwrap_err(),
            Error::MixedSigns { row: 2, column: 2 }
        );
        let rising =
            TriangularMatrix::from_rows(vec![vec![rat(1)], vec![frac(1, 3), frac(1, 2)]]).unwrap();
        assert_eq!(
            decomposition_row(2, &rising).unwrap_err(),
            Error::OrderingViolation { row: 2, column: 2 }
        );
        let rising3 = TriangularMatrix::from_rows(vec![
            vec![rat(1)],
            vec![rat(0), rat(1)],
            vec![rat(0), frac(1, 3), frac(1, 2)],
        ])
        .unwrap();
        let report = row_report(3, &rising3).unwrap();
        assert!(!report.strictly_decreasing);
        assert!(!report.passed());
        assert!(report.failures().contains(&"strictly_decreasing"));
    }

    #[test]
    fn row_reports_hold_small() {
        let minv = MInverse::new(30);
        for n in 1..=30 {
            let r = row_report(n, minv.inverse()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(diag_closed_form(1), frac(1, 6));
        assert_eq!(diag_closed_form(2), frac(1, 30));
        assert_eq!(diag_closed_form(3), frac(1, 140));
        assert_eq!(subdiag1_closed_form(2).unwrap(), rat(0));
        assert_eq!(subdiag1_closed_form(3).unwrap(), frac(1, 60));
        assert_eq!(subdiag1_closed_form(4).unwrap(), frac(1, 105));
        assert!(subdiag1_closed_form(1).is_err());
        assert_eq!(subdiag2_closed_form(3).unwrap(), rat(0));
        assert_eq!(subdiag2_closed_form(4).unwrap(), frac(1, 45));
        // second term of the |B_10| row
        assert_eq!(subdiag2_closed_form(5).unwrap(), frac(3, 140));
        assert!(subdiag2_closed_form(2).is_err());
    }
}
