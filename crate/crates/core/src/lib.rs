//! Exact arithmetic engine for the triangular-matrix representation of the
//! Bernoulli numbers.
//!
//! The even Bernoulli numbers satisfy `1 = M * B` for a banded
//! lower-triangular integer matrix `M`. Inverting `M` exactly writes each
//! `|B_{2n}|` as a sum of positive, decreasing rationals, and a family of
//! polynomials `q_l(n)` gives those terms in closed form. This crate builds
//! all of that with exact rationals, checks it against two classical
//! Bernoulli generators, and verifies the floating-point Bessel and sinc
//! identities the matrix is derived from.
//!
//! Modules:
//! - [`exact`]: big rationals, factorials, binomials, polynomials
//! - [`oracle`]: recurrence and Akiyama-Tanigawa Bernoulli tables, exact `zeta(2n)`
//! - [`matrix`]: `M`, `M^-1`, decompositions, structural checks
//! - [`qpoly`]: the `q_l(n)` family and the closed form for `|B_{2n}|`
//! - [`analytic`]: sinc, spherical Bessel, partial sums, cross section
//! - [`export`]: CSV/JSON triangles
//! - [`verify`]: named verification suites

pub mod analytic;
pub mod error;
pub mod exact;
pub mod export;
pub mod matrix;
pub mod oracle;
pub mod qpoly;
pub mod verify;

use num_traits::ToPrimitive;

pub use error::{Error, Result};
pub use exact::{BigInt, BigRational, RationalPolynomial};
pub use matrix::{DecompositionRow, MInverse, RowReport, TriangularMatrix};
pub use oracle::{BernoulliTable, Method, ZetaEvenValue};
pub use qpoly::QPolynomialFamily;

/// Nearest `f64`; `NaN` if the value is out of range.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Table of `B_0..=B_{2 max_n}` computed by `method`.
pub fn bernoulli_table(method: Method, max_n: usize) -> BernoulliTable {
    match method {
        Method::Recurrence => oracle::bernoulli_recurrence(2 * max_n),
        Method::AkiyamaTanigawa => oracle::bernoulli_akiyama_tanigawa(2 * max_n),
        Method::MatrixInverse => matrix::bernoulli_table_from_matrix(max_n),
        Method::QPolynomial => qpoly::bernoulli_table_from_q(max_n),
    }
}
