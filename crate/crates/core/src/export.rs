//! Triangle exports (`M`, `M^-1`, decomposition terms, `q_l` coefficients)
//! as CSV or JSON, plus the matching importers.
//!
//! CSV: header `row,col,numerator,denominator`, one line per entry, LF
//! line endings. JSON: an array of rows, each an array of canonical
//! `num/den` strings. Rows and columns of `m`, `minv` and `terms` are
//! 1-based; `qcoeffs` rows are `l` and columns the power of `n`, both
//! 0-based.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, BigRational};
use crate::matrix::{decomposition_row, MInverse};
use crate::qpoly::QPolynomialFamily;

pub fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub fn ser_rationals<S: Serializer>(rs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(ToString::to_string))
}

/// Which triangle to export.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    M,
    Minv,
    Terms,
    Qcoeffs,
}

impl TriangleKind {
    pub const ALL: [TriangleKind; 4] = [Self::M, Self::Minv, Self::Terms, Self::Qcoeffs];

    pub fn name(self) -> &'static str {
        match self {
            Self::M => "m",
            Self::Minv => "minv",
            Self::Terms => "terms",
            Self::Qcoeffs => "qcoeffs",
        }
    }

    /// Index of the first row and first column in exports.
    pub fn base(self) -> usize {
        match self {
            Self::Qcoeffs => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TriangleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown triangle {s:?}")))
    }
}

/// Rows of exact rationals; row lengths may differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub kind: TriangleKind,
    pub rows: Vec<Vec<BigRational>>,
}

/// The first `rows` rows of the requested triangle.
pub fn build_triangle(kind: TriangleKind, rows: usize) -> Result<Triangle> {
    let data = match kind {
        TriangleKind::M | TriangleKind::Minv => {
            let mi = MInverse::new(rows);
            let t = if kind == TriangleKind::M {
                mi.matrix()
            } else {
                mi.inverse()
            };
            t.rows().map(<[BigRational]>::to_vec).collect()
        }
        TriangleKind::Terms => {
            let mi = MInverse::new(rows);
            (1..=rows)
                .map(|n| decomposition_row(n, mi.inverse()).map(|r| r.terms))
                .collect::<Result<_>>()?
        }
        TriangleKind::Qcoeffs => {
            let mut fam = QPolynomialFamily::new();
            (0..rows).map(|l| fam.get(l).coeffs().to_vec()).collect()
        }
    };
    Ok(Triangle { kind, rows: data })
}

impl Triangle {
    pub fn to_csv(&self) -> String {
        let base = self.kind.base();
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(["row", "col", "numerator", "denominator"])
            .expect("in-memory write");
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                w.write_record([
                    (i + base).to_string(),
                    (j + base).to_string(),
                    x.numer().to_string(),
                    x.denom().to_string(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        serde_json::to_string(&rows).expect("strings always serialize")
    }

    pub fn from_json(kind: TriangleKind, s: &str) -> Result<Self> {
        let raw: Vec<Vec<String>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = raw
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect())
            .collect::<Result<_>>()?;
        Ok(Self { kind, rows })
    }

    /// Entries must appear in row-major order with contiguous indices.
    pub fn from_csv(kind: TriangleKind, s: &str) -> Result<Self> {
        let base = kind.base();
        let mut rdr = csv::Reader::from_reader(s.as_bytes());
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            if rec.len() != 4 {
                return Err(Error::Parse(format!(
                    "expected 4 fields, got {}",
                    rec.len()
                )));
            }
            let idx = |i: usize| -> Result<usize> {
                rec[i]
                    .parse::<usize>()
                    .ok()
                    .and_then(|v| v.checked_sub(base))
                    .ok_or_else(|| Error::Parse(format!("bad index {:?}", &rec[i])))
            };
            let (r, c) = (idx(0)?, idx(1)?);
            let value = parse_rational(&format!("{}/{}", &rec[2], &rec[3]))?;
            if r == rows.len() {
                rows.push(Vec::new());
            }
            let last = rows.len().wrapping_sub(1);
            match rows.get_mut(r) {
                Some(row) if r == last && c == row.len() => row.push(value),
                _ => {
                    return Err(Error::Parse(format!(
                        "entry ({}, {}) out of order",
                        r + base,
                        c + base
                    )))
                }
            }
        }
        Ok(Self { kind, rows })
    }
}
