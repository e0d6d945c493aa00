//! Exact integer matrices with overflow detection.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> IntMatrix {
        IntMatrix {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<IntMatrix> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("rows must form a square matrix".into()));
        }
        Ok(IntMatrix {
            dim,
            entries: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// 0-based entry.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        let n = self.dim;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: i64 = 0;
                for l in 0..n {
                    let term = self
                        .get(i, l)
                        .checked_mul(other.get(l, j))
                        .ok_or(Error::Overflow("matrix product"))?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow("matrix product"))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `self^p` by repeated squaring.
    pub fn pow(&self, mut p: u64) -> Result<IntMatrix> {
        let mut result = IntMatrix::identity(self.dim);
        let mut base = self.clone();
        while p > 0 {
            if p & 1 == 1 {
                result = result.mul(&base)?;
            }
            p >>= 1;
            if p > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> Result<i64> {
        let n = self.dim;
        if n == 0 {
            return Ok(1);
        }
        let mut m: Vec<Vec<i128>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&i| m[i][k] != 0) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = m[i][j]
                        .checked_mul(m[k][k])
                        .ok_or(Error::Overflow("determinant"))?;
                    let b = m[i][k]
                        .checked_mul(m[k][j])
                        .ok_or(Error::Overflow("determinant"))?;
                    m[i][j] = a.checked_sub(b).ok_or(Error::Overflow("determinant"))? / prev;
                }
            }
            prev = m[k][k];
        }
        i64::try_from(sign * m[n - 1][n - 1]).map_err(|_| Error::Overflow("determinant"))
    }

    /// Block-diagonal assembly.
    pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
        let n = blocks.iter().map(|b| b.dim).sum();
        let mut out = IntMatrix::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    out.set(offset + i, offset + j, b.get(i, j));
                }
            }
            offset += b.dim;
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Quadratic-field data of the dilatation of a hyperbolic `SL_2(Z)` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DilatationInfo {
    pub trace: i64,
    /// `trace^2 - 4`
    pub discriminant: i64,
    /// `discriminant` divided by its largest square factor.
    pub squarefree_part: i64,
}

impl DilatationInfo {
    /// The dilatation `(t + sqrt(t^2 - 4)) / 2` as a float.
    pub fn dilatation(&self) -> f64 {
        (self.trace as f64 + (self.discriminant as f64).sqrt()) / 2.0
    }
}

pub fn dilatation_info(m: &IntMatrix) -> Result<DilatationInfo> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("expected 2x2, got {0}x{0}", m.dim())));
    }
    let trace = m.trace();
    let determinant = m.determinant()?;
    if determinant != 1 || trace <= 2 {
        return Err(Error::NotHyperbolic { trace, determinant });
    }
    let discriminant = trace
        .checked_mul(trace)
        .and_then(|t| t.checked_sub(4))
        .ok_or(Error::Overflow("discriminant"))?;
    Ok(DilatationInfo {
        trace,
        discriminant,
        squarefree_part: squarefree_part(discriminant),
    })
}

/// Divides out the largest square factor (trial division).
pub fn squarefree_part(n: i64) -> i64 {
    if n == 0 {
        return 0;
    }
    let sign = n.signum();
    let mut rest = n.unsigned_abs();
    let mut out: u64 = 1;
    let mut p: u64 = 2;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    sign * (out * rest) as i64
}
