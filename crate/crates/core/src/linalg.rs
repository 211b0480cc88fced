//! Rectangular matrices over any ring of the grammar, and exact rank over
//! fields.

use std::fmt;

use serde_json::Value as Json;

use crate::error::{Error, Result};
use crate::rings::{Element, Ring, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Value>,
}

impl Matrix {
    /// Builds a matrix from row-major canonical entries.
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Value>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix has an empty dimension"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries given for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            ring.check(e)?;
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_ints(ring: &Ring, rows: usize, cols: usize, ints: &[i64]) -> Result<Self> {
        let entries = ints
            .iter()
            .map(|&n| ring.from_int(n))
            .collect::<Result<_>>()?;
        Matrix::new(ring.clone(), rows, cols, entries)
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Result<Self> {
        Matrix::new(ring.clone(), rows, cols, vec![ring.zero(); rows * cols])
    }

    pub fn identity(ring: &Ring, n: usize) -> Result<Self> {
        let mut m = Matrix::zero(ring, n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        Ok(m)
    }

    /// 1x1 matrix holding one scalar.
    pub fn scalar(ring: &Ring, v: Value) -> Result<Self> {
        Matrix::new(ring.clone(), 1, 1, vec![v])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Value] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Value {
        &self.entries[row * self.cols + col]
    }

    pub fn element(&self, row: usize, col: usize) -> Element {
        Element::from_parts(self.ring.clone(), self.get(row, col).clone())
    }

    fn same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                expected: self.ring.clone(),
                found: other.ring.clone(),
            });
        }
        Ok(())
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        self.same_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            entries,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Result<Matrix> {
        let entries = self
            .entries
            .iter()
            .map(|a| self.ring.neg(a))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            entries,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg()?)
    }

    /// `self * other`, each entry summed as `A[i][t] * B[t][j]` with the
    /// left factor first.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = &self.ring;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring.zero();
                for t in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.get(i, t), other.get(t, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Multiplies every entry on the right by a scalar.
    pub fn mul_scalar_right(&self, s: &Value) -> Result<Matrix> {
        let entries = self
            .entries
            .iter()
            .map(|a| self.ring.mul(a, s))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            entries,
            ..self.clone()
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        self.ring.is_one(e)
                    } else {
                        self.ring.is_zero(e)
                    }
                })
            })
    }

    /// Row rank by Gaussian elimination. Fields only.
    pub fn rank(&self) -> Result<usize> {
        let ring = &self.ring;
        if !ring.is_field() {
            return Err(Error::NotAField(ring.clone()));
        }
        let mut rows: Vec<Vec<Value>> =
            self.entries.chunks(self.cols).map(|r| r.to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| !ring.is_zero(&rows[r][col])) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = ring.inverse(&rows[rank][col])?;
            let pivot_row: Vec<Value> = rows[rank]
                .iter()
                .map(|e| ring.mul(&inv, e))
                .collect::<Result<_>>()?;
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || ring.is_zero(&row[col]) {
                    continue;
                }
                let factor = row[col].clone();
                for c in col..self.cols {
                    let delta = ring.mul(&factor, &pivot_row[c])?;
                    row[c] = ring.sub(&row[c], &delta)?;
                }
            }
            rows[rank] = pivot_row;
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        Ok(rank)
    }

    /// Nested-array literal, one inner array per row.
    pub fn to_literal(&self) -> Json {
        Json::Array(
            self.entries
                .chunks(self.cols)
                .map(|row| Json::Array(row.iter().map(|e| self.ring.to_literal(e)).collect()))
                .collect(),
        )
    }

    pub fn from_literal(ring: &Ring, lit: &Json) -> Result<Matrix> {
        let bad = |reason: &str| Error::Format(format!("matrix literal {lit}: {reason}"));
        let rows = lit
            .as_array()
            .ok_or_else(|| bad("expected an array of rows"))?;
        let cols = rows
            .first()
            .and_then(|r| r.as_array())
            .map(|r| r.len())
            .ok_or_else(|| bad("expected at least one row"))?;
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == cols)
                .ok_or_else(|| bad("rows must be arrays of equal length"))?;
            for e in row {
                entries.push(ring.from_literal(e)?);
            }
        }
        Matrix::new(ring.clone(), rows.len(), cols, entries)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.ring.display(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
