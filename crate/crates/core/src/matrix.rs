//! Exact dense linear algebra: rank, kernel basis, and affine solves via
//! Gaussian elimination with a deterministic first-nonzero pivot rule.
//! Over the rationals each row is normalized by its integer content before
//! elimination to keep numerators small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Debug)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>, // row-major
}

impl ExactMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<ExactMatrix> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged row lengths".into()));
        }
        Ok(ExactMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Divide a rational row by the gcd of numerators over the lcm of
    /// denominators, preserving sign of the first nonzero entry. No-op over
    /// finite fields.
    fn normalize_row_content(&mut self, i: usize) {
        if !self.field.is_rationals() {
            return;
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for j in 0..self.cols {
            if let Elem::Rat(r) = self.get(i, j) {
                if r.is_zero() {
                    continue;
                }
                num_gcd = num_gcd.gcd(r.numer());
                den_lcm = den_lcm.lcm(r.denom());
            }
        }
        if num_gcd.is_zero() {
            return;
        }
        let scale = BigRational::new(den_lcm, num_gcd);
        let scale = Elem::Rat(scale.abs());
        for j in 0..self.cols {
            let v = self.field.mul(self.get(i, j), &scale);
            self.set(i, j, v);
        }
    }

    /// Row-reduce in place; returns pivot column indices (one per pivot row).
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for i in 0..self.rows {
            self.normalize_row_content(i);
        }
        for col in 0..self.cols {
            // deterministic pivot: first row with a nonzero entry in col
            let Some(p) = (row..self.rows).find(|&r| !self.field.is_zero(self.get(r, col)))
            else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(row * self.cols + j, p * self.cols + j);
                }
            }
            let inv = self
                .field
                .inv(self.get(row, col))
                .expect("pivot entry is nonzero");
            for j in col..self.cols {
                let v = self.field.mul(self.get(row, j), &inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || self.field.is_zero(self.get(r, col)) {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in col..self.cols {
                    let sub = self.field.mul(&factor, self.get(row, j));
                    let v = self.field.sub(self.get(r, j), &sub);
                    self.set(r, j, v);
                }
                self.normalize_row_content(r);
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel (vectors v with M v = 0), each with its
    /// first nonzero entry scaled to 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = self.field.neg(m.get(prow, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve M x = b; returns one solution if consistent, None otherwise.
    pub fn solve_affine(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "rhs length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = ExactMatrix::zero(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // inconsistent
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = aug.get(prow, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Stack another matrix below this one.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension("column count mismatch in vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(ExactMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}
