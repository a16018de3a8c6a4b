//! Dense matrices over `Z/p^k`.
//!
//! Elimination always pivots on a unit, choosing the lowest-index eligible
//! row. Over a local ring a square matrix is invertible exactly when such a
//! pivot exists in every column, which is what lets the same routine serve
//! both `F_p` and `Z/p^k`.

use std::fmt;

use crate::error::{Error, Result};
use crate::localring::LocalRing;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: LocalRing,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix(Z/{}) {:?}", self.ring.modulus(), self.to_rows())
    }
}

impl Matrix {
    pub fn zeros(ring: LocalRing, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: LocalRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ring.modulus();
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry.
    pub fn from_rows(ring: LocalRing, rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| ring.reduce_i64(x)).collect();
        Ok(Matrix { ring, rows: rows.len(), cols: ncols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(ring: LocalRing, columns: &[Vec<u64>]) -> Result<Self> {
        let nrows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != nrows) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        let mut m = Self::zeros(ring, nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x % ring.modulus();
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> LocalRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.cols + j] = value % self.ring.modulus();
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::DimensionMismatch("matrices over different rings".into()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = self.ring;
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = r.add(out.data[idx], r.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length");
        let r = self.ring;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| r.add(acc, r.mul(a, b))))
            .collect()
    }

    /// `v * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows, "vector length");
        let r = self.ring;
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = r.add(*o, r.mul(a, self.get(i, j)));
            }
        }
        out
    }

    /// `u^T * self * v`.
    pub fn bilinear(&self, u: &[u64], v: &[u64]) -> u64 {
        let r = self.ring;
        let mv = self.mul_vec(v);
        u.iter().zip(&mv).fold(0, |acc, (&a, &b)| r.add(acc, r.mul(a, b)))
    }

    /// Entrywise reduction to the residue field.
    pub fn reduce_mod_p(&self) -> Matrix {
        let field = self.ring.residue_field();
        Matrix {
            ring: field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x % field.p()).collect(),
        }
    }

    /// Reinterprets the canonical representatives in another ring with the same `p`.
    pub fn lift_to(&self, ring: LocalRing) -> Matrix {
        assert_eq!(ring.p(), self.ring.p(), "lift between different primes");
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x % ring.modulus()).collect(),
        }
    }

    /// Determinant of the reduction mod `p`, by Gaussian elimination over `F_p`.
    pub fn det_mod_p(&self) -> u64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.reduce_mod_p();
        let f = m.ring;
        let n = self.rows;
        let mut det = 1 % f.modulus();
        for c in 0..n {
            let Some(pivot) = (c..n).find(|&r| m.get(r, c) != 0) else {
                return 0;
            };
            if pivot != c {
                m.swap_rows(pivot, c);
                det = f.neg(det);
            }
            let pv = m.get(c, c);
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("nonzero in a field");
            for r in c + 1..n {
                let factor = f.mul(m.get(r, c), pinv);
                if factor != 0 {
                    m.add_row_multiple(r, c, f.neg(factor));
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.det_mod_p() != 0
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] += factor * row[source]`.
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: u64) {
        let r = self.ring;
        for j in 0..self.cols {
            let s = self.get(source, j);
            let idx = target * self.cols + j;
            self.data[idx] = r.add(self.data[idx], r.mul(factor, s));
        }
    }

    fn scale_row(&mut self, target: usize, factor: u64) {
        let r = self.ring;
        for j in 0..self.cols {
            let idx = target * self.cols + j;
            self.data[idx] = r.mul(self.data[idx], factor);
        }
    }

    /// Gauss-Jordan elimination on the first `limit` columns with unit pivots.
    /// Columns without a unit pivot are skipped. Returns the pivot columns; the
    /// pivot of the `i`-th listed column sits in row `i` and equals 1.
    fn eliminate(&mut self, limit: usize) -> Vec<usize> {
        let r = self.ring;
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..limit.min(self.cols) {
            if row == self.rows {
                break;
            }
            let Some(pivot) = (row..self.rows).find(|&i| r.is_unit(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(pivot, row);
            let pinv = r.inv(self.get(row, c)).expect("unit pivot");
            self.scale_row(row, pinv);
            for i in 0..self.rows {
                if i != row {
                    let factor = self.get(i, c);
                    if factor != 0 {
                        self.add_row_multiple(i, row, r.neg(factor));
                    }
                }
            }
            pivots.push(c);
            row += 1;
        }
        pivots
    }

    /// Solves `v * self = rhs` exactly over the ring.
    pub fn solve_row(&self, rhs: &[u64]) -> Result<Vec<u64>> {
        if !self.is_square() || rhs.len() != self.cols {
            return Err(Error::DimensionMismatch("solve_row needs a square system".into()));
        }
        // v Λ = rhs  <=>  Λ^T v^T = rhs^T
        let n = self.rows;
        let t = self.transpose();
        let mut aug = Self::zeros(self.ring, n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * (n + 1) + j] = t.get(i, j);
            }
            aug.data[i * (n + 1) + n] = rhs[i] % self.ring.modulus();
        }
        let pivots = aug.eliminate(n);
        if let Some(column) = (0..n).find(|c| pivots.get(*c) != Some(c)) {
            return Err(Error::SingularMatrix { column });
        }
        Ok((0..n).map(|i| aug.get(i, n)).collect())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.ring, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % self.ring.modulus();
        }
        let pivots = aug.eliminate(n);
        if let Some(column) = (0..n).find(|c| pivots.get(*c) != Some(c)) {
            return Err(Error::SingularMatrix { column });
        }
        let mut inv = Self::zeros(self.ring, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = aug.get(i, n + j);
            }
        }
        Ok(inv)
    }

    fn require_field(&self) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.ring.modulus()))
        }
    }

    /// Rank over `F_p`.
    pub fn rank(&self) -> Result<usize> {
        self.require_field()?;
        Ok(self.clone().eliminate(self.cols).len())
    }

    /// Basis of the right kernel `{x : self * x = 0}` over `F_p`, one vector per
    /// free column in increasing column order.
    pub fn nullspace(&self) -> Result<Vec<Vec<u64>>> {
        self.require_field()?;
        let mut m = self.clone();
        let pivots = m.eliminate(self.cols);
        let f = self.ring;
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        Ok(free
            .map(|fc| {
                let mut x = vec![0; self.cols];
                x[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(m.get(row, fc));
                }
                x
            })
            .collect())
    }

    /// A solution of `self * x = b` over `F_p` with all free variables zero.
    pub fn solve_field(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        self.require_field()?;
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let mut aug = Self::zeros(self.ring, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j);
            }
            aug.data[i * (self.cols + 1) + self.cols] = b[i] % self.ring.modulus();
        }
        let pivots = aug.eliminate(self.cols);
        if (pivots.len()..self.rows).any(|i| aug.get(i, self.cols) != 0) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(row, self.cols);
        }
        Ok(Some(x))
    }
}
