//! Dense exact linear algebra over the working cyclotomic field.
//!
//! Dimensions here are desk scale (at most a few hundred), so plain
//! Gaussian elimination with exact scalars is enough.

use crate::scalar::CycloScalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<CycloScalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.at(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, modulus: u64) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![CycloScalar::zero(modulus); rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zero(n, n, modulus);
        for i in 0..n {
            *m.at_mut(i, i) = CycloScalar::one(modulus);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        let modulus = data.first().map(|s| s.modulus()).unwrap_or(1);
        let _ = modulus;
        Matrix { rows: r, cols: c, data }
    }

    pub fn at(&self, r: usize, c: usize) -> &CycloScalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut CycloScalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn modulus(&self) -> u64 {
        self.data.first().map(|s| s.modulus()).unwrap_or(1)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols, self.modulus());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![CycloScalar::zero(self.modulus()); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] += a * &v[j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = &out.data[i] - &other.data[i];
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows, self.modulus());
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Row-reduce in place; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).inv().expect("pivot nonzero");
            for c in col..self.cols {
                let v = self.at(row, c) * &inv;
                *self.at_mut(row, c) = v;
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let sub = self.at(row, c) * &factor;
                        *self.at_mut(r, c) -= sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space (columns are unknowns).
    pub fn kernel(&self) -> Vec<Vec<CycloScalar>> {
        let modulus = self.modulus();
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![CycloScalar::zero(modulus); self.cols];
            v[f] = CycloScalar::one(modulus);
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -m.at(prow, f);
            }
            basis.push(v);
        }
        basis
    }

    /// Solve self * x = rhs; None when inconsistent. Returns one solution.
    pub fn solve(&self, rhs: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
        assert_eq!(self.rows, rhs.len());
        let modulus = self.modulus();
        let mut aug = Matrix::zero(self.rows, self.cols + 1, modulus);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = rhs[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![CycloScalar::zero(modulus); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = aug.at(prow, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let modulus = self.modulus();
        let mut aug = Matrix::zero(n, 2 * n, modulus);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = CycloScalar::one(modulus);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = Matrix::zero(n, n, modulus);
        for r in 0..n {
            for c in 0..n {
                *out.at_mut(r, c) = aug.at(r, n + c).clone();
            }
        }
        Some(out)
    }

    pub fn pow(&self, e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows, self.modulus());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Rank of the span of a set of vectors.
pub fn span_rank(vectors: &[Vec<CycloScalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// Is `v` in the span of `vectors`?
pub fn in_span(vectors: &[Vec<CycloScalar>], v: &[CycloScalar]) -> bool {
    if v.iter().all(|c| c.is_zero()) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    let m = Matrix::from_rows(vectors.to_vec()).transpose();
    m.solve(v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, CycloScalar};

    fn s(n: i64) -> CycloScalar {
        CycloScalar::from_rational(1, rat_int(n))
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let m = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let out = m.apply(&k[0]);
        assert!(out.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(vec![vec![s(2), s(1)], vec![s(5), s(3)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2, 1));
    }

    #[test]
    fn solve_consistent_system() {
        let m = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(1), s(-1)]]);
        let x = m.solve(&[s(3), s(1)]).unwrap();
        assert_eq!(x, vec![s(2), s(1)]);
    }

    #[test]
    fn cyclotomic_entries() {
        let i = CycloScalar::root_of_unity(4, 1).unwrap();
        let one = CycloScalar::one(4);
        let m = Matrix::from_rows(vec![vec![one.clone(), i.clone()], vec![-&i, one.clone()]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel().len(), 1);
    }
}
