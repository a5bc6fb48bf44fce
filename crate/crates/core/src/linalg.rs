//! Dense matrices over an exact field, with Gaussian elimination.

use crate::field::Field;

#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

/// Result of row reduction: the reduced matrix and its pivot columns.
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data: entries }
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| field.from_i64(v))).collect();
        Matrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &F::Elem) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(&self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let p = f.mul(a, b);
                        out.add_at(i, j, &p);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Copy `block` into self with its top-left corner at (r, c).
    pub fn put(&mut self, r: usize, c: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Self {
        let mut out = Self::zeros(&self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn hstack(parts: &[&Self]) -> Self {
        let f = parts[0].field.clone();
        let rows = parts[0].rows;
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(&f, rows, cols);
        let mut c = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            out.put(0, c, m);
            c += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Self]) -> Self {
        let f = parts[0].field.clone();
        let cols = parts[0].cols;
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Self::zeros(&f, rows, cols);
        let mut r = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            out.put(r, 0, m);
            r += m.rows;
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(field: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut out = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref<F> {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            if !f.is_one(&inv) {
                for j in c..m.cols {
                    let v = f.mul(m.get(r, j), &inv);
                    m.set(r, j, v);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let prj = m.get(r, j);
                    if f.is_zero(prj) {
                        continue;
                    }
                    let v = f.sub(m.get(i, j), &f.mul(&factor, prj));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().pivots.len()
    }

    /// Basis of {x : self·x = 0}, as columns of the returned matrix.
    pub fn nullspace(&self) -> Matrix<F> {
        let f = &self.field;
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                let v = matrix.get(r, fc);
                if !f.is_zero(v) {
                    out.set(pc, k, f.neg(v));
                }
            }
        }
        out
    }

    /// Some x with self·x = b, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let bm = Self::from_columns(f, self.rows, &[b.to_vec()]);
        let aug = Self::hstack(&[self, &bm]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Some X with self·X = b, if one exists.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        let f = &self.field;
        let aug = Self::hstack(&[self, b]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(f, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, matrix.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Standard basis vectors completing the column space to the whole
    /// space, by index.
    pub fn column_space_complement(&self) -> Vec<usize> {
        let piv = self.transpose().rref().pivots;
        (0..self.rows).filter(|i| !piv.contains(i)).collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Self::hstack(&[self, &Self::identity(&self.field, n)]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(matrix.submatrix(0, n, n, n))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.field.render(self.get(i, j))).collect()).collect()
    }
}

/// Dimension of the span of the given vectors.
pub fn span_dim<F: Field>(field: &F, len: usize, vectors: &[Vec<F::Elem>]) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    Matrix::from_columns(field, len, vectors).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};

    #[test]
    fn rank_and_nullspace() {
        let f = Fp::new(7).unwrap();
        let m = Matrix::from_i64(&f, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let n = m.nullspace();
        assert_eq!(n.cols(), 1);
        assert!(m.mul(&n).is_zero());
    }

    #[test]
    fn solve_and_inverse_over_q() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&q, 2));
        let x = m.solve(&[q.from_i64(3), q.from_i64(2)]).unwrap();
        assert_eq!(x, vec![q.from_i64(1), q.from_i64(1)]);
        let sing = Matrix::from_i64(&q, &[vec![1, 1], vec![1, 1]]);
        assert!(sing.solve(&[q.from_i64(1), q.from_i64(0)]).is_none());
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn empty_shapes() {
        let f = Fp::default();
        let m = Matrix::zeros(&f, 0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.nullspace().cols(), 3);
    }
}
