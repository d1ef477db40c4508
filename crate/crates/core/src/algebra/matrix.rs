use std::fmt;

use super::field::Field;

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field.ctx())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| self.field.format_elem(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entries length must be rows * cols");
        Self { field, rows, cols, entries }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Self { field, rows, cols, entries }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let entries: Vec<F::Elem> = rows
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), cols, "ragged rows"))
            .flatten()
            .collect();
        Self::new(field, n, cols, entries)
    }

    pub fn from_i64(field: F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        let entries = entries.iter().map(|&n| field.from_i64(n)).collect();
        Self::new(field, rows, cols, entries)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c).clone());
            }
        }
        Self::new(self.field.clone(), self.cols, self.rows, out)
    }

    /// Append the rows of `other` below `self`.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::new(self.field.clone(), self.rows + other.rows, self.cols, entries)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = reduce(&self.field, self.rows, self.cols, &mut m.entries, true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut scratch = self.entries.clone();
        reduce(&self.field, self.rows, self.cols, &mut scratch, false).len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right kernel, one vector per free column in ascending
    /// order, normalized to 1 at its free column.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }
}

/// Rank of a row-major buffer, destroying its contents.
pub fn rank_in_place<F: Field>(field: &F, rows: usize, cols: usize, entries: &mut [F::Elem]) -> usize {
    reduce(field, rows, cols, entries, false).len()
}

/// Gauss-Jordan elimination in place. With `full` the result is the reduced
/// row echelon form; otherwise only the echelon form needed for the rank.
fn reduce<F: Field>(
    f: &F,
    rows: usize,
    cols: usize,
    m: &mut [F::Elem],
    full: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for k in 0..cols {
                m.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(&m[r * cols + c]).unwrap();
        for k in c..cols {
            m[r * cols + k] = f.mul(&m[r * cols + k], &inv);
        }
        let start = if full { 0 } else { r + 1 };
        for i in start..rows {
            if i == r || f.is_zero(&m[i * cols + c]) {
                continue;
            }
            let factor = m[i * cols + c].clone();
            for k in c..cols {
                let t = f.mul(&factor, &m[r * cols + k]);
                m[i * cols + k] = f.sub(&m[i * cols + k], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    #[test]
    fn empty_rows_have_rank_zero() {
        let m = Matrix::zeros(Rationals, 0, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 4);
    }

    #[test]
    fn identity_rank() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(Matrix::identity(f, 3).rank(), 3);
        assert!(Matrix::identity(f, 2).kernel().is_empty());
    }

    #[test]
    fn dependent_rows_over_q() {
        let m = Matrix::from_i64(Rationals, 2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn zero_row_kernel() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_i64(f, 1, 2, &[0, 0]);
        assert_eq!(m.kernel(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn kernel_of_difference_row() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_i64(f, 1, 2, &[1, -1]);
        assert_eq!(m.kernel(), vec![vec![1, 1]]);
    }

    #[test]
    fn rref_pivots() {
        let q = Rationals;
        let m = Matrix::from_i64(q, 3, 4, &[0, 2, 4, 2, 0, 1, 2, 1, 1, 0, 1, 0]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r.row(0), &[q.one(), q.zero(), q.one(), q.zero()][..]);
        assert_eq!(r.row(2), &[q.zero(), q.zero(), q.zero(), q.zero()][..]);
    }
}
