//! Dense matrices over a [`FieldSpec`] with exact elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, field, data }
    }

    pub fn from_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&v| Scalar::from_i64(field, v)).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(Error::Degree(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Self::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row counts");
        let mut m = Self::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column counts");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, data }
    }

    pub fn is_skew(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        (0..self.rows).all(|i| {
            self.get(i, i).is_zero()
                && (i + 1..self.cols).all(|j| (self.get(i, j) + self.get(j, i)).is_zero())
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * rj);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for i in r + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) * &inv;
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * rj);
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel, as the columns of the returned matrix.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.field, self.cols, free.len());
        for (b, &f) in free.iter().enumerate() {
            k.set(f, b, Scalar::one(self.field));
            for (i, &p) in pivots.iter().enumerate() {
                let v = -r.get(i, f);
                k.set(p, b, v);
            }
        }
        k
    }

    /// Indices of a maximal independent subset of the columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Degree("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = Scalar::one(self.field);
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero(self.field));
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) * &inv;
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

/// Rank and kernel basis of `m`; `rank + kernel.cols() == m.cols()`.
pub fn rank_kernel(m: &Matrix) -> (usize, Matrix) {
    let k = m.kernel();
    (m.cols() - k.cols(), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cofactor_det(m: &Matrix) -> Scalar {
        let n = m.rows();
        if n == 0 {
            return Scalar::one(m.field());
        }
        let mut acc = Scalar::zero(m.field());
        for j in 0..n {
            let a = m.get(0, j);
            if a.is_zero() {
                continue;
            }
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = a * &cofactor_det(&m.submatrix(&rows, &cols));
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn trivial_ranks() {
        let q = FieldSpec::Rational;
        let (r, k) = rank_kernel(&Matrix::zeros(q, 3, 3));
        assert_eq!((r, k.cols()), (0, 3));
        let (r, k) = rank_kernel(&Matrix::identity(q, 4));
        assert_eq!((r, k.cols()), (4, 0));
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = FieldSpec::prime(101).unwrap();
        let m = Matrix::from_i64(f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let (r, k) = rank_kernel(&m);
        assert_eq!(r, 2);
        assert!(m.mul(&k).unwrap().is_zero());
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn determinant_matches_cofactor() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for field in [FieldSpec::Rational, FieldSpec::prime(1009).unwrap()] {
            for n in 0..6 {
                let rows = (0..n)
                    .map(|_| (0..n).map(|_| Scalar::random(field, &mut rng)).collect())
                    .collect();
                let m = Matrix::from_rows(field, rows);
                let m = if n == 0 { Matrix::zeros(field, 0, 0) } else { m };
                assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
            }
        }
    }

    #[test]
    fn rational_and_large_prime_ranks_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let q = FieldSpec::Rational;
        let p = FieldSpec::prime(1_000_003).unwrap();
        for _ in 0..30 {
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let low_rank = rng.gen_bool(0.5);
            let mut rows: Vec<Vec<i64>> =
                (0..r).map(|_| (0..c).map(|_| rng.gen_range(-999..1000)).collect()).collect();
            if low_rank && r > 1 {
                let (a, b) = (rng.gen_range(-3..4), rng.gen_range(-3..4));
                rows[r - 1] = (0..c).map(|j| a * rows[0][j] + b * rows[1 % r][j]).collect();
            }
            assert_eq!(Matrix::from_i64(q, &rows).rank(), Matrix::from_i64(p, &rows).rank());
        }
    }
}
