//! Dense matrices over a [`FieldSpec`] with exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{axpy, FieldSpec, Scalar};

/// Row-major dense matrix. Operators act on column vectors (`M · v`); subspace
/// bases and change-of-basis matrices store one vector per row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for x in &row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(x.field().to_string(), field.to_string()));
                }
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            field,
            data,
        })
    }

    /// Builds from integer entries in row-major order.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data: entries.iter().map(|&e| field.from_i64(e)).collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                axpy(out_row, self.get(i, k), rhs.row(k));
            }
        }
        Ok(out)
    }

    /// `M · v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| crate::field::dot(self.field, self.row(i), v))
            .collect())
    }

    /// Row vector times matrix, `v · M`.
    pub fn apply_row(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = self.field.zero_vector(self.cols);
        for (i, c) in v.iter().enumerate() {
            axpy(&mut out, c, self.row(i));
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Shape("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).fold(self.field.zero(), |acc, i| &acc + self.get(i, i)))
    }

    /// Reduced row echelon form and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            let pivot_row: Vec<Scalar> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                let neg = -&factor;
                let row = &mut m.data[i * m.cols..(i + 1) * m.cols];
                axpy(row, &neg, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Drops zero rows.
    pub fn nonzero_rows(&self) -> Matrix {
        let rows: Vec<Vec<Scalar>> = self
            .row_vectors()
            .filter(|r| !crate::field::is_zero_vector(r))
            .map(<[Scalar]>::to_vec)
            .collect();
        Matrix::from_rows(self.field, self.cols, rows).expect("same shape")
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of `{x : M x = 0}`, one vector per row, in RREF.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = self.field.zero_vector(self.cols);
            v[f] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            basis.push(v);
        }
        let m = Matrix::from_rows(self.field, self.cols, basis).expect("consistent shape");
        m.rref().0.nonzero_rows()
    }

    /// Whether `M^k = 0` for some `k`; checked at `k = n`.
    pub fn is_nilpotent(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut p = self.clone();
        for _ in 1..self.rows.max(1) {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self).expect("square");
        }
        p.is_zero()
    }

    /// Sub-block of rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut b = Matrix::zeros(self.field, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                b.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        b
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Standard rref entry point.
/// Coefficients `c` with `Σ c_i vectors[i] = target`, free variables set to
/// zero; `None` when `target` is outside the span.
pub fn solve_combination(
    field: FieldSpec,
    vectors: &[Vec<Scalar>],
    target: &[Scalar],
) -> Option<Vec<Scalar>> {
    let k = vectors.len();
    let mut columns = vectors.to_vec();
    columns.push(target.to_vec());
    let m = Matrix::from_columns(field, target.len(), &columns).ok()?;
    let (r, pivots) = m.rref_with_pivots();
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut out = field.zero_vector(k);
    for (i, &p) in pivots.iter().enumerate() {
        out[p] = r.get(i, k).clone();
    }
    Some(out)
}

pub fn rref(m: &Matrix) -> (Matrix, usize) {
    m.rref()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf3() -> FieldSpec {
        FieldSpec::gf(3)
    }

    #[test]
    fn identity_is_already_reduced() {
        let id = Matrix::identity(FieldSpec::Rationals, 2);
        assert_eq!(rref(&id), (id.clone(), 2));
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let z = Matrix::zeros(FieldSpec::Rationals, 3, 3);
        assert_eq!(rref(&z), (z.clone(), 0));
    }

    #[test]
    fn rank_one_over_gf3() {
        // row2 - 2*row1 = [0, 1 - 4] = [0, 0] mod 3
        let m = Matrix::from_i64(gf3(), 2, 2, &[1, 2, 2, 1]).unwrap();
        let expected = Matrix::from_i64(gf3(), 2, 2, &[1, 2, 0, 0]).unwrap();
        assert_eq!(rref(&m), (expected, 1));
    }

    #[test]
    fn inverse_round_trip() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_i64(q, 3, 3, &[2, 1, 0, 0, 1, 3, 1, 0, 1]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(q, 3));
        let singular = Matrix::from_i64(q, 2, 2, &[1, 2, 2, 4]).unwrap();
        assert_eq!(singular.inverse(), Err(Error::Singular));
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_i64(q, 1, 3, &[1, 2, 3]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 2);
        for r in k.row_vectors() {
            assert!(m.apply(r).unwrap()[0].is_zero());
        }
    }

    #[test]
    fn nilpotency() {
        let f = gf3();
        let n = Matrix::from_i64(f, 3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        assert!(n.is_nilpotent());
        assert!(!Matrix::identity(f, 2).is_nilpotent());
    }
}
