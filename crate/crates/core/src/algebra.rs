//! Structure-constant tables for (left) Leibniz algebras.
//!
//! A table of dimension `n` stores `[e_i, e_j] = Σ_k c[i][j][k] e_k`. No
//! symmetry is assumed. Vectors are coordinate rows over the fixed basis.

use crate::error::{Error, Result};
use crate::field::{axpy, is_zero_vector, FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct AlgebraTable {
    field: FieldSpec,
    dim: usize,
    consts: Vec<Scalar>,
    name: Option<String>,
}

impl PartialEq for AlgebraTable {
    /// Tables compare by field, dimension and constants; names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.consts == other.consts
    }
}

impl Eq for AlgebraTable {}

/// Which side a multiplication operator acts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `L_x(y) = [x, y]`
    Left,
    /// `R_x(y) = [y, x]`
    Right,
}

/// Matrix of `L_x` or `R_x`; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultOperator {
    pub side: Side,
    pub matrix: Matrix,
}

impl AlgebraTable {
    /// The zero (abelian) table.
    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        AlgebraTable {
            field,
            dim,
            consts: vec![field.zero(); dim * dim * dim],
            name: None,
        }
    }

    /// Builds from the full `n*n*n` constant list, indexed `(i*n + j)*n + k`.
    pub fn from_constants(field: FieldSpec, dim: usize, consts: Vec<Scalar>) -> Result<Self> {
        if consts.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: consts.len(),
            });
        }
        if let Some(bad) = consts.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(bad.field().to_string(), field.to_string()));
        }
        Ok(AlgebraTable {
            field,
            dim,
            consts,
            name: None,
        })
    }

    /// Sets `[e_i, e_j]`, builder style.
    pub fn with_product(mut self, i: usize, j: usize, value: &[Scalar]) -> Self {
        self.set_product(i, j, value);
        self
    }

    /// Sets `[e_i, e_j] = Σ coeff·e_k` from sparse integer terms.
    pub fn with_terms(self, i: usize, j: usize, terms: &[(usize, i64)]) -> Self {
        let mut v = self.field.zero_vector(self.dim);
        for &(k, c) in terms {
            v[k] = &v[k] + &self.field.from_i64(c);
        }
        self.with_product(i, j, &v)
    }

    pub fn set_product(&mut self, i: usize, j: usize, value: &[Scalar]) {
        assert_eq!(value.len(), self.dim, "product vector has wrong length");
        let start = (i * self.dim + j) * self.dim;
        self.consts[start..start + self.dim].clone_from_slice(value);
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.consts
    }

    /// `[e_i, e_j]` as a coordinate slice.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.consts[start..start + self.dim]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if let Some(bad) = v.iter().find(|c| c.field() != self.field) {
            return Err(Error::FieldMismatch(bad.field().to_string(), self.field.to_string()));
        }
        Ok(())
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.ambient_dim(),
            });
        }
        if s.field() != self.field {
            return Err(Error::FieldMismatch(s.field().to_string(), self.field.to_string()));
        }
        Ok(())
    }

    /// `[u, v]`, bilinear in both arguments.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        Ok(self.br(u, v))
    }

    pub(crate) fn br(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field.zero_vector(self.dim);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(ui * vj), self.product(i, j));
            }
        }
        out
    }

    /// `[e_i, v]`
    fn left_basis(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field.zero_vector(self.dim);
        for (j, vj) in v.iter().enumerate() {
            axpy(&mut out, vj, self.product(i, j));
        }
        out
    }

    /// `[v, e_j]`
    fn right_basis(&self, v: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = self.field.zero_vector(self.dim);
        for (i, vi) in v.iter().enumerate() {
            axpy(&mut out, vi, self.product(i, j));
        }
        out
    }

    /// First basis triple `(i, j, k)` violating
    /// `[e_i,[e_j,e_k]] = [[e_i,e_j],e_k] + [e_j,[e_i,e_k]]`.
    pub fn leibniz_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let lhs = self.left_basis(i, self.product(j, k));
                    let mut rhs = self.right_basis(ij, k);
                    let tail = self.left_basis(j, self.product(i, k));
                    axpy(&mut rhs, &self.field.one(), &tail);
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_leibniz(&self) -> bool {
        self.leibniz_violation().is_none()
    }

    pub fn require_leibniz(&self) -> Result<()> {
        match self.leibniz_violation() {
            Some((i, j, k)) => Err(Error::NotLeibniz(i, j, k)),
            None => Ok(()),
        }
    }

    /// Whether `[e_i, e_j] = -[e_j, e_i]` and `[e_i, e_i] = 0` for all pairs.
    pub fn is_skew(&self) -> bool {
        (0..self.dim).all(|i| {
            is_zero_vector(self.product(i, i))
                && (i + 1..self.dim).all(|j| {
                    self.product(i, j)
                        .iter()
                        .zip(self.product(j, i))
                        .all(|(a, b)| (a + b).is_zero())
                })
        })
    }

    /// Span of all squares `[x, x]`, computed by polarization as the span of
    /// `[e_i, e_i]` and `[e_i, e_j] + [e_j, e_i]`. No identity is assumed.
    pub(crate) fn squares_span(&self) -> Subspace {
        let mut vs = Vec::new();
        for i in 0..self.dim {
            vs.push(self.product(i, i).to_vec());
            for j in i + 1..self.dim {
                let mut s = self.product(i, j).to_vec();
                axpy(&mut s, &self.field.one(), self.product(j, i));
                vs.push(s);
            }
        }
        Subspace::span(self.field, self.dim, &vs).expect("vectors have the algebra dimension")
    }

    /// The ideal `I_L` spanned by squares. Checks `[I_L, L] = 0`.
    pub fn squares_ideal(&self) -> Result<Subspace> {
        self.require_leibniz()?;
        let sq = self.squares_span();
        for v in sq.vectors() {
            for j in 0..self.dim {
                if !is_zero_vector(&self.right_basis(v, j)) {
                    return Err(Error::Inconsistency(
                        "squares ideal does not left-annihilate the algebra".into(),
                    ));
                }
            }
        }
        Ok(sq)
    }

    /// Lie test through `I_L = 0`, cross-checked against skew-symmetry.
    pub fn is_lie(&self) -> Result<bool> {
        let by_squares = self.squares_ideal()?.is_zero();
        let by_skew = self.is_skew();
        if by_squares != by_skew {
            return Err(Error::Inconsistency(format!(
                "squares-ideal test says Lie={by_squares} but skew test says {by_skew}"
            )));
        }
        Ok(by_squares)
    }

    /// Kernel of `x ↦ (T(x))` where `images[i]` is the image of `e_i`.
    fn joint_kernel(&self, images: Vec<Vec<Scalar>>) -> Subspace {
        let width = images.first().map_or(0, Vec::len);
        if width == 0 {
            return Subspace::full(self.field, self.dim);
        }
        let m = Matrix::from_columns(self.field, width, &images).expect("uniform widths");
        Subspace::from_matrix(&m.kernel_basis())
    }

    /// `{x : [x, L] = [L, x] = 0}`.
    pub fn center(&self) -> Subspace {
        let images = (0..self.dim)
            .map(|i| {
                let mut img = Vec::with_capacity(2 * self.dim * self.dim);
                for j in 0..self.dim {
                    img.extend_from_slice(self.product(i, j));
                    img.extend_from_slice(self.product(j, i));
                }
                img
            })
            .collect();
        self.joint_kernel(images)
    }

    /// `Ann_ℓ(L) = {x : [x, L] = 0}`.
    pub fn left_annihilator(&self) -> Subspace {
        let images = (0..self.dim)
            .map(|i| (0..self.dim).flat_map(|j| self.product(i, j).to_vec()).collect())
            .collect();
        self.joint_kernel(images)
    }

    /// `{x : [L, x] = 0}`.
    pub fn right_annihilator(&self) -> Subspace {
        let images = (0..self.dim)
            .map(|i| (0..self.dim).flat_map(|j| self.product(j, i).to_vec()).collect())
            .collect();
        self.joint_kernel(images)
    }

    /// `C_L(A) = {x : [x, A] = [A, x] = 0}`.
    pub fn centralizer(&self, a: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        let images = (0..self.dim)
            .map(|i| {
                let mut img = Vec::new();
                for v in a.vectors() {
                    img.extend(self.left_basis(i, v));
                    img.extend(self.right_basis(v, i));
                }
                img
            })
            .collect();
        Ok(self.joint_kernel(images))
    }

    /// `N(A) = {x : [x, A] + [A, x] ⊆ A}` for a subalgebra `A`.
    pub fn normalizer(&self, a: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        if !self.is_subalgebra(a)? {
            return Err(Error::NotSubalgebra);
        }
        let ann = a.annihilator();
        let project = |w: Vec<Scalar>| -> Vec<Scalar> {
            ann.vectors()
                .map(|f| crate::field::dot(self.field, f, &w))
                .collect()
        };
        let images = (0..self.dim)
            .map(|i| {
                let mut img = Vec::new();
                for v in a.vectors() {
                    img.extend(project(self.left_basis(i, v)));
                    img.extend(project(self.right_basis(v, i)));
                }
                img
            })
            .collect();
        Ok(self.joint_kernel(images))
    }

    /// `[U, V]`: span of brackets of basis vectors.
    pub fn product_space(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        Ok(self.product_span(u, v))
    }

    pub(crate) fn product_span(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut out = Vec::with_capacity(u.dim() * v.dim());
        for x in u.vectors() {
            for y in v.vectors() {
                let b = self.br(x, y);
                if !is_zero_vector(&b) {
                    out.push(b);
                }
            }
        }
        Subspace::span(self.field, self.dim, &out).expect("consistent dimension")
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    /// `[U, U] ⊆ U`.
    pub fn is_subalgebra(&self, u: &Subspace) -> Result<bool> {
        self.check_subspace(u)?;
        for x in u.vectors() {
            for y in u.vectors() {
                if !u.contains(&self.br(x, y)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `[U, L] + [L, U] ⊆ U`.
    pub fn is_ideal(&self, u: &Subspace) -> Result<bool> {
        self.check_subspace(u)?;
        for x in u.vectors() {
            for j in 0..self.dim {
                if !u.contains(&self.right_basis(x, j)) || !u.contains(&self.left_basis(j, x)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `[U, U] = 0`.
    pub fn is_abelian_subspace(&self, u: &Subspace) -> Result<bool> {
        self.check_subspace(u)?;
        Ok(u.vectors()
            .all(|x| u.vectors().all(|y| is_zero_vector(&self.br(x, y)))))
    }

    /// Least subalgebra containing `s`: fixed point of `W ↦ W + [W, W]`.
    pub fn generated_subalgebra(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let mut w = s.clone();
        loop {
            let next = w.sum(&self.product_span(&w, &w))?;
            if next.dim() == w.dim() {
                return Ok(w);
            }
            w = next;
        }
    }

    /// Least two-sided ideal containing `s`.
    pub fn generated_ideal(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let full = self.full();
        let mut w = s.clone();
        loop {
            let next = w
                .sum(&self.product_span(&full, &w))?
                .sum(&self.product_span(&w, &full))?;
            if next.dim() == w.dim() {
                return Ok(w);
            }
            w = next;
        }
    }

    /// Quotient by an ideal on the standard complement (non-pivot columns of
    /// the ideal's RREF basis, in index order). The projection matrix maps
    /// column vectors of `L` to quotient coordinates.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(AlgebraTable, Matrix)> {
        if !self.is_ideal(ideal)? {
            return Err(Error::NotIdeal);
        }
        let comp = ideal.complement_indices();
        let q = comp.len();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            comp.iter().map(|&c| r[c].clone()).collect()
        };
        let mut table = AlgebraTable::zero(self.field, q);
        for (a, &i) in comp.iter().enumerate() {
            for (b, &j) in comp.iter().enumerate() {
                table.set_product(a, b, &project(self.product(i, j)));
            }
        }
        let columns: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| project(&self.field.unit_vector(self.dim, j)))
            .collect();
        let proj = Matrix::from_columns(self.field, q, &columns)?;
        Ok((table, proj))
    }

    /// The induced table of a subalgebra on its RREF basis.
    pub fn subalgebra_table(&self, s: &Subspace) -> Result<AlgebraTable> {
        if !self.is_subalgebra(s)? {
            return Err(Error::NotSubalgebra);
        }
        let d = s.dim();
        let basis: Vec<Vec<Scalar>> = s.vectors().map(<[Scalar]>::to_vec).collect();
        let mut table = AlgebraTable::zero(self.field, d);
        for a in 0..d {
            for b in 0..d {
                let prod = self.br(&basis[a], &basis[b]);
                table.set_product(a, b, &s.coordinates(&prod).expect("closed under bracket"));
            }
        }
        Ok(table)
    }

    /// Block-diagonal sum; cross products vanish.
    pub fn direct_sum(&self, other: &AlgebraTable) -> Result<AlgebraTable> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let mut t = AlgebraTable::zero(self.field, n);
        for i in 0..n1 {
            for j in 0..n1 {
                let mut v = self.product(i, j).to_vec();
                v.extend(self.field.zero_vector(n2));
                t.set_product(i, j, &v);
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                let mut v = self.field.zero_vector(n1);
                v.extend_from_slice(other.product(i, j));
                t.set_product(n1 + i, n1 + j, &v);
            }
        }
        Ok(t)
    }

    /// The same algebra in the basis `f_i = Σ_j P[i][j] e_j` (rows of `P`).
    pub fn change_of_basis(&self, p: &Matrix) -> Result<AlgebraTable> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::Shape(format!(
                "basis matrix must be {}x{}",
                self.dim, self.dim
            )));
        }
        let inv = p.inverse()?;
        let mut t = AlgebraTable::zero(self.field, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod = self.br(p.row(i), p.row(j));
                t.set_product(i, j, &inv.apply_row(&prod)?);
            }
        }
        Ok(t)
    }

    /// `L_x` or `R_x` as a matrix; column `j` is the image of `e_j`.
    pub fn mult_operator(&self, x: &[Scalar], side: Side) -> Result<MultOperator> {
        self.check_vector(x)?;
        let columns: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| match side {
                Side::Left => self.right_basis(x, j),
                Side::Right => self.left_basis(j, x),
            })
            .collect();
        Ok(MultOperator {
            side,
            matrix: Matrix::from_columns(self.field, self.dim, &columns)?,
        })
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn gf3() -> FieldSpec {
        FieldSpec::gf(3)
    }

    #[test]
    fn heisenberg_bracket() {
        let h = families::heisenberg(gf3());
        let f = gf3();
        // basis (e1, ê1, e0)
        let e1 = f.unit_vector(3, 0);
        let e1h = f.unit_vector(3, 1);
        assert_eq!(h.bracket(&e1, &e1h).unwrap(), f.unit_vector(3, 2));
        assert_eq!(
            h.bracket(&f.zero_vector(3), &e1h).unwrap(),
            f.zero_vector(3)
        );
    }

    #[test]
    fn bracket_rejects_bad_input() {
        let h = families::heisenberg(gf3());
        assert!(h.bracket(&gf3().zero_vector(2), &gf3().zero_vector(3)).is_err());
        let q = FieldSpec::Rationals;
        assert!(h.bracket(&q.zero_vector(3), &gf3().zero_vector(3)).is_err());
    }

    #[test]
    fn abelian_is_leibniz_and_lie() {
        let a = families::abelian(3, gf3());
        assert!(a.is_leibniz());
        assert!(a.is_lie().unwrap());
        assert_eq!(a.center(), a.full());
        assert_eq!(a.left_annihilator(), a.full());
    }

    #[test]
    fn heisenberg_center() {
        let h = families::heisenberg(FieldSpec::Rationals);
        assert_eq!(h.center(), Subspace::coordinate(FieldSpec::Rationals, 3, &[2]));
        assert_eq!(h.left_annihilator(), h.center());
        let hh = h.product_space(&h.full(), &h.full()).unwrap();
        assert_eq!(hh, h.center());
    }

    #[test]
    fn centralizer_of_zero_is_everything() {
        let h = families::heisenberg(gf3());
        assert_eq!(h.centralizer(&h.zero_subspace()).unwrap(), h.full());
        assert!(h.product_space(&h.full(), &h.zero_subspace()).unwrap().is_zero());
    }

    #[test]
    fn normalizer_of_ideal_is_everything() {
        let h = families::heisenberg(gf3());
        assert_eq!(h.normalizer(&h.center()).unwrap(), h.full());
    }

    #[test]
    fn normalizer_requires_subalgebra() {
        let h = families::heisenberg(gf3());
        let s = Subspace::coordinate(gf3(), 3, &[0, 1]);
        assert_eq!(h.normalizer(&s), Err(Error::NotSubalgebra));
    }

    #[test]
    fn quotient_by_everything_is_zero() {
        let h = families::heisenberg(gf3());
        let (q, proj) = h.quotient(&h.full()).unwrap();
        assert_eq!(q.dim(), 0);
        assert_eq!(proj.rows(), 0);
    }

    #[test]
    fn heisenberg_mod_center_is_abelian() {
        let h = families::heisenberg(gf3());
        let (q, proj) = h.quotient(&h.center()).unwrap();
        assert_eq!(q, families::abelian(2, gf3()));
        assert_eq!(proj.rows(), 2);
        assert!(q.is_leibniz());
    }

    #[test]
    fn quotient_requires_ideal() {
        let h = families::heisenberg(gf3());
        let s = Subspace::coordinate(gf3(), 3, &[0]);
        assert_eq!(h.quotient(&s).unwrap_err(), Error::NotIdeal);
    }

    #[test]
    fn direct_sums() {
        let f = gf3();
        let h = families::heisenberg(f);
        assert_eq!(h.direct_sum(&families::abelian(0, f)).unwrap(), h);
        let ab = families::abelian(1, f)
            .direct_sum(&families::abelian(1, f))
            .unwrap();
        assert_eq!(ab, families::abelian(2, f));
        assert!(h.direct_sum(&families::abelian(1, FieldSpec::Rationals)).is_err());
    }

    #[test]
    fn change_of_basis_identity_and_inverse() {
        let f = FieldSpec::Rationals;
        let h = families::heisenberg(f);
        assert_eq!(h.change_of_basis(&Matrix::identity(f, 3)).unwrap(), h);
        let p = Matrix::from_i64(f, 3, 3, &[1, 2, 0, 0, 1, 1, 1, 0, 3]).unwrap();
        let moved = h.change_of_basis(&p).unwrap();
        assert_eq!(moved.change_of_basis(&p.inverse().unwrap()).unwrap(), h);
        let singular = Matrix::from_i64(f, 3, 3, &[1, 0, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(h.change_of_basis(&singular), Err(Error::Singular));
    }

    #[test]
    fn swapping_heisenberg_generators_flips_sign() {
        let f = FieldSpec::Rationals;
        let h = families::heisenberg(f);
        let swap = Matrix::from_i64(f, 3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        let t = h.change_of_basis(&swap).unwrap();
        assert_eq!(t.product(0, 1), f.vector_from_i64(&[0, 0, -1]).as_slice());
        assert_eq!(t.product(1, 0), f.vector_from_i64(&[0, 0, 1]).as_slice());
    }

    #[test]
    fn zero_operator() {
        let h = families::heisenberg(gf3());
        let op = h.mult_operator(&gf3().zero_vector(3), Side::Left).unwrap();
        assert!(op.matrix.is_zero());
    }

    #[test]
    fn generated_subalgebra_of_subalgebra_is_itself() {
        let h = families::heisenberg(gf3());
        let c = h.center();
        assert_eq!(h.generated_subalgebra(&c).unwrap(), c);
        let s = Subspace::coordinate(gf3(), 3, &[0, 1]);
        assert_eq!(h.generated_subalgebra(&s).unwrap(), h.full());
    }
}
