//! Subspaces in canonical (RREF) form and their enumeration over GF(p).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{axpy, is_zero_vector, FieldSpec, Scalar};
use crate::matrix::Matrix;

/// A subspace of `F^n`, stored as the nonzero rows of its reduced row echelon
/// basis. Two subspaces are equal iff their basis matrices are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Self::from_matrix(&Matrix::identity(field, ambient_dim))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let basis = r.block(0, pivots.len(), 0, m.cols());
        Subspace { basis, pivots }
    }

    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Self::from_matrix(&Matrix::from_rows(
            field,
            ambient_dim,
            vectors.to_vec(),
        )?))
    }

    /// Span of standard basis vectors.
    pub fn coordinate(field: FieldSpec, ambient_dim: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<Scalar>> = indices
            .iter()
            .map(|&i| field.unit_vector(ambient_dim, i))
            .collect();
        Self::span(field, ambient_dim, &vs).expect("unit vectors have the ambient length")
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        self.basis.row_vectors()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// `v` minus its component along this subspace, relative to the standard
    /// complement; the result vanishes at every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if !c.is_zero() {
                axpy(&mut out, &-&c, self.basis.row(i));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim() && is_zero_vector(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.basis
            .apply_row(coords)
            .expect("coordinate vector matches dimension")
    }

    /// Standard basis indices completing this subspace to the whole space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient_dim())
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let rows: Vec<Vec<Scalar>> = self
            .vectors()
            .chain(other.vectors())
            .map(<[Scalar]>::to_vec)
            .collect();
        Subspace::span(self.field(), self.ambient_dim(), &rows)
    }

    /// `{w : w · u = 0 for all u}`, the annihilator in the dual coordinates.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.field(), self.ambient_dim());
        }
        Subspace::from_matrix(&self.basis.kernel_basis())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Extends `self` to a basis of `bigger` greedily using `bigger`'s RREF rows,
    /// returning the added vectors.
    pub fn complement_in(&self, bigger: &Subspace) -> Vec<Vec<Scalar>> {
        let mut current = self.clone();
        let mut added = Vec::new();
        for v in bigger.vectors() {
            if !current.contains(v) {
                added.push(v.to_vec());
                current = current
                    .sum(&Subspace::span(self.field(), self.ambient_dim(), &[v.to_vec()]).unwrap())
                    .unwrap();
            }
        }
        added
    }

    /// Enumeration order key: pivot columns, then row-major residues.
    pub fn enumeration_cmp(&self, other: &Subspace) -> Ordering {
        self.pivots.cmp(&other.pivots).then_with(|| {
            let a = self.basis.entries().iter().map(residue_key);
            let b = other.basis.entries().iter().map(residue_key);
            a.cmp(b)
        })
    }
}

fn residue_key(s: &Scalar) -> u64 {
    s.residue_value().unwrap_or(0)
}

/// Free functions mirroring the method forms.
pub fn subspace_sum(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.sum(v)
}

pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.intersect(v)
}

/// Gaussian binomial `[n choose d]_q`.
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> u128 {
    if d > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// All `d`-subsets of `0..n` in lexicographic order.
pub fn pivot_sets(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..d).collect();
    loop {
        out.push(cur.clone());
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - d + i {
                cur[i] += 1;
                for j in i + 1..d {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lazily enumerates every subspace with a fixed pivot-column set, in
/// lexicographic order of the free entries (last entry varying fastest).
#[derive(Clone, Debug)]
pub struct PivotStream {
    field: FieldSpec,
    n: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u64>,
    p: u64,
    done: bool,
}

impl PivotStream {
    pub fn new(field: FieldSpec, n: usize, pivots: Vec<usize>) -> Result<Self> {
        let p = field.modulus().ok_or(Error::RationalsUnsupported)?;
        let mut free = Vec::new();
        for (i, &c) in pivots.iter().enumerate() {
            for j in c + 1..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let counter = vec![0; free.len()];
        Ok(PivotStream {
            field,
            n,
            pivots,
            free,
            counter,
            p,
            done: false,
        })
    }

    /// Number of subspaces in this stream, `p^(free entries)`.
    pub fn len_hint(&self) -> u128 {
        (self.p as u128).pow(self.free.len() as u32)
    }

    fn current(&self) -> Subspace {
        let d = self.pivots.len();
        let mut m = Matrix::zeros(self.field, d, self.n);
        for (i, &c) in self.pivots.iter().enumerate() {
            m.set(i, c, self.field.one());
        }
        for (&(i, j), &v) in self.free.iter().zip(&self.counter) {
            m.set(i, j, self.field.residue(v));
        }
        Subspace {
            basis: m,
            pivots: self.pivots.clone(),
        }
    }
}

impl Iterator for PivotStream {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = self.current();
        let mut i = self.counter.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.counter[i] += 1;
            if self.counter[i] < self.p {
                break;
            }
            self.counter[i] = 0;
        }
        Some(out)
    }
}

/// Every `dim`-dimensional subspace of `GF(p)^ambient_dim`, each exactly once,
/// ordered by pivot-column set and then by free entries.
pub fn enumerate_subspaces(
    ambient_dim: usize,
    dim: usize,
    field: FieldSpec,
) -> Result<impl Iterator<Item = Subspace>> {
    if !field.is_prime_field() {
        return Err(Error::RationalsUnsupported);
    }
    let streams: Vec<PivotStream> = pivot_sets(ambient_dim, dim)
        .into_iter()
        .map(|ps| PivotStream::new(field, ambient_dim, ps))
        .collect::<Result<_>>()?;
    Ok(streams.into_iter().flatten())
}

/// All vectors of `GF(p)^n` in lexicographic order.
pub fn all_vectors(field: FieldSpec, n: usize) -> Result<impl Iterator<Item = Vec<Scalar>>> {
    let p = field.modulus().ok_or(Error::RationalsUnsupported)?;
    let total = (p as u128).pow(n as u32);
    Ok((0..total).map(move |mut idx| {
        let mut v = vec![field.zero(); n];
        for slot in v.iter_mut().rev() {
            *slot = field.residue((idx % p as u128) as u64);
            idx /= p as u128;
        }
        v
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn sum_and_intersection_of_coordinate_planes() {
        let x = Subspace::coordinate(q(), 3, &[0]);
        let y = Subspace::coordinate(q(), 3, &[1]);
        assert_eq!(x.sum(&y).unwrap(), Subspace::coordinate(q(), 3, &[0, 1]));
        let xy = Subspace::coordinate(q(), 3, &[0, 1]);
        let yz = Subspace::coordinate(q(), 3, &[1, 2]);
        assert_eq!(xy.intersect(&yz).unwrap(), y);
    }

    #[test]
    fn idempotent_sum_and_zero() {
        let u = Subspace::span(q(), 3, &[q().vector_from_i64(&[1, 2, 3])]).unwrap();
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.sum(&Subspace::zero(q(), 3)).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn distinct_lines_meet_in_zero() {
        let a = Subspace::span(q(), 2, &[q().vector_from_i64(&[1, 1])]).unwrap();
        let b = Subspace::span(q(), 2, &[q().vector_from_i64(&[1, -1])]).unwrap();
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(q(), 2);
        let b = Subspace::zero(q(), 3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn lines_in_gf2_plane() {
        let lines: Vec<_> = enumerate_subspaces(2, 1, FieldSpec::gf(2)).unwrap().collect();
        assert_eq!(lines.len(), 3);
        let f = FieldSpec::gf(2);
        let expected: Vec<Subspace> = [[1, 0], [1, 1], [0, 1]]
            .iter()
            .map(|v| Subspace::span(f, 2, &[f.vector_from_i64(v)]).unwrap())
            .collect();
        assert_eq!(lines, expected);
    }

    #[test]
    fn planes_in_gf3_4space() {
        // (3^4-1)(3^4-3)/((3^2-1)(3^2-3)) = 130
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(enumerate_subspaces(4, 2, FieldSpec::gf(3)).unwrap().count(), 130);
    }

    #[test]
    fn zero_dimensional_enumeration() {
        let all: Vec<_> = enumerate_subspaces(3, 0, FieldSpec::gf(5)).unwrap().collect();
        assert_eq!(all, vec![Subspace::zero(FieldSpec::gf(5), 3)]);
    }

    #[test]
    fn rationals_cannot_be_enumerated() {
        assert!(enumerate_subspaces(2, 1, q()).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let f = FieldSpec::gf(5);
        let u = Subspace::span(f, 3, &[f.vector_from_i64(&[1, 2, 0]), f.vector_from_i64(&[0, 1, 4])])
            .unwrap();
        let v = f.vector_from_i64(&[2, 1, 3]);
        let c = u.coordinates(&v).unwrap();
        assert_eq!(u.combine(&c), v);
        assert!(u.coordinates(&f.vector_from_i64(&[0, 0, 1])).is_none());
    }
}
