//! Series, Fitting splits, nilradical and the left-annihilator bound.

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::field::{dot, Scalar};
use crate::matrix::Matrix;
use crate::subspace::{enumerate_subspaces, Subspace};

/// Derived and lower central chains, each stored until it stabilizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    /// `L^(0) = L`, `L^(k+1) = [L^(k), L^(k)]`
    pub derived_chain: Vec<Subspace>,
    /// `L^1 = L`, `L^(k+1) = [L, L^k]`
    pub lower_central_chain: Vec<Subspace>,
    pub solvable: bool,
    pub nilpotent: bool,
    /// least `k` with `L^(k) = 0`
    pub derived_length: Option<usize>,
}

impl SeriesReport {
    pub fn derived_dims(&self) -> Vec<usize> {
        self.derived_chain.iter().map(Subspace::dim).collect()
    }

    pub fn lower_central_dims(&self) -> Vec<usize> {
        self.lower_central_chain.iter().map(Subspace::dim).collect()
    }

    /// `L^(k)` (zero past the end of a terminating chain).
    pub fn derived(&self, k: usize) -> &Subspace {
        let last = self.derived_chain.len() - 1;
        &self.derived_chain[k.min(last)]
    }
}

fn chain(start: Subspace, mut step: impl FnMut(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut out = vec![start];
    loop {
        let next = step(out.last().expect("non-empty"));
        if next == *out.last().expect("non-empty") {
            return out;
        }
        out.push(next);
    }
}

/// Derived and lower central series of a Leibniz algebra.
pub fn series(l: &AlgebraTable) -> Result<SeriesReport> {
    l.require_leibniz()?;
    Ok(series_of(l, &l.full()))
}

/// Series of a subalgebra `s`, computed inside `l`.
pub(crate) fn series_of(l: &AlgebraTable, s: &Subspace) -> SeriesReport {
    let derived_chain = chain(s.clone(), |u| l.product_span(u, u));
    let lower_central_chain = chain(s.clone(), |u| l.product_span(s, u));
    let solvable = derived_chain.last().is_some_and(Subspace::is_zero);
    let nilpotent = lower_central_chain.last().is_some_and(Subspace::is_zero);
    let derived_length = solvable.then(|| derived_chain.len() - 1);
    SeriesReport {
        derived_chain,
        lower_central_chain,
        solvable,
        nilpotent,
        derived_length,
    }
}

/// Whether the subalgebra `s` is nilpotent (its own lower central series dies).
pub fn is_nilpotent_subalgebra(l: &AlgebraTable, s: &Subspace) -> bool {
    let mut u = s.clone();
    loop {
        let next = l.product_span(s, &u);
        if next.is_zero() {
            return true;
        }
        if next == u {
            return false;
        }
        u = next;
    }
}

/// Whether every `L_x` is nilpotent. Over GF(p) with `exhaustive`, every
/// vector `x` is tried; otherwise only the basis vectors.
pub fn left_multiplications_nilpotent(l: &AlgebraTable, exhaustive: bool) -> Result<bool> {
    let n = l.dim();
    let f = l.field();
    let op = |x: &[Scalar]| -> Result<bool> {
        Ok(l
            .mult_operator(x, crate::algebra::Side::Left)?
            .matrix
            .is_nilpotent())
    };
    if exhaustive {
        for x in crate::subspace::all_vectors(f, n)? {
            if !op(&x)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for i in 0..n {
        if !op(&f.unit_vector(n, i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `L = L0 ⊕ L1` relative to the commuting family `{L_a : a ∈ A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingSplit {
    pub l0: Subspace,
    pub l1: Subspace,
}

/// `{v : [a, v] ∈ k for every basis vector a of A}`.
fn left_preimage(l: &AlgebraTable, a: &Subspace, k: &Subspace) -> Subspace {
    let ann = k.annihilator();
    let n = l.dim();
    let f = l.field();
    let columns: Vec<Vec<Scalar>> = (0..n)
        .map(|j| {
            let ej = f.unit_vector(n, j);
            let mut img = Vec::new();
            for av in a.vectors() {
                let w = l.br(av, &ej);
                img.extend(ann.vectors().map(|g| dot(f, g, &w)));
            }
            img
        })
        .collect();
    let rows = columns.first().map_or(0, Vec::len);
    if rows == 0 {
        return Subspace::full(f, n);
    }
    let m = Matrix::from_columns(f, rows, &columns).expect("uniform");
    Subspace::from_matrix(&m.kernel_basis())
}

/// Fitting decomposition of `L` relative to `{L_a : a ∈ A}` for an abelian
/// subalgebra `A`. `L1` is the stable image of `U ↦ [A, U]`, `L0` the stable
/// limit of ascending kernels.
pub fn fitting_decomposition(l: &AlgebraTable, a: &Subspace) -> Result<FittingSplit> {
    l.require_leibniz()?;
    if !l.is_abelian_subspace(a)? {
        return Err(Error::NotAbelian);
    }
    let mut u = l.full();
    loop {
        let next = l.product_span(a, &u);
        if next == u {
            break;
        }
        u = next;
    }
    let l1 = u;
    let mut k = l.zero_subspace();
    loop {
        let next = left_preimage(l, a, &k);
        if next == k {
            break;
        }
        k = next;
    }
    let l0 = k;
    if !l0.intersect(&l1)?.is_zero() || l0.sum(&l1)? != l.full() {
        return Err(Error::Inconsistency(format!(
            "Fitting components are not complementary (dims {} and {})",
            l0.dim(),
            l1.dim()
        )));
    }
    if l.product_span(a, &l1) != l1 {
        return Err(Error::Inconsistency("[A, L1] != L1".into()));
    }
    Ok(FittingSplit { l0, l1 })
}

/// Whether each `L_a` (a in `A`'s basis) restricted to `L0` is nilpotent.
pub fn acts_nilpotently_on(l: &AlgebraTable, a: &Subspace, l0: &Subspace) -> Result<bool> {
    for av in a.vectors() {
        // iterate the action on L0 at most dim L0 times
        let mut u = l0.clone();
        for _ in 0..=l0.dim() {
            if u.is_zero() {
                break;
            }
            let img: Vec<Vec<Scalar>> = u.vectors().map(|v| l.br(av, v)).collect();
            u = Subspace::span(l.field(), l.dim(), &img)?;
        }
        if !u.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nilradical by exhaustive ideal scan over GF(p).
///
/// Dimensions are scanned from the top; the first dimension containing a
/// nilpotent ideal yields the nilradical (the sum of two nilpotent ideals is
/// nilpotent, so the largest one contains every other).
pub fn nilradical(l: &AlgebraTable) -> Result<Subspace> {
    l.require_leibniz()?;
    if !l.field().is_prime_field() {
        return Err(Error::RationalsUnsupported);
    }
    for d in (0..=l.dim()).rev() {
        let found = nilpotent_ideals_of_dim(l, d)?;
        if found.is_empty() {
            continue;
        }
        let mut sum = l.zero_subspace();
        for s in &found {
            sum = sum.sum(s)?;
        }
        if sum.dim() != d || !is_nilpotent_subalgebra(l, &sum) || !l.is_ideal(&sum)? {
            return Err(Error::Inconsistency(format!(
                "{} nilpotent ideals of dimension {d} do not coincide",
                found.len()
            )));
        }
        return Ok(sum);
    }
    Ok(l.zero_subspace())
}

/// The sum of every nilpotent ideal, over all dimensions. Slower; used to
/// cross-check [`nilradical`].
pub fn nilradical_full_scan(l: &AlgebraTable) -> Result<Subspace> {
    l.require_leibniz()?;
    if !l.field().is_prime_field() {
        return Err(Error::RationalsUnsupported);
    }
    let mut sum = l.zero_subspace();
    for d in 0..=l.dim() {
        for s in nilpotent_ideals_of_dim(l, d)? {
            sum = sum.sum(&s)?;
        }
    }
    if !is_nilpotent_subalgebra(l, &sum) {
        return Err(Error::Inconsistency("sum of nilpotent ideals is not nilpotent".into()));
    }
    Ok(sum)
}

fn nilpotent_ideals_of_dim(l: &AlgebraTable, d: usize) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for s in enumerate_subspaces(l.dim(), d, l.field())? {
        if l.is_ideal(&s)? && is_nilpotent_subalgebra(l, &s) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Partial certificate that `n` is the nilradical: a nilpotent two-sided ideal
/// such that, for every basis vector `e_i ∉ n`, the ideal generated by
/// `n + 𝔽e_i` is not nilpotent.
pub fn verify_nilradical_candidate(l: &AlgebraTable, n: &Subspace) -> Result<bool> {
    if !l.is_ideal(n)? || !is_nilpotent_subalgebra(l, n) {
        return Ok(false);
    }
    let f = l.field();
    for i in 0..l.dim() {
        let ei = f.unit_vector(l.dim(), i);
        if n.contains(&ei) {
            continue;
        }
        let grown = l.generated_ideal(&n.sum(&Subspace::span(f, l.dim(), &[ei])?)?)?;
        if is_nilpotent_subalgebra(l, &grown) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the left-annihilator dimension bound for one subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnnihilatorBound {
    pub holds: bool,
    /// `dim Ann_ℓ(L)`
    pub lhs: usize,
    /// `n − m − (⌊m²/4⌋ + 1)`, possibly negative
    pub rhs: i64,
}

/// `dim Ann_ℓ(L) ≥ n − m − (⌊m²/4⌋ + 1)` with `m = codim A`.
///
/// `A` must be an abelian subalgebra of codimension at least two; over GF(p)
/// its maximality as a subalgebra is checked here, over ℚ it is the caller's
/// responsibility, as is maximality of `dim A` among abelian subalgebras.
///
/// Codimension one is rejected: the splitting `L = A ⊕ L1` with `[A, L1] = L1`
/// behind the bound needs `m > 1`, and the bound fails there (the 4-dim
/// filiform algebra has `dim Ann_ℓ = 1 < 2`).
pub fn check_annihilator_bound(l: &AlgebraTable, a: &Subspace) -> Result<AnnihilatorBound> {
    l.require_leibniz()?;
    if !l.is_abelian_subspace(a)? {
        return Err(Error::NotAbelian);
    }
    let n = l.dim() as i64;
    let m = a.codim() as i64;
    if m < 2 || m == n {
        return Err(Error::Precondition(format!(
            "codimension {m} is outside 2..{n} for dimension {n}"
        )));
    }
    if l.field().is_prime_field() && !crate::search::is_maximal_subalgebra(l, a)?.maximal {
        return Err(Error::Precondition("A is not a maximal subalgebra".into()));
    }
    let lhs = l.left_annihilator().dim();
    let rhs = n - m - (m * m / 4 + 1);
    Ok(AnnihilatorBound {
        holds: lhs as i64 >= rhs,
        lhs,
        rhs,
    })
}
