//! Exhaustive searches over GF(p): α, β, maximality, abelian ideal lists and
//! isomorphism testing.
//!
//! Subspace scans are split by pivot-column set across worker threads. Every
//! reported witness is the first hit in canonical enumeration order, so
//! results do not depend on the thread count.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::algebra::{AlgebraTable, Side};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{solve_combination, Matrix};
use crate::subspace::{all_vectors, pivot_sets, PivotStream, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Cap on subspaces visited by one scan.
    pub max_subspaces: u64,
    /// Cap on backtracking nodes in [`iso_search`].
    pub max_nodes: u64,
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get().min(8));
        SearchConfig {
            max_subspaces: 50_000_000,
            max_nodes: 2_000_000,
            threads,
        }
    }
}

impl SearchConfig {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchResult {
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub alpha_witness: Option<Subspace>,
    pub beta_witness: Option<Subspace>,
    pub exhaustive: bool,
    pub visited: u64,
}

fn require_prime(l: &AlgebraTable) -> Result<()> {
    if l.field().is_prime_field() {
        Ok(())
    } else {
        Err(Error::RationalsUnsupported)
    }
}

struct Scan<'a> {
    cfg: &'a SearchConfig,
    visited: AtomicU64,
    over_budget: AtomicBool,
}

impl<'a> Scan<'a> {
    fn new(cfg: &'a SearchConfig) -> Self {
        Scan {
            cfg,
            visited: AtomicU64::new(0),
            over_budget: AtomicBool::new(false),
        }
    }

    fn tick(&self) -> bool {
        let v = self.visited.fetch_add(1, Ordering::Relaxed) + 1;
        if v > self.cfg.max_subspaces {
            self.over_budget.store(true, Ordering::Relaxed);
            return false;
        }
        !self.over_budget.load(Ordering::Relaxed)
    }

    fn finish<T>(&self, value: T) -> Result<T> {
        if self.over_budget.load(Ordering::Relaxed) {
            Err(Error::BudgetExceeded(self.cfg.max_subspaces))
        } else {
            Ok(value)
        }
    }

    /// Hits among the `d`-dimensional subspaces, grouped by pivot set in
    /// canonical order. With `first_only`, each pivot set contributes at most
    /// one hit and pivot sets after the earliest hit are skipped.
    fn run<P>(&self, field: FieldSpec, n: usize, d: usize, first_only: bool, pred: P) -> Vec<Subspace>
    where
        P: Fn(&Subspace) -> bool + Sync,
    {
        let sets = pivot_sets(n, d);
        let results: Mutex<Vec<(usize, Vec<Subspace>)>> = Mutex::new(Vec::new());
        let best = AtomicUsize::new(usize::MAX);
        let next = AtomicUsize::new(0);
        let threads = self.cfg.threads.clamp(1, sets.len().max(1));
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= sets.len() || (first_only && idx > best.load(Ordering::Relaxed)) {
                        break;
                    }
                    let stream = PivotStream::new(field, n, sets[idx].clone()).expect("prime field");
                    let mut hits = Vec::new();
                    for s in stream {
                        if !self.tick() {
                            break;
                        }
                        if pred(&s) {
                            hits.push(s);
                            if first_only {
                                best.fetch_min(idx, Ordering::Relaxed);
                                break;
                            }
                        }
                    }
                    if !hits.is_empty() {
                        results.lock().expect("no poisoned workers").push((idx, hits));
                    }
                });
            }
        });
        let mut all = results.into_inner().expect("no poisoned workers");
        all.sort_by_key(|(idx, _)| *idx);
        if first_only {
            all.truncate(1);
        }
        all.into_iter().flat_map(|(_, hits)| hits).collect()
    }
}

fn abelian_pred(l: &AlgebraTable) -> impl Fn(&Subspace) -> bool + Sync + '_ {
    move |s| l.is_abelian_subspace(s).unwrap_or(false)
}

fn abelian_ideal_pred(l: &AlgebraTable) -> impl Fn(&Subspace) -> bool + Sync + '_ {
    move |s| l.is_abelian_subspace(s).unwrap_or(false) && l.is_ideal(s).unwrap_or(false)
}

fn max_dim_scan<P>(l: &AlgebraTable, cfg: &SearchConfig, pred: P) -> Result<(usize, Subspace, u64)>
where
    P: Fn(&Subspace) -> bool + Sync,
{
    require_prime(l)?;
    let scan = Scan::new(cfg);
    for d in (0..=l.dim()).rev() {
        let hits = scan.run(l.field(), l.dim(), d, true, &pred);
        if scan.over_budget.load(Ordering::Relaxed) {
            break;
        }
        if let Some(w) = hits.into_iter().next() {
            let visited = scan.visited.load(Ordering::Relaxed);
            return Ok((d, w, visited));
        }
    }
    scan.finish(())?;
    Err(Error::Inconsistency("the zero subspace failed the predicate".into()))
}

/// `α(L)`: largest dimension of an abelian subalgebra, with the first witness
/// in enumeration order.
pub fn alpha(l: &AlgebraTable, cfg: &SearchConfig) -> Result<SearchResult> {
    let (d, w, visited) = max_dim_scan(l, cfg, abelian_pred(l))?;
    Ok(SearchResult {
        alpha: Some(d),
        alpha_witness: Some(w),
        exhaustive: true,
        visited,
        ..SearchResult::default()
    })
}

/// `β(L)`: largest dimension of an abelian ideal, with witness.
pub fn beta(l: &AlgebraTable, cfg: &SearchConfig) -> Result<SearchResult> {
    let (d, w, visited) = max_dim_scan(l, cfg, abelian_ideal_pred(l))?;
    Ok(SearchResult {
        beta: Some(d),
        beta_witness: Some(w),
        exhaustive: true,
        visited,
        ..SearchResult::default()
    })
}

/// Both α and β in one result.
pub fn alpha_beta(l: &AlgebraTable, cfg: &SearchConfig) -> Result<SearchResult> {
    let a = alpha(l, cfg)?;
    let b = beta(l, cfg)?;
    if b.beta > a.alpha {
        return Err(Error::Inconsistency("beta exceeds alpha".into()));
    }
    Ok(SearchResult {
        alpha: a.alpha,
        alpha_witness: a.alpha_witness,
        beta: b.beta,
        beta_witness: b.beta_witness,
        exhaustive: true,
        visited: a.visited + b.visited,
    })
}

/// Every abelian ideal of dimension `d`, in canonical order.
pub fn all_abelian_ideals(l: &AlgebraTable, d: usize, cfg: &SearchConfig) -> Result<Vec<Subspace>> {
    require_prime(l)?;
    let scan = Scan::new(cfg);
    let hits = scan.run(l.field(), l.dim(), d, false, abelian_ideal_pred(l));
    scan.finish(hits)
}

/// First abelian ideal of dimension `d` in canonical order, if any.
pub fn first_abelian_ideal(
    l: &AlgebraTable,
    d: usize,
    cfg: &SearchConfig,
) -> Result<Option<Subspace>> {
    require_prime(l)?;
    let scan = Scan::new(cfg);
    let hits = scan.run(l.field(), l.dim(), d, true, abelian_ideal_pred(l));
    scan.finish(hits.into_iter().next())
}

/// Every abelian subalgebra of dimension `d`, in canonical order.
pub fn all_abelian_subalgebras(
    l: &AlgebraTable,
    d: usize,
    cfg: &SearchConfig,
) -> Result<Vec<Subspace>> {
    require_prime(l)?;
    let scan = Scan::new(cfg);
    let hits = scan.run(l.field(), l.dim(), d, false, abelian_pred(l));
    scan.finish(hits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Maximality {
    pub maximal: bool,
    /// `A = L`: no extension exists, maximality holds vacuously.
    pub degenerate: bool,
    /// A proper subalgebra strictly containing `A`, when one exists.
    pub extension: Option<Subspace>,
}

/// One nonzero representative per line of `GF(p)^r` (first nonzero entry 1).
fn projective_points(field: FieldSpec, r: usize) -> Result<Vec<Vec<Scalar>>> {
    let mut out = Vec::new();
    for lead in 0..r {
        for tail in all_vectors(field, r - lead - 1)? {
            let mut v = field.zero_vector(lead);
            v.push(field.one());
            v.extend(tail);
            out.push(v);
        }
    }
    Ok(out)
}

/// Whether the subalgebra `A` is maximal: `⟨A, v⟩ = L` for one representative
/// `v` of every direction outside `A`.
pub fn is_maximal_subalgebra(l: &AlgebraTable, a: &Subspace) -> Result<Maximality> {
    require_prime(l)?;
    if !l.is_subalgebra(a)? {
        return Err(Error::NotSubalgebra);
    }
    if a.is_full() {
        return Ok(Maximality {
            maximal: true,
            degenerate: true,
            extension: None,
        });
    }
    let f = l.field();
    let comp = a.complement_indices();
    for point in projective_points(f, comp.len())? {
        let mut v = f.zero_vector(l.dim());
        for (&c, x) in comp.iter().zip(point) {
            v[c] = x;
        }
        let grown = l.generated_subalgebra(&a.sum(&Subspace::span(f, l.dim(), &[v])?)?)?;
        if !grown.is_full() {
            return Ok(Maximality {
                maximal: false,
                degenerate: false,
                extension: Some(grown),
            });
        }
    }
    Ok(Maximality {
        maximal: true,
        degenerate: false,
        extension: None,
    })
}

/// Subspaces preserved by every isomorphism, in a fixed order.
pub fn characteristic_subspaces(l: &AlgebraTable) -> Vec<Subspace> {
    let s = crate::invariants::series_of(l, &l.full());
    let mut out = vec![
        l.center(),
        l.squares_span(),
        l.left_annihilator(),
        l.right_annihilator(),
    ];
    out.extend(s.derived_chain.iter().skip(1).cloned());
    out.extend(s.lower_central_chain.iter().skip(1).cloned());
    out
}

/// Isomorphism-invariant dimensions used to prune searches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantProfile {
    pub dim: usize,
    pub center: usize,
    pub squares: usize,
    pub left_annihilator: usize,
    pub right_annihilator: usize,
    pub derived: Vec<usize>,
    pub lower_central: Vec<usize>,
    pub leibniz: bool,
}

pub fn invariant_profile(l: &AlgebraTable) -> InvariantProfile {
    let s = crate::invariants::series_of(l, &l.full());
    InvariantProfile {
        dim: l.dim(),
        center: l.center().dim(),
        squares: l.squares_span().dim(),
        left_annihilator: l.left_annihilator().dim(),
        right_annihilator: l.right_annihilator().dim(),
        derived: s.derived_dims(),
        lower_central: s.lower_central_dims(),
        leibniz: l.is_leibniz(),
    }
}

/// Per-vector invariants: ranks of `L_v`, `R_v`, `L_v²`, whether `[v,v] = 0`,
/// and membership in each characteristic subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct VectorProfile {
    left_rank: usize,
    right_rank: usize,
    left_sq_rank: usize,
    square_zero: bool,
    membership: Vec<bool>,
}

fn vector_profile(l: &AlgebraTable, chars: &[Subspace], v: &[Scalar]) -> VectorProfile {
    let lv = l.mult_operator(v, Side::Left).expect("valid vector").matrix;
    let rv = l.mult_operator(v, Side::Right).expect("valid vector").matrix;
    VectorProfile {
        left_rank: lv.rank(),
        right_rank: rv.rank(),
        left_sq_rank: lv.mul(&lv).expect("square").rank(),
        square_zero: crate::field::is_zero_vector(&l.br(v, v)),
        membership: chars.iter().map(|c| c.contains(v)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoResult {
    pub isomorphic: bool,
    /// Rows are the images in `L2` of the basis of `L1`, so
    /// `L2.change_of_basis(map) == L1`.
    pub map: Option<Matrix>,
}

/// Partial isomorphism: its graph inside `L1 ⊕ L2` plus the spanning list of
/// `L1`-vectors whose brackets have been processed.
#[derive(Clone)]
struct Partial {
    graph: Subspace,
    src: Subspace,
    dst: Subspace,
    pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

impl Partial {
    fn new(field: FieldSpec, n: usize) -> Self {
        Partial {
            graph: Subspace::zero(field, 2 * n),
            src: Subspace::zero(field, n),
            dst: Subspace::zero(field, n),
            pairs: Vec::new(),
        }
    }

    /// Records `u ↦ w`. `Ok(false)` on a contradiction.
    fn absorb(&mut self, u: Vec<Scalar>, w: Vec<Scalar>) -> Result<bool> {
        let f = self.src.field();
        let n = self.src.ambient_dim();
        let mut joined = u.clone();
        joined.extend_from_slice(&w);
        let grown = self.graph.sum(&Subspace::span(f, 2 * n, &[joined])?)?;
        if grown.dim() == self.graph.dim() {
            return Ok(true);
        }
        if self.src.contains(&u) || self.dst.contains(&w) {
            return Ok(false);
        }
        self.graph = grown;
        self.src = self.src.sum(&Subspace::span(f, n, std::slice::from_ref(&u))?)?;
        self.dst = self.dst.sum(&Subspace::span(f, n, std::slice::from_ref(&w))?)?;
        self.pairs.push((u, w));
        Ok(true)
    }

    /// Adds `g ↦ h` and closes under brackets, checking consistency.
    fn extend(&self, l1: &AlgebraTable, l2: &AlgebraTable, g: &[Scalar], h: &[Scalar]) -> Result<Option<Partial>> {
        let mut p = self.clone();
        let start = p.pairs.len();
        if !p.absorb(g.to_vec(), h.to_vec())? || p.pairs.len() == start {
            return Ok(None);
        }
        let mut k = start;
        while k < p.pairs.len() {
            for j in 0..=k {
                let (uk, wk) = p.pairs[k].clone();
                let (uj, wj) = p.pairs[j].clone();
                if !p.absorb(l1.br(&uk, &uj), l2.br(&wk, &wj))?
                    || !p.absorb(l1.br(&uj, &uk), l2.br(&wj, &wk))?
                {
                    return Ok(None);
                }
            }
            k += 1;
        }
        Ok(Some(p))
    }

    /// Rows `f(e_j)` once the graph is total.
    fn to_map(&self) -> Matrix {
        let n = self.src.ambient_dim();
        self.graph.basis().block(0, n, n, 2 * n)
    }
}

/// Backtracking isomorphism search over GF(p).
///
/// Images are chosen for a greedy generating set of `L1` only; every other
/// image follows by closing under brackets, which also checks consistency.
/// Candidates are pruned by per-vector invariants. Exceeding the node budget
/// is reported as `BudgetExceeded`, never as a negative answer.
pub fn iso_search(l1: &AlgebraTable, l2: &AlgebraTable, cfg: &SearchConfig) -> Result<IsoResult> {
    if l1.field() != l2.field() {
        return Err(Error::FieldMismatch(l1.field().to_string(), l2.field().to_string()));
    }
    require_prime(l1)?;
    let negative = IsoResult {
        isomorphic: false,
        map: None,
    };
    if l1.dim() != l2.dim() || invariant_profile(l1) != invariant_profile(l2) {
        return Ok(negative);
    }
    let n = l1.dim();
    let f = l1.field();
    if l1 == l2 {
        return Ok(IsoResult {
            isomorphic: true,
            map: Some(Matrix::identity(f, n)),
        });
    }
    let mut gens = Vec::new();
    let mut span = Subspace::zero(f, n);
    for i in 0..n {
        let e = f.unit_vector(n, i);
        if !span.contains(&e) {
            span = l1.generated_subalgebra(&span.sum(&Subspace::span(f, n, std::slice::from_ref(&e))?)?)?;
            gens.push(e);
        }
    }
    let chars1 = characteristic_subspaces(l1);
    let chars2 = characteristic_subspaces(l2);
    let pool: Vec<(VectorProfile, Vec<Scalar>)> = all_vectors(f, n)?
        .skip(1)
        .map(|v| (vector_profile(l2, &chars2, &v), v))
        .collect();
    let candidates: Vec<Vec<&Vec<Scalar>>> = gens
        .iter()
        .map(|g| {
            let want = vector_profile(l1, &chars1, g);
            pool.iter().filter(|(p, _)| *p == want).map(|(_, v)| v).collect()
        })
        .collect();
    let mut nodes = 0u64;
    let found = backtrack(l1, l2, &gens, &candidates, Partial::new(f, n), &mut nodes, cfg)?;
    Ok(match found {
        Some(map) => IsoResult {
            isomorphic: true,
            map: Some(map),
        },
        None => negative,
    })
}

fn backtrack(
    l1: &AlgebraTable,
    l2: &AlgebraTable,
    gens: &[Vec<Scalar>],
    candidates: &[Vec<&Vec<Scalar>>],
    partial: Partial,
    nodes: &mut u64,
    cfg: &SearchConfig,
) -> Result<Option<Matrix>> {
    let depth = gens.len() - candidates.len();
    let Some((mine, rest)) = candidates.split_first() else {
        if !partial.src.is_full() {
            return Ok(None);
        }
        let map = partial.to_map();
        return Ok((l2.change_of_basis(&map).ok().as_ref() == Some(l1)).then_some(map));
    };
    let g = &gens[depth];
    for h in mine {
        *nodes += 1;
        if *nodes > cfg.max_nodes {
            return Err(Error::BudgetExceeded(cfg.max_nodes));
        }
        if let Some(next) = partial.extend(l1, l2, g, h)? {
            if let Some(map) = backtrack(l1, l2, gens, rest, next, nodes, cfg)? {
                return Ok(Some(map));
            }
        }
    }
    Ok(None)
}

/// Explicit map behind `span(λ, μ) = span(λ', μ') ⇒ 𝔞(λ, μ) ≅ 𝔞(λ', μ')`.
///
/// Finds invertible `α` with `λ' = α11 λ + α12 μ`, `μ' = α21 λ + α22 μ` and
/// returns `P = diag(α, I₂)`, so the raw `𝔞(λ, μ)` table in basis `P` is the
/// raw `𝔞(λ', μ')` table. `None` when the spans differ.
pub fn span_equivalent_iso(
    lambda: &Matrix,
    mu: &Matrix,
    lambda2: &Matrix,
    mu2: &Matrix,
) -> Result<Option<Matrix>> {
    let f = lambda.field();
    for m in [mu, lambda2, mu2] {
        if m.field() != f {
            return Err(Error::FieldMismatch(m.field().to_string(), f.to_string()));
        }
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Shape("parameters must be 2x2".into()));
        }
    }
    let vecs = |a: &Matrix, b: &Matrix| vec![a.entries().to_vec(), b.entries().to_vec()];
    let v = vecs(lambda, mu);
    let v2 = vecs(lambda2, mu2);
    let span = Subspace::span(f, 4, &v)?;
    if span != Subspace::span(f, 4, &v2)? {
        return Ok(None);
    }
    let alpha = match span.dim() {
        0 => Matrix::identity(f, 2),
        2 => {
            let r0 = solve_combination(f, &v, &v2[0]).expect("same span");
            let r1 = solve_combination(f, &v, &v2[1]).expect("same span");
            Matrix::from_rows(f, 2, vec![r0, r1])?
        }
        _ => {
            // λ = s ν, μ = t ν and λ' = s' ν, μ' = t' ν for a generator ν
            let nu = span.vectors().next().expect("dim 1").to_vec();
            let coeff = |x: &Vec<Scalar>| solve_combination(f, std::slice::from_ref(&nu), x).expect("in span")[0].clone();
            let u = vec![coeff(&v[0]), coeff(&v[1])];
            let u2 = vec![coeff(&v2[0]), coeff(&v2[1])];
            let complete = |u: &[Scalar]| {
                let w = if u[0].is_zero() { f.unit_vector(2, 0) } else { f.unit_vector(2, 1) };
                Matrix::from_columns(f, 2, &[u.to_vec(), w]).expect("2x2")
            };
            complete(&u2).mul(&complete(&u).inverse()?)?
        }
    };
    let mut p = Matrix::identity(f, 4);
    for i in 0..2 {
        for j in 0..2 {
            p.set(i, j, alpha.get(i, j).clone());
        }
    }
    let src = crate::families::a_table_raw(lambda, mu, f)?;
    let dst = crate::families::a_table_raw(lambda2, mu2, f)?;
    if src.change_of_basis(&p)? != dst {
        return Err(Error::Inconsistency("span-equivalence map failed to verify".into()));
    }
    Ok(Some(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn gf3() -> FieldSpec {
        FieldSpec::gf(3)
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn irr(f: FieldSpec) -> Matrix {
        Matrix::from_i64(f, 2, 2, &[0, 1, 2, 0]).unwrap()
    }

    #[test]
    fn alpha_of_abelian_is_full() {
        let r = alpha(&abelian(3, gf3()), &cfg()).unwrap();
        assert_eq!(r.alpha, Some(3));
        assert!(r.exhaustive);
    }

    #[test]
    fn oscillator_alpha_beta() {
        let os = oscillator(gf3());
        let r = alpha_beta(&os, &cfg()).unwrap();
        assert_eq!((r.alpha, r.beta), (Some(2), Some(1)));
        assert_eq!(r.beta_witness.unwrap(), Subspace::coordinate(gf3(), 4, &[1]));
        let w = r.alpha_witness.unwrap();
        assert!(os.is_abelian_subspace(&w).unwrap() && os.is_subalgebra(&w).unwrap());
    }

    #[test]
    fn heisenberg_alpha() {
        let r = alpha(&heisenberg(gf3()), &cfg()).unwrap();
        assert_eq!(r.alpha, Some(2));
    }

    #[test]
    fn rationals_rejected() {
        let q = FieldSpec::Rationals;
        assert_eq!(alpha(&heisenberg(q), &cfg()), Err(Error::RationalsUnsupported));
    }

    #[test]
    fn tiny_budget_is_reported() {
        let c = SearchConfig {
            max_subspaces: 5,
            ..cfg()
        };
        assert!(matches!(alpha(&oscillator(gf3()), &c), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn thread_count_does_not_change_witness() {
        let os = oscillator(gf3());
        let one = alpha_beta(&os, &cfg().with_threads(1)).unwrap();
        let many = alpha_beta(&os, &cfg().with_threads(4)).unwrap();
        assert_eq!(one.alpha_witness, many.alpha_witness);
        assert_eq!(one.beta_witness, many.beta_witness);
    }

    #[test]
    fn abelian_ideal_lists() {
        let f = gf3();
        assert_eq!(all_abelian_ideals(&abelian(2, f), 1, &cfg()).unwrap().len(), 4);
        let os = all_abelian_ideals(&oscillator(f), 1, &cfg()).unwrap();
        assert_eq!(os, vec![Subspace::coordinate(f, 4, &[1])]);
        let d = make_d(&irr(f), f).unwrap();
        assert!(all_abelian_ideals(&d, 1, &cfg()).unwrap().is_empty());
    }

    #[test]
    fn maximality_examples() {
        let f = gf3();
        let a = make_a(&Matrix::identity(f, 2), &irr(f), f).unwrap();
        let m = is_maximal_subalgebra(&a, &Subspace::coordinate(f, 4, &[0, 1])).unwrap();
        assert!(m.maximal && !m.degenerate);
        let full = is_maximal_subalgebra(&a, &a.full()).unwrap();
        assert!(full.maximal && full.degenerate);
        let ex = eigenline_extension(f);
        let r = is_maximal_subalgebra(&ex, &Subspace::coordinate(f, 4, &[1, 2])).unwrap();
        assert!(!r.maximal);
        assert!(ex.is_subalgebra(&r.extension.unwrap()).unwrap());
    }

    #[test]
    fn iso_self_and_negative() {
        let f = gf3();
        let h = heisenberg(f);
        let r = iso_search(&h, &h, &cfg()).unwrap();
        assert!(r.isomorphic);
        let neg = iso_search(&h, &abelian(3, f), &cfg()).unwrap();
        assert!(!neg.isomorphic && neg.map.is_none());
    }

    #[test]
    fn iso_finds_disguised_copy() {
        let f = gf3();
        let os = oscillator(f);
        let p = Matrix::from_i64(f, 4, 4, &[1, 1, 0, 0, 0, 1, 0, 2, 0, 0, 1, 0, 0, 0, 2, 1]).unwrap();
        let moved = os.change_of_basis(&p).unwrap();
        let r = iso_search(&moved, &os, &cfg()).unwrap();
        assert!(r.isomorphic);
        assert_eq!(os.change_of_basis(&r.map.unwrap()).unwrap(), moved);
    }

    #[test]
    fn iso_distinguishes_same_profile() {
        // d(m) with irreducible and with split m are both sl2-like over GF(3)
        let f = gf3();
        let d1 = make_d(&irr(f), f).unwrap();
        let d2 = make_d(&Matrix::from_i64(f, 2, 2, &[0, 1, 1, 0]).unwrap(), f).unwrap();
        let r = iso_search(&d1, &d2, &cfg()).unwrap();
        if let Some(m) = r.map {
            assert_eq!(d2.change_of_basis(&m).unwrap(), d1);
        }
    }

    #[test]
    fn span_equivalence_cases() {
        let f = gf3();
        let id = Matrix::identity(f, 2);
        let m = irr(f);
        assert_eq!(span_equivalent_iso(&id, &m, &id, &m).unwrap(), Some(Matrix::identity(f, 4)));
        let swap = span_equivalent_iso(&id, &m, &m, &id).unwrap().unwrap();
        let expected = Matrix::from_i64(f, 4, 4, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(swap, expected);
        let z = Matrix::zeros(f, 2, 2);
        assert_eq!(span_equivalent_iso(&id, &z, &m, &z).unwrap(), None);
        assert!(span_equivalent_iso(&z, &id, &id.scale(&f.from_i64(2)), &id).unwrap().is_some());
        assert!(span_equivalent_iso(&z, &z, &z, &z).unwrap().is_some());
    }
}
