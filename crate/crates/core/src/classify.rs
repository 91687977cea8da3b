//! Case analysis for Leibniz algebras of dimension `n` with `α(L) = n − 2`.
//!
//! The classifier matches invariant signatures rather than replaying proofs:
//!
//! * case 0 — an abelian ideal of codimension ≤ 2;
//! * case 1 — Lie, 3-step solvable, `L²` Heisenberg, `dim C(L) = n − 3`
//!   (`𝔠(m) ⊕ 𝔽^{n−4}`);
//! * case 2 — Lie, not solvable, `L/C(L)` simple of dimension 3
//!   (`𝔡(m) ⊕ 𝔽^{n−3}`);
//! * case 3 — solvable with `Nil(L) ≅ 𝔥 ⊕ 𝔽^{n−4}` of codimension one
//!   (`𝔢(φ, ϑ, v, n)`).
//!
//! Case 0 is tested first. Cases 1–3 take priority in that order; any further
//! matching signature is listed in `overlaps`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraTable, Side};
use crate::error::{Error, Result};
use crate::families::{self, heisenberg_plus, is_left_derivation, make_c, make_d, make_e};
use crate::field::{FieldSpec, Scalar};
use crate::invariants::{nilradical, series_of, verify_nilradical_candidate, SeriesReport};
use crate::matrix::{solve_combination, Matrix};
use crate::poly::{char_poly_2x2, QuadraticPoly};
use crate::search::{self, SearchConfig};
use crate::subspace::{all_vectors, enumerate_subspaces, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    AbelianIdealCodimLe2,
    Case1C,
    Case2D,
    Case3E,
    NotApplicable,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::AbelianIdealCodimLe2 => "AbelianIdealCodimLe2",
            Case::Case1C => "Case1_c",
            Case::Case2D => "Case2_d",
            Case::Case3E => "Case3_e",
            Case::NotApplicable => "NotApplicable",
        })
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "AbelianIdealCodimLe2" => Case::AbelianIdealCodimLe2,
            "Case1_c" => Case::Case1C,
            "Case2_d" => Case::Case2D,
            "Case3_e" => Case::Case3E,
            "NotApplicable" => Case::NotApplicable,
            other => return Err(Error::InvalidParameters(format!("unknown case '{other}'"))),
        })
    }
}

/// Cases 1 and 2: `L.change_of_basis(basis) == model`, where the model is
/// `𝔠(m) ⊕ 𝔽^{n−4}` or `𝔡(m) ⊕ 𝔽^{n−3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticWitness {
    pub m: Matrix,
    pub chi: QuadraticPoly,
    pub chi_irreducible: bool,
    pub basis: Matrix,
    pub model: AlgebraTable,
}

/// Case 3: parameters read off in the basis `(x, e1, ê1, e0, z..)` (rows of
/// `basis`), with `φ = L_x|B`, `ϑ = R_x|B`, `v = [x, x]` in `B` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub phi: Matrix,
    pub theta: Matrix,
    pub v: Vec<Scalar>,
    pub nilradical: Subspace,
    pub basis: Matrix,
    /// `φ` induced on `B/C(B)` in the basis `(e1, ê1)`.
    pub phi_star: Matrix,
    /// `ϑ` induced on `B/C(B)`, when `ϑ` preserves `C(B)`.
    pub theta_star: Option<Matrix>,
    pub chi: QuadraticPoly,
    pub chi_irreducible: bool,
    /// Whether `make_e(φ, ϑ, v, n)` equals `L` in `basis`.
    pub reconstructed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    AbelianIdeal(Subspace),
    Quadratic(QuadraticWitness),
    Extension(ExtensionWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub dim: usize,
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub is_lie: bool,
    pub solvable: bool,
    pub derived_length: Option<usize>,
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub squares_dim: usize,
    pub product_dim: usize,
    pub nilradical_dim: Option<usize>,
    /// Scale-normalized characteristic polynomial of the case's 2×2 action.
    pub chi: Option<QuadraticPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub case: Case,
    pub witness: Witness,
    pub diagnostics: Diagnostics,
    pub overlaps: Vec<Case>,
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    /// Abelian subalgebra of codimension two. Required over ℚ.
    pub witness: Option<Subspace>,
    /// Nilradical candidate, checked with `verify_nilradical_candidate`.
    pub nilradical: Option<Subspace>,
    pub search: SearchConfig,
}

/// Subspace `S` of `l` on which the bracket is skew.
fn is_skew_on(l: &AlgebraTable, s: &Subspace) -> bool {
    let basis: Vec<&[Scalar]> = s.vectors().collect();
    for (i, u) in basis.iter().enumerate() {
        if !crate::field::is_zero_vector(&l.br(u, u)) {
            return false;
        }
        for v in &basis[i + 1..] {
            let a = l.br(u, v);
            let b = l.br(v, u);
            if a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero()) {
                return false;
            }
        }
    }
    true
}

/// `C(B) = C_L(B) ∩ B` for a subalgebra `B`.
fn inner_center(l: &AlgebraTable, b: &Subspace) -> Result<Subspace> {
    l.centralizer(b)?.intersect(b)
}

/// Whether the subalgebra `B` is `𝔥 ⊕ 𝔽^k`: Lie, `[B,B]` one-dimensional and
/// central in `B`, and `C(B)` of codimension two in `B`.
pub fn is_heisenberg_plus_abelian(l: &AlgebraTable, b: &Subspace) -> Result<bool> {
    if b.dim() < 3 || !l.is_subalgebra(b)? || !is_skew_on(l, b) {
        return Ok(false);
    }
    let bb = l.product_span(b, b);
    let cb = inner_center(l, b)?;
    Ok(bb.dim() == 1 && cb.contains_subspace(&bb) && cb.dim() + 2 == b.dim())
}

/// `L/C(L)` is three-dimensional, Lie and has no nonzero proper ideal.
///
/// A three-dimensional perfect Lie algebra is simple; over GF(p) this is
/// cross-checked by scanning every 1- and 2-dimensional subspace.
fn quotient_by_center_is_simple(l: &AlgebraTable) -> Result<bool> {
    let (q, _) = l.quotient(&l.center())?;
    if q.dim() != 3 || !q.is_skew() {
        return Ok(false);
    }
    let perfect = q.product_span(&q.full(), &q.full()).is_full();
    if q.field().is_prime_field() {
        let mut has_ideal = false;
        for d in 1..=2 {
            for s in enumerate_subspaces(3, d, q.field())? {
                if q.is_ideal(&s)? {
                    has_ideal = true;
                }
            }
        }
        if has_ideal == perfect {
            return Err(Error::Inconsistency(
                "perfectness and ideal scan disagree on simplicity".into(),
            ));
        }
    }
    Ok(perfect)
}

struct Facts {
    series: SeriesReport,
    is_lie: bool,
    center: Subspace,
    squares: Subspace,
    product: Subspace,
    nil: Option<Subspace>,
}

fn gather(l: &AlgebraTable, opts: &ClassifyOptions) -> Result<Facts> {
    let series = series_of(l, &l.full());
    let product = series.derived(1).clone();
    let center = l.center();
    let nil = if l.field().is_prime_field() {
        Some(nilradical(l)?)
    } else {
        let mut candidates = Vec::new();
        if let Some(n) = &opts.nilradical {
            candidates.push(n.clone());
        }
        candidates.push(product.sum(&center)?);
        candidates.push(product.clone());
        let mut found = None;
        for c in candidates {
            if verify_nilradical_candidate(l, &c)? {
                found = Some(c);
                break;
            }
        }
        found
    };
    Ok(Facts {
        is_lie: l.is_lie()?,
        squares: l.squares_ideal()?,
        series,
        center,
        product,
        nil,
    })
}

fn diagnostics(l: &AlgebraTable, facts: &Facts, alpha: Option<usize>, beta: Option<usize>) -> Diagnostics {
    Diagnostics {
        dim: l.dim(),
        alpha,
        beta,
        is_lie: facts.is_lie,
        solvable: facts.series.solvable,
        derived_length: facts.series.derived_length,
        derived_dims: facts.series.derived_dims(),
        lower_central_dims: facts.series.lower_central_dims(),
        center_dim: facts.center.dim(),
        squares_dim: facts.squares.dim(),
        product_dim: facts.product.dim(),
        nilradical_dim: facts.nil.as_ref().map(Subspace::dim),
        chi: None,
    }
}

fn signature(l: &AlgebraTable, facts: &Facts, case: Case) -> Result<bool> {
    let n = l.dim();
    Ok(match case {
        Case::Case1C => {
            n >= 4
                && facts.is_lie
                && facts.series.derived_length == Some(3)
                && facts.product.dim() == 3
                && is_heisenberg_plus_abelian(l, &facts.product)?
                && facts.center.dim() + 3 == n
        }
        Case::Case2D => {
            n >= 3
                && facts.is_lie
                && !facts.series.solvable
                && facts.center.dim() + 3 == n
                && quotient_by_center_is_simple(l)?
        }
        Case::Case3E => match &facts.nil {
            Some(b) => {
                n >= 4
                    && facts.series.solvable
                    && b.codim() == 1
                    && is_heisenberg_plus_abelian(l, b)?
            }
            None => false,
        },
        _ => false,
    })
}

fn first_outside(l: &AlgebraTable, s: &Subspace) -> Result<Vec<Scalar>> {
    let f = l.field();
    (0..l.dim())
        .map(|i| f.unit_vector(l.dim(), i))
        .find(|e| !s.contains(e))
        .ok_or_else(|| Error::Inconsistency("subspace unexpectedly full".into()))
}

fn coefficient(field: FieldSpec, basis: &[Vec<Scalar>], v: &[Scalar]) -> Result<Vec<Scalar>> {
    solve_combination(field, basis, v)
        .ok_or_else(|| Error::Inconsistency("vector outside the expected span".into()))
}

fn rows(field: FieldSpec, n: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
    Matrix::from_rows(field, n, rows)
}

fn quadratic_witness(m: Matrix, basis: Matrix, model: AlgebraTable, l: &AlgebraTable) -> Result<QuadraticWitness> {
    if l.change_of_basis(&basis)? != model {
        return Err(Error::Inconsistency("model table does not match in the adapted basis".into()));
    }
    let chi = char_poly_2x2(&m)?;
    Ok(QuadraticWitness {
        chi_irreducible: chi.is_irreducible(),
        chi,
        m,
        basis,
        model,
    })
}

/// Adapted basis `(a', b', x, y, z..)` with `L ≅ 𝔠(m) ⊕ 𝔽^{n−4}`.
fn extract_case1(l: &AlgebraTable, facts: &Facts) -> Result<QuadraticWitness> {
    let f = l.field();
    let n = l.dim();
    let l2 = &facts.product;
    let d = facts.series.derived(2).clone();
    let b0 = d.vectors().next().ok_or_else(|| Error::Inconsistency("L^(2) is zero".into()))?.to_vec();
    let a = first_outside(l, &l2.sum(&facts.center)?)?;
    let x = l2
        .vectors()
        .find(|v| !d.contains(v))
        .expect("dim L² > dim L^(2)")
        .to_vec();
    let y = l.br(&a, &x);
    let c = coefficient(f, std::slice::from_ref(&b0), &l.br(&x, &y))?[0].clone();
    let ay = coefficient(f, &[x.clone(), y.clone(), b0.clone()], &l.br(&a, &y))?;
    let cinv = c.inv().ok_or(Error::Singular)?;
    let t = -&(&ay[2] * &cinv);
    let mut a2 = a.clone();
    crate::field::axpy(&mut a2, &t, &x);
    let b2 = crate::field::scale(&c, &b0);
    let mut basis = vec![a2, b2, x, y];
    basis.extend(d.complement_in(&facts.center));
    let m = rows(f, 2, vec![vec![f.zero(), f.one()], vec![ay[0].clone(), ay[1].clone()]])?;
    let model = families::with_abelian_summand(&make_c(&m, f)?, n - 4);
    quadratic_witness(m, rows(f, n, basis)?, model, l)
}

/// Candidate `h` coefficient vectors for case 2: every vector over GF(p),
/// small integer combinations over ℚ.
fn h_candidates(f: FieldSpec) -> Result<Vec<Vec<Scalar>>> {
    if f.is_prime_field() {
        return Ok(all_vectors(f, 3)?.skip(1).collect());
    }
    let range = [0i64, 1, -1, 2, -2];
    let mut out = Vec::new();
    for &i in &range {
        for &j in &range {
            for &k in &range {
                if (i, j, k) != (0, 0, 0) {
                    out.push(f.vector_from_i64(&[i, j, k]));
                }
            }
        }
    }
    Ok(out)
}

/// Adapted basis `(h̃, x, y, z..)` with `L ≅ 𝔡(m) ⊕ 𝔽^{n−3}`. Prefers an `h`
/// whose action on `ad_h(S)` is irreducible.
fn extract_case2(l: &AlgebraTable, facts: &Facts) -> Result<QuadraticWitness> {
    let f = l.field();
    let n = l.dim();
    let s = &facts.product;
    if s.dim() != 3 || !s.intersect(&facts.center)?.is_zero() {
        return Err(Error::Inconsistency("L² is not a simple complement of C(L)".into()));
    }
    let sb: Vec<Vec<Scalar>> = s.vectors().map(<[Scalar]>::to_vec).collect();
    let mut fallback = None;
    for coeffs in h_candidates(f)? {
        let h = s.combine(&coeffs);
        let images: Vec<Vec<Scalar>> = sb.iter().map(|v| l.br(&h, v)).collect();
        let w = Subspace::span(f, n, &images)?;
        if w.dim() != 2 || w.contains(&h) {
            continue;
        }
        let hline = Subspace::span(f, n, std::slice::from_ref(&h))?;
        if l.product_span(&w, &w) != hline {
            continue;
        }
        let mut wv = w.vectors();
        let x = wv.next().expect("dim 2").to_vec();
        let hx = l.br(&h, &x);
        let y = if Subspace::span(f, n, &[x.clone(), hx.clone()])?.dim() == 2 {
            hx
        } else {
            wv.next().expect("dim 2").to_vec()
        };
        let q = case2_from(l, facts, h, x, y)?;
        if q.chi_irreducible {
            return Ok(q);
        }
        fallback.get_or_insert(q);
    }
    fallback.ok_or_else(|| Error::Inconsistency("no split of the simple part was found".into()))
}

fn case2_from(
    l: &AlgebraTable,
    facts: &Facts,
    h: Vec<Scalar>,
    x: Vec<Scalar>,
    y: Vec<Scalar>,
) -> Result<QuadraticWitness> {
    let f = l.field();
    let n = l.dim();
    let c = coefficient(f, std::slice::from_ref(&h), &l.br(&x, &y))?[0].clone();
    let hx = coefficient(f, &[x.clone(), y.clone()], &l.br(&h, &x))?;
    let hy = coefficient(f, &[x.clone(), y.clone()], &l.br(&h, &y))?;
    let h2 = crate::field::scale(&c, &h);
    let m = rows(
        f,
        2,
        vec![
            vec![&c * &hx[0], &c * &hx[1]],
            vec![&c * &hy[0], &c * &hy[1]],
        ],
    )?;
    let mut basis = vec![h2, x, y];
    basis.extend(facts.center.vectors().map(<[Scalar]>::to_vec));
    let model = families::with_abelian_summand(&make_d(&m, f)?, n - 3);
    quadratic_witness(m, rows(f, n, basis)?, model, l)
}

/// Adapted basis `(x, e1, ê1, e0, z..)` and the parameters of `𝔢(φ, ϑ, v, n)`.
fn extract_case3(l: &AlgebraTable, b: &Subspace) -> Result<ExtensionWitness> {
    let f = l.field();
    let n = l.dim();
    let x = first_outside(l, b)?;
    let cb = inner_center(l, b)?;
    let bb = l.product_span(b, b);
    let e0 = bb.vectors().next().expect("dim 1").to_vec();
    let e1 = b.vectors().find(|v| !cb.contains(v)).expect("codim 2").to_vec();
    let with_e1 = cb.sum(&Subspace::span(f, n, std::slice::from_ref(&e1))?)?;
    let e1h_raw = b.vectors().find(|v| !with_e1.contains(v)).expect("codim 2").to_vec();
    let c = coefficient(f, std::slice::from_ref(&e0), &l.br(&e1, &e1h_raw))?[0].clone();
    let e1h = crate::field::scale(&c.inv().ok_or(Error::Singular)?, &e1h_raw);
    let mut basis = vec![x, e1, e1h, e0];
    basis.extend(bb.complement_in(&cb));
    let p = rows(f, n, basis)?;
    let t = l.change_of_basis(&p)?;
    let h_part = |v: &[Scalar]| v[1..].to_vec();
    let m = n - 1;
    let columns = |side: Side| -> Vec<Vec<Scalar>> {
        (1..n)
            .map(|j| match side {
                Side::Left => h_part(t.product(0, j)),
                Side::Right => h_part(t.product(j, 0)),
            })
            .collect()
    };
    let phi = Matrix::from_columns(f, m, &columns(Side::Left))?;
    let theta = Matrix::from_columns(f, m, &columns(Side::Right))?;
    let v = h_part(t.product(0, 0));
    let phi_star = phi.block(0, 2, 0, 2);
    let theta_preserves = (2..m).all(|j| theta.column(j)[..2].iter().all(Scalar::is_zero));
    let theta_star = theta_preserves.then(|| theta.block(0, 2, 0, 2));
    let chi = char_poly_2x2(&phi_star)?;
    let reconstructed = matches!(make_e(&phi, &theta, &v, n, f), Ok(e) if e == t);
    Ok(ExtensionWitness {
        chi_irreducible: chi.is_irreducible(),
        chi,
        phi,
        theta,
        v,
        nilradical: b.clone(),
        basis: p,
        phi_star,
        theta_star,
        reconstructed,
    })
}

/// Abelian ideals of codimension ≤ 2 suggested by structure: `C(L) + L²`,
/// the supplied witness, `C(L) + I_L`.
fn structural_ideal_candidates(l: &AlgebraTable, facts: &Facts, opts: &ClassifyOptions) -> Result<Vec<Subspace>> {
    let mut out = vec![facts.center.sum(&facts.product)?];
    if let Some(a) = &opts.witness {
        out.push(a.clone());
    }
    out.push(facts.center.sum(&facts.squares)?);
    let mut keep = Vec::new();
    for c in out {
        if c.codim() <= 2 && l.is_abelian_subspace(&c)? && l.is_ideal(&c)? && !keep.contains(&c) {
            keep.push(c);
        }
    }
    Ok(keep)
}

/// Decides which branch holds for `L` with `α(L) = n − 2`.
///
/// Over GF(p), `α` and `β` are computed by scan. Over ℚ a codimension-two
/// abelian subalgebra must be supplied, and `α = n − 2` is taken on trust.
pub fn classify(l: &AlgebraTable, opts: &ClassifyOptions) -> Result<ClassificationVerdict> {
    l.require_leibniz()?;
    let f = l.field();
    if f.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let n = l.dim();
    if let Some(a) = &opts.witness {
        if a.codim() != 2 || !l.is_abelian_subspace(a)? {
            return Err(Error::Precondition(
                "witness must be an abelian subalgebra of codimension two".into(),
            ));
        }
    }
    let alpha = if f.is_prime_field() {
        search::alpha(l, &opts.search)?.alpha
    } else if opts.witness.is_some() {
        Some(n - 2)
    } else {
        return Err(Error::WitnessRequired(
            "over Q an abelian subalgebra of codimension two must be supplied".into(),
        ));
    };
    let facts = gather(l, opts)?;
    if alpha != n.checked_sub(2) {
        return Ok(ClassificationVerdict {
            case: Case::NotApplicable,
            witness: Witness::None,
            diagnostics: diagnostics(l, &facts, alpha, None),
            overlaps: Vec::new(),
        });
    }
    let beta = if f.is_prime_field() {
        search::beta(l, &opts.search)?.beta
    } else {
        None
    };
    let candidates = structural_ideal_candidates(l, &facts, opts)?;
    let case0 = match beta {
        Some(b) if b + 2 >= n => {
            let ideal = match candidates.into_iter().find(|c| c.dim() == b) {
                Some(c) => c,
                None => search::beta(l, &opts.search)?.beta_witness.expect("scan witness"),
            };
            Some(ideal)
        }
        Some(_) => None,
        None => candidates.into_iter().max_by_key(Subspace::dim),
    };
    if let Some(ideal) = case0 {
        return Ok(ClassificationVerdict {
            case: Case::AbelianIdealCodimLe2,
            witness: Witness::AbelianIdeal(ideal),
            diagnostics: diagnostics(l, &facts, alpha, beta),
            overlaps: Vec::new(),
        });
    }
    let mut matches = Vec::new();
    for case in [Case::Case1C, Case::Case2D, Case::Case3E] {
        if signature(l, &facts, case)? {
            matches.push(case);
        }
    }
    let Some((&primary, rest)) = matches.split_first() else {
        return Err(if f.is_prime_field() {
            Error::Inconsistency(format!(
                "alpha = n-2 and beta = {beta:?} but no case signature matches"
            ))
        } else {
            Error::WitnessRequired(
                "no abelian ideal of codimension <= 2 among structural candidates and no case \
                 signature matched; supply a nilradical candidate"
                    .into(),
            )
        });
    };
    let witness = extract(l, &facts, primary)?;
    let mut diag = diagnostics(l, &facts, alpha, beta);
    diag.chi = match &witness {
        Witness::Quadratic(q) => Some(q.chi.scale_normalized()),
        Witness::Extension(e) => Some(e.chi.scale_normalized()),
        _ => None,
    };
    Ok(ClassificationVerdict {
        case: primary,
        witness,
        diagnostics: diag,
        overlaps: rest.to_vec(),
    })
}

fn extract(l: &AlgebraTable, facts: &Facts, case: Case) -> Result<Witness> {
    Ok(match case {
        Case::Case1C => Witness::Quadratic(extract_case1(l, facts)?),
        Case::Case2D => Witness::Quadratic(extract_case2(l, facts)?),
        Case::Case3E => Witness::Extension(extract_case3(
            l,
            facts.nil.as_ref().expect("signature requires a nilradical"),
        )?),
        _ => Witness::None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub case: Option<Case>,
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub dim: usize,
    pub alpha: usize,
    pub beta: Option<usize>,
    pub verdict: Option<ClassificationVerdict>,
    pub claims: Vec<Claim>,
    /// Observations that are not pass/fail, e.g. overlapping signatures.
    pub findings: Vec<String>,
}

impl TheoremReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.outcome != Outcome::Fail)
    }
}

struct Claims {
    case: Option<Case>,
    out: Vec<Claim>,
}

impl Claims {
    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.out.push(Claim {
            case: self.case,
            name: name.into(),
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            detail: detail.into(),
        });
    }

    fn not_applicable(&mut self, name: &str, detail: impl Into<String>) {
        self.out.push(Claim {
            case: self.case,
            name: name.into(),
            outcome: Outcome::NotApplicable,
            detail: detail.into(),
        });
    }
}

/// Whether every monic quadratic splits over the field (never true for GF(p)
/// or ℚ; the quadratic-closure consequence is then reported as n/a).
fn quadratics_split(f: FieldSpec) -> bool {
    match f.elements() {
        Some(elems) => elems.iter().all(|c1| {
            elems
                .iter()
                .all(|c0| !QuadraticPoly::new(c1.clone(), c0.clone()).is_irreducible())
        }),
        None => false,
    }
}

/// Recomputes `α` by scan and, when `α = n − 2`, classifies and re-derives
/// every numeric claim of the matched case (and of any overlapping case).
pub fn verify_main_theorem(l: &AlgebraTable, cfg: &SearchConfig) -> Result<TheoremReport> {
    l.require_leibniz()?;
    let f = l.field();
    if !f.is_prime_field() {
        return Err(Error::RationalsUnsupported);
    }
    if f.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let n = l.dim();
    let alpha = search::alpha(l, cfg)?.alpha.expect("scan sets alpha");
    let mut claims = Claims {
        case: None,
        out: Vec::new(),
    };
    if Some(alpha) != n.checked_sub(2) {
        claims.not_applicable("alpha = n-2", format!("alpha = {alpha}, n = {n}"));
        return Ok(TheoremReport {
            dim: n,
            alpha,
            beta: None,
            verdict: None,
            claims: claims.out,
            findings: Vec::new(),
        });
    }
    claims.check("alpha = n-2", true, format!("alpha = {alpha}"));
    let opts = ClassifyOptions {
        search: *cfg,
        ..ClassifyOptions::default()
    };
    let verdict = classify(l, &opts)?;
    let beta = search::beta(l, cfg)?.beta.expect("scan sets beta");
    let facts = gather(l, &opts)?;
    let mut findings = Vec::new();
    for other in &verdict.overlaps {
        findings.push(format!(
            "signature overlap: {} also satisfies the {} signature",
            verdict.case, other
        ));
    }
    let mut cases = vec![verdict.case];
    cases.extend(&verdict.overlaps);
    for case in cases {
        claims.case = Some(case);
        let witness = if case == verdict.case {
            verdict.witness.clone()
        } else {
            extract(l, &facts, case)?
        };
        case_claims(l, &facts, case, &witness, beta, cfg, &mut claims, &mut findings)?;
    }
    Ok(TheoremReport {
        dim: n,
        alpha,
        beta: Some(beta),
        verdict: Some(verdict),
        claims: claims.out,
        findings,
    })
}

#[allow(clippy::too_many_arguments)]
fn case_claims(
    l: &AlgebraTable,
    facts: &Facts,
    case: Case,
    witness: &Witness,
    beta: usize,
    cfg: &SearchConfig,
    claims: &mut Claims,
    findings: &mut Vec<String>,
) -> Result<()> {
    let n = l.dim();
    let f = l.field();
    let dl = facts.series.derived_length;
    match (case, witness) {
        (Case::AbelianIdealCodimLe2, Witness::AbelianIdeal(ideal)) => {
            let ok = ideal.codim() <= 2 && l.is_abelian_subspace(ideal)? && l.is_ideal(ideal)?;
            claims.check("abelian ideal of codim <= 2", ok, format!("dim {}", ideal.dim()));
            claims.check("solvable", facts.series.solvable, format!("derived length {dl:?}"));
            claims.check(
                "derived length <= 3",
                dl.is_some_and(|k| k <= 3),
                format!("{dl:?}"),
            );
            claims.check("beta >= n-2", beta + 2 >= n, format!("beta = {beta}"));
        }
        (Case::Case1C, Witness::Quadratic(q)) => {
            claims.check("Lie", facts.is_lie, "");
            claims.check("3-step solvable", dl == Some(3), format!("{dl:?}"));
            claims.check("dim L^2 = 3", facts.product.dim() == 3, format!("{}", facts.product.dim()));
            let sub = l.subalgebra_table(&facts.product)?;
            let iso = search::iso_search(&sub, &families::heisenberg(f), cfg)?;
            claims.check("L^2 isomorphic to Heisenberg", iso.isomorphic, "iso_search");
            claims.check(
                "dim C(L) = n-3",
                facts.center.dim() + 3 == n,
                format!("{}", facts.center.dim()),
            );
            let d2 = facts.series.derived(2);
            claims.check(
                "C(L) = F^(n-4) + L^(2)",
                facts.center.contains_subspace(d2) && d2.dim() == 1,
                format!("dim L^(2) = {}", d2.dim()),
            );
            claims.check("beta = n-3", beta + 3 == n, format!("beta = {beta}"));
            claims.check("chi irreducible", q.chi_irreducible, format!("{}", q.chi));
            claims.check("traceless m", q.m.trace()?.is_zero(), format!("{}", q.m));
            claims.not_applicable(
                "absent over quadratically closed fields",
                format!("{f} has irreducible quadratics: {}", !quadratics_split(f)),
            );
        }
        (Case::Case2D, Witness::Quadratic(q)) => {
            claims.check("Lie", facts.is_lie, "");
            claims.check("not solvable", !facts.series.solvable, "");
            claims.check(
                "dim C(L) = n-3",
                facts.center.dim() + 3 == n,
                format!("{}", facts.center.dim()),
            );
            claims.check("L/C(L) simple of dim 3", quotient_by_center_is_simple(l)?, "");
            let ideals = search::all_abelian_ideals(l, n - 3, cfg)?;
            claims.check(
                "C(L) unique abelian ideal of dim n-3",
                ideals == vec![facts.center.clone()],
                format!("{} found", ideals.len()),
            );
            claims.check("beta = n-3", beta + 3 == n, format!("beta = {beta}"));
            // No irreducibility is claimed here: split sl2 falls in this case too.
            findings.push(format!(
                "simple part realized with chi = {} ({})",
                q.chi,
                if q.chi_irreducible { "irreducible" } else { "split" }
            ));
        }
        (Case::Case3E, Witness::Extension(e)) => {
            let b = &e.nilradical;
            claims.check("solvable", facts.series.solvable, format!("{dl:?}"));
            claims.check("Nil(L) of codim 1", b.codim() == 1, format!("dim {}", b.dim()));
            let sub = l.subalgebra_table(b)?;
            let model = heisenberg_plus(f, n - 4);
            let iso = if n <= 5 {
                search::iso_search(&sub, &model, cfg)?.isomorphic
            } else {
                is_heisenberg_plus_abelian(l, b)?
            };
            claims.check("Nil(L) isomorphic to h + F^(n-4)", iso, "");
            claims.check("beta = n-3", beta + 3 == n, format!("beta = {beta}"));
            let cb = inner_center(l, b)?;
            let ideals = search::all_abelian_ideals(l, n - 3, cfg)?;
            claims.check(
                "C(Nil(L)) unique abelian ideal of dim n-3",
                ideals == vec![cb],
                format!("{} found", ideals.len()),
            );
            claims.check("phi* irreducible", e.chi_irreducible, format!("{}", e.chi));
            let x = e.basis.row(0);
            claims.check("v in I_L", facts.squares.contains(&l.br(x, x)), "");
            let h = l.subalgebra_table(b)?;
            let coords = |v: &[Scalar]| b.coordinates(v).expect("in B");
            let cols: Vec<Vec<Scalar>> = b.vectors().map(|v| coords(&l.br(x, v))).collect();
            let lx = Matrix::from_columns(f, b.dim(), &cols)?;
            claims.check("phi left derivation of Nil(L)", is_left_derivation(&h, &lx)?, "");
            claims.check("reconstructs as e(phi, theta, v, n)", e.reconstructed, "");
            match &e.theta_star {
                Some(ts) if *ts == e.phi_star.scale(&-&f.one()) => {
                    findings.push("induced maps satisfy theta* = -phi*".into())
                }
                Some(ts) if *ts == e.phi_star => findings.push("induced maps satisfy theta* = phi*".into()),
                Some(ts) => findings.push(format!("theta* = {ts} unrelated to phi* = {}", e.phi_star)),
                None => findings.push("theta does not preserve C(Nil(L))".into()),
            }
        }
        _ => claims.check("witness shape", false, "unexpected witness for case"),
    }
    Ok(())
}

/// An abelian ideal of codimension two forces solvability of length ≤ 3.
/// Finds the ideal by scan over GF(p) when none is supplied.
pub fn solvability_from_codim2_ideal(
    l: &AlgebraTable,
    ideal: Option<&Subspace>,
    cfg: &SearchConfig,
) -> Result<bool> {
    l.require_leibniz()?;
    let n = l.dim();
    if n < 2 {
        return Err(Error::Precondition("dimension below two".into()));
    }
    let found = match ideal {
        Some(i) => {
            if i.codim() != 2 || !l.is_abelian_subspace(i)? || !l.is_ideal(i)? {
                return Err(Error::Precondition("supplied subspace is not an abelian ideal of codimension two".into()));
            }
            i.clone()
        }
        None if l.field().is_prime_field() => search::first_abelian_ideal(l, n - 2, cfg)?
            .ok_or_else(|| Error::Precondition("no abelian ideal of codimension two".into()))?,
        None => return Err(Error::WitnessRequired("supply the ideal over Q".into())),
    };
    debug_assert_eq!(found.codim(), 2);
    let s = series_of(l, &l.full());
    Ok(s.solvable && s.derived_length.is_some_and(|k| k <= 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn gf3() -> FieldSpec {
        FieldSpec::gf(3)
    }

    fn irr(f: FieldSpec) -> Matrix {
        Matrix::from_i64(f, 2, 2, &[0, 1, 2, 0]).unwrap()
    }

    fn opts() -> ClassifyOptions {
        ClassifyOptions::default()
    }

    #[test]
    fn a_is_case0_with_structural_witness() {
        let f = gf3();
        let a = make_a(&Matrix::identity(f, 2), &irr(f), f).unwrap();
        let v = classify(&a, &opts()).unwrap();
        assert_eq!(v.case, Case::AbelianIdealCodimLe2);
        let expected = a.center().sum(&a.product_space(&a.full(), &a.full()).unwrap()).unwrap();
        assert_eq!(v.witness, Witness::AbelianIdeal(expected));
    }

    #[test]
    fn c_is_case1() {
        let f = gf3();
        let c = make_c(&irr(f), f).unwrap();
        let v = classify(&c, &opts()).unwrap();
        assert_eq!(v.case, Case::Case1C);
        assert_eq!(v.diagnostics.center_dim, 1);
        let Witness::Quadratic(q) = &v.witness else { panic!() };
        assert_eq!(q.chi, QuadraticPoly::new(f.zero(), f.one()));
        assert_eq!(v.diagnostics.beta, Some(1));
    }

    #[test]
    fn d_is_case2() {
        let f = gf3();
        let d = make_d(&irr(f), f).unwrap();
        let v = classify(&d, &opts()).unwrap();
        assert_eq!(v.case, Case::Case2D);
        let Witness::Quadratic(q) = &v.witness else { panic!() };
        assert!(q.chi_irreducible);
    }

    #[test]
    fn leibniz_oscillator_is_case3() {
        let f = gf3();
        let l = leibniz_oscillator(f);
        let v = classify(&l, &opts()).unwrap();
        assert_eq!(v.case, Case::Case3E);
        let Witness::Extension(e) = &v.witness else { panic!() };
        assert_eq!(e.nilradical, Subspace::coordinate(f, 4, &[0, 1, 2]));
        assert!(e.reconstructed && e.chi_irreducible);
    }

    #[test]
    fn oscillator_overlap_is_reported() {
        let v = classify(&oscillator(gf3()), &opts()).unwrap();
        assert_eq!(v.case, Case::Case1C);
        assert_eq!(v.overlaps, vec![Case::Case3E]);
    }

    #[test]
    fn not_applicable_when_alpha_differs() {
        let v = classify(&abelian(3, gf3()), &opts()).unwrap();
        assert_eq!(v.case, Case::NotApplicable);
    }

    #[test]
    fn characteristic_two_rejected() {
        let h = heisenberg(FieldSpec::gf(2));
        assert_eq!(classify(&h, &opts()).unwrap_err(), Error::CharacteristicTwo);
    }

    #[test]
    fn rationals_need_a_witness() {
        let q = FieldSpec::Rationals;
        let os = oscillator(q);
        assert!(matches!(classify(&os, &opts()), Err(Error::WitnessRequired(_))));
        let o = ClassifyOptions {
            witness: Some(Subspace::coordinate(q, 4, &[1, 2])),
            ..opts()
        };
        let v = classify(&os, &o).unwrap();
        assert_eq!(v.case, Case::Case1C);
    }

    #[test]
    fn theorem_report_for_oscillator() {
        let r = verify_main_theorem(&oscillator(gf3()), &SearchConfig::default()).unwrap();
        assert_eq!((r.alpha, r.beta), (2, Some(1)));
        assert!(r.all_pass(), "{:#?}", r.claims);
        assert!(!r.findings.is_empty());
    }

    #[test]
    fn codim2_solvability() {
        let f = gf3();
        let c = SearchConfig::default();
        let a = make_a(&Matrix::identity(f, 2), &irr(f), f).unwrap();
        assert!(solvability_from_codim2_ideal(&a, None, &c).unwrap());
        let h1 = with_abelian_summand(&heisenberg(f), 1);
        assert!(solvability_from_codim2_ideal(&h1, None, &c).unwrap());
        let d = make_d(&irr(f), f).unwrap();
        assert!(matches!(
            solvability_from_codim2_ideal(&d, None, &c),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn fixture_sweep_is_total_and_claims_hold() {
        for p in [3, 5] {
            let f = FieldSpec::gf(p);
            for l in standard_fixtures(f, 5) {
                let name = l.name().unwrap_or("?").to_string();
                let r = verify_main_theorem(&l, &SearchConfig::default())
                    .unwrap_or_else(|e| panic!("{name} over GF({p}): {e}"));
                assert!(r.all_pass(), "{name} over GF({p}): {:#?}", r.claims);
            }
        }
    }
}
