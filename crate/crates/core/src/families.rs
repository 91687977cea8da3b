//! Constructors for the named families.
//!
//! Basis orders are fixed: the four-dimensional families use `(a, b, x, y)`,
//! the three-dimensional simple core uses `(h, x, y)`, the one-dimensional
//! extensions use `(x, H-basis)` with `H = 𝔥 ⊕ 𝔽^k` ordered `(e1, ê1, e0, z..)`,
//! the oscillator uses `(e₋₁, e₀, e₁, ê₁)` and Heisenberg `(e1, ê1, e0)`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::field::{axpy, is_zero_vector, FieldSpec, Scalar};
use crate::matrix::Matrix;

fn check_2x2(m: &Matrix, what: &str, field: FieldSpec) -> Result<()> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::Shape(format!(
            "{what} must be 2x2, found {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.field() != field {
        return Err(Error::FieldMismatch(m.field().to_string(), field.to_string()));
    }
    Ok(())
}

/// `[u, x] = m11·x + m12·y`, `[u, y] = m21·x + m22·y` written into `t`, with
/// the mirrored products negated when `skew`.
fn act_on_plane(t: &mut AlgebraTable, u: usize, x: usize, y: usize, m: &Matrix, skew: bool) {
    let n = t.dim();
    let f = t.field();
    for (row, target) in [(0, x), (1, y)] {
        let mut v = f.zero_vector(n);
        v[x] = m.get(row, 0).clone();
        v[y] = m.get(row, 1).clone();
        if skew {
            let neg: Vec<Scalar> = v.iter().map(|c| -c).collect();
            t.set_product(target, u, &neg);
        }
        t.set_product(u, target, &v);
    }
}

/// The `𝔞(λ, μ)` table with no parameter check. Only for negative testing.
pub fn a_table_raw(lambda: &Matrix, mu: &Matrix, field: FieldSpec) -> Result<AlgebraTable> {
    check_2x2(lambda, "lambda", field)?;
    check_2x2(mu, "mu", field)?;
    let mut t = AlgebraTable::zero(field, 4);
    act_on_plane(&mut t, 0, 2, 3, lambda, false);
    act_on_plane(&mut t, 1, 2, 3, mu, false);
    Ok(t)
}

/// `𝔞(λ, μ)`: rejects non-commuting parameters, reporting `λμ − μλ`.
pub fn make_a(lambda: &Matrix, mu: &Matrix, field: FieldSpec) -> Result<AlgebraTable> {
    let t = a_table_raw(lambda, mu, field)?;
    let comm = lambda.mul(mu)?.sub(&mu.mul(lambda)?)?;
    if !comm.is_zero() {
        return Err(Error::InvalidParameters(format!(
            "parameters do not commute; commutator = {comm}"
        )));
    }
    if let Some((i, j, k)) = t.leibniz_violation() {
        return Err(Error::Inconsistency(format!(
            "commuting parameters gave a non-Leibniz table at ({i},{j},{k})"
        )));
    }
    Ok(t.with_name("a"))
}

/// `𝔟(λ, μ)`: skew version of the `𝔞` pattern. Always a table; it is Leibniz
/// (and then Lie) exactly when the parameters commute.
pub fn make_b(lambda: &Matrix, mu: &Matrix, field: FieldSpec) -> Result<AlgebraTable> {
    check_2x2(lambda, "lambda", field)?;
    check_2x2(mu, "mu", field)?;
    let mut t = AlgebraTable::zero(field, 4);
    act_on_plane(&mut t, 0, 2, 3, lambda, true);
    act_on_plane(&mut t, 1, 2, 3, mu, true);
    Ok(t.with_name("b"))
}

/// `𝔠(λ)`: `a` acts on `(x, y)` by `λ`, `[x, y] = −[y, x] = b`.
///
/// Skew, so it is Leibniz iff it is Lie iff `tr λ = 0`; the table is returned
/// either way and callers check.
pub fn make_c(lambda: &Matrix, field: FieldSpec) -> Result<AlgebraTable> {
    check_2x2(lambda, "lambda", field)?;
    let mut t = AlgebraTable::zero(field, 4);
    act_on_plane(&mut t, 0, 2, 3, lambda, true);
    t.set_product(2, 3, &field.unit_vector(4, 1));
    t.set_product(3, 2, &unit_scaled(field, 4, 1, -&field.one()));
    Ok(t.with_name("c"))
}

/// `𝔡(m)` on `(h, x, y)`: `h` acts by `m`, `[x, y] = −[y, x] = h`; needs `tr m = 0`.
pub fn make_d(m: &Matrix, field: FieldSpec) -> Result<AlgebraTable> {
    check_2x2(m, "m", field)?;
    if !m.trace()?.is_zero() {
        return Err(Error::InvalidParameters(format!(
            "m must be traceless, trace = {}",
            m.trace()?
        )));
    }
    let mut t = AlgebraTable::zero(field, 3);
    act_on_plane(&mut t, 0, 1, 2, m, true);
    t.set_product(1, 2, &field.unit_vector(3, 0));
    t.set_product(2, 1, &unit_scaled(field, 3, 0, -&field.one()));
    Ok(t.with_name("d"))
}

fn unit_scaled(field: FieldSpec, n: usize, i: usize, c: Scalar) -> Vec<Scalar> {
    let mut v = field.zero_vector(n);
    v[i] = c;
    v
}

/// `𝔥 ⊕ 𝔽^k` on `(e1, ê1, e0, z1..zk)`.
pub fn heisenberg_plus(field: FieldSpec, k: usize) -> AlgebraTable {
    let n = 3 + k;
    AlgebraTable::zero(field, n)
        .with_terms(0, 1, &[(2, 1)])
        .with_terms(1, 0, &[(2, -1)])
}

/// `𝔥` on `(e1, ê1, e0)`: `[e1, ê1] = −[ê1, e1] = e0`.
pub fn heisenberg(field: FieldSpec) -> AlgebraTable {
    heisenberg_plus(field, 0).with_name("heisenberg")
}

/// The oscillator Lie algebra on `(e₋₁, e₀, e₁, ê₁)`.
pub fn oscillator(field: FieldSpec) -> AlgebraTable {
    AlgebraTable::zero(field, 4)
        .with_terms(0, 2, &[(3, 1)])
        .with_terms(2, 0, &[(3, -1)])
        .with_terms(0, 3, &[(2, -1)])
        .with_terms(3, 0, &[(2, 1)])
        .with_terms(2, 3, &[(1, 1)])
        .with_terms(3, 2, &[(1, -1)])
        .with_name("oscillator")
}

/// `𝔽^k` with zero bracket.
pub fn abelian(k: usize, field: FieldSpec) -> AlgebraTable {
    AlgebraTable::zero(field, k)
}

/// `L ⊕ 𝔽^k`.
pub fn with_abelian_summand(l: &AlgebraTable, k: usize) -> AlgebraTable {
    let mut out = l
        .direct_sum(&abelian(k, l.field()))
        .expect("same field");
    if let Some(name) = l.name() {
        out = out.with_name(if k == 0 {
            name.to_string()
        } else {
            format!("{name}+F^{k}")
        });
    }
    out
}

/// Four-dimensional non-Lie algebra on `(e1, e2, e3, x)` in which `e1` and
/// `e2` both scale the line `𝔽x`:
/// `[e1, x] = −[x, e1] = x`, `[e2, x] = −[x, e2] = x`, `[e1, e2] = e3`.
pub fn eigenline_extension(field: FieldSpec) -> AlgebraTable {
    AlgebraTable::zero(field, 4)
        .with_terms(0, 3, &[(3, 1)])
        .with_terms(3, 0, &[(3, -1)])
        .with_terms(1, 3, &[(3, 1)])
        .with_terms(3, 1, &[(3, -1)])
        .with_terms(0, 1, &[(2, 1)])
        .with_name("eigenline-extension")
}

/// Four-dimensional non-Lie extension of `𝔥 = span(e1, e2, e3)` by `e4`
/// rotating `(e1, e2)`, with `[e4, e4] = e3`:
/// `[e1, e2] = −[e2, e1] = e3`, `[e1, e4] = −[e4, e1] = −e2`,
/// `[e2, e4] = −[e4, e2] = e1`.
pub fn leibniz_oscillator(field: FieldSpec) -> AlgebraTable {
    AlgebraTable::zero(field, 4)
        .with_terms(0, 1, &[(2, 1)])
        .with_terms(1, 0, &[(2, -1)])
        .with_terms(0, 3, &[(1, -1)])
        .with_terms(3, 0, &[(1, 1)])
        .with_terms(1, 3, &[(0, 1)])
        .with_terms(3, 1, &[(0, -1)])
        .with_terms(3, 3, &[(2, 1)])
        .with_name("leibniz-oscillator")
}

/// Whether `d` is a left derivation of `h`: `d[a,b] = [d a, b] + [a, d b]`
/// on basis pairs. `d` acts on column vectors.
pub fn is_left_derivation(h: &AlgebraTable, d: &Matrix) -> Result<bool> {
    let n = h.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::Shape(format!("derivation must be {n}x{n}")));
    }
    let f = h.field();
    for i in 0..n {
        let ei = f.unit_vector(n, i);
        let dei = d.column(i);
        for j in 0..n {
            let ej = f.unit_vector(n, j);
            let lhs = d.apply(h.product(i, j))?;
            let mut rhs = h.bracket(&dei, &ej)?;
            axpy(&mut rhs, &f.one(), &h.bracket(&ei, &d.column(j))?);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `𝔢(φ, ϑ, v, n)` on `(x, H)` with `H = 𝔥 ⊕ 𝔽^{n−4}`:
/// `[x, b] = φ(b)`, `[a, x] = ϑ(a)`, `[x, x] = v`, `[a, b]` from `H`.
///
/// `φ` and `ϑ` are `(n−1)×(n−1)` acting on column vectors of `H`. The table
/// is validated a posteriori with the Leibniz check.
pub fn make_e(
    phi: &Matrix,
    theta: &Matrix,
    v: &[Scalar],
    n: usize,
    field: FieldSpec,
) -> Result<AlgebraTable> {
    if n < 4 {
        return Err(Error::InvalidParameters(format!("need n >= 4, got {n}")));
    }
    let h = heisenberg_plus(field, n - 4);
    let m = n - 1;
    for (what, mat) in [("phi", phi), ("theta", theta)] {
        if mat.rows() != m || mat.cols() != m {
            return Err(Error::Shape(format!(
                "{what} must be {m}x{m}, found {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        if mat.field() != field {
            return Err(Error::FieldMismatch(mat.field().to_string(), field.to_string()));
        }
    }
    if v.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: v.len(),
        });
    }
    if !h.center().contains(v) {
        return Err(Error::InvalidParameters("v must lie in the center of H".into()));
    }
    if !is_left_derivation(&h, phi)? {
        return Err(Error::InvalidParameters("phi is not a left derivation of H".into()));
    }
    let lift = |w: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![field.zero()];
        out.extend_from_slice(w);
        out
    };
    let mut t = AlgebraTable::zero(field, n);
    t.set_product(0, 0, &lift(v));
    for i in 0..m {
        t.set_product(0, i + 1, &lift(&phi.column(i)));
        t.set_product(i + 1, 0, &lift(&theta.column(i)));
        for j in 0..m {
            t.set_product(i + 1, j + 1, &lift(h.product(i, j)));
        }
    }
    t.require_leibniz()?;
    Ok(t.with_name("e"))
}

/// A companion matrix with irreducible characteristic polynomial, traceless
/// when the field allows it: `t² + 1` over ℚ, otherwise the first irreducible
/// `t² + c1·t + c0` over GF(p) with `c1 = 0` tried first.
pub fn irreducible_companion(field: FieldSpec) -> Matrix {
    let (c1, c0) = match field.elements() {
        None => (field.zero(), field.one()),
        Some(elems) => {
            let mut order: Vec<(Scalar, Scalar)> = Vec::new();
            for c1 in &elems {
                for c0 in &elems {
                    order.push((c1.clone(), c0.clone()));
                }
            }
            order
                .into_iter()
                .find(|(c1, c0)| crate::poly::QuadraticPoly::new(c1.clone(), c0.clone()).is_irreducible())
                .expect("every finite field has an irreducible quadratic")
        }
    };
    Matrix::from_rows(field, 2, vec![vec![field.zero(), field.one()], vec![-&c0, -&c1]])
        .expect("2x2")
}

/// `𝔢(φ, −φ, v, 4 + k)` with `φ` acting on `(e1, ê1)` by
/// [`irreducible_companion`], by its trace on `e0`, and by zero on the
/// summand. `v` is `e0` when `square` is set. Fails when the block has
/// nonzero trace and `square` is set (only possible in characteristic 2).
pub fn rotation_extension(field: FieldSpec, k: usize, square: bool) -> Result<AlgebraTable> {
    let m = 3 + k;
    let c = irreducible_companion(field);
    let mut phi = Matrix::zeros(field, m, m);
    for i in 0..2 {
        for j in 0..2 {
            phi.set(i, j, c.get(i, j).clone());
        }
    }
    phi.set(2, 2, c.trace().expect("square"));
    let mut v = field.zero_vector(m);
    if square {
        v[2] = field.one();
    }
    Ok(make_e(&phi, &phi.scale(&-&field.one()), &v, 4 + k, field)?
        .with_name(format!("rotation-extension(k={k},v={})", if square { "e0" } else { "0" })))
}

/// Named Leibniz algebras of dimension at most `max_dim` drawn from every
/// family, used by property sweeps. `m` is [`irreducible_companion`].
pub fn standard_fixtures(field: FieldSpec, max_dim: usize) -> Vec<AlgebraTable> {
    let f = field;
    let id = Matrix::identity(f, 2);
    let m = irreducible_companion(f);
    let zero = Matrix::zeros(f, 2, 2);
    let split = Matrix::from_i64(f, 2, 2, &[1, 0, 0, -1]).expect("2x2");
    let nil = Matrix::from_i64(f, 2, 2, &[0, 1, 0, 0]).expect("2x2");
    let mut out = Vec::new();
    let mut push = |l: AlgebraTable, name: String| {
        if l.dim() <= max_dim && l.is_leibniz() {
            out.push(l.with_name(name));
        }
    };
    for k in 0..=2 {
        push(with_abelian_summand(&make_a(&id, &m, f).expect("commuting"), k), format!("a(id,m)+F^{k}"));
        push(with_abelian_summand(&make_b(&id, &m, f).expect("commuting"), k), format!("b(id,m)+F^{k}"));
        push(with_abelian_summand(&heisenberg(f), k), format!("h+F^{k}"));
        if let Ok(d) = make_d(&m, f) {
            push(with_abelian_summand(&d, k), format!("d(m)+F^{k}"));
        }
    }
    push(make_a(&m, &id, f).expect("commuting"), "a(m,id)".into());
    push(make_a(&id, &zero, f).expect("commuting"), "a(id,0)".into());
    push(make_a(&id, &split, f).expect("commuting"), "a(id,diag(1,-1))".into());
    push(make_b(&split, &id, f).expect("commuting"), "b(diag(1,-1),id)".into());
    push(make_b(&nil, &id, f).expect("commuting"), "b(nil,id)".into());
    if m.trace().map(|t| t.is_zero()).unwrap_or(false) {
        for k in 0..=1 {
            push(with_abelian_summand(&make_c(&m, f).expect("2x2"), k), format!("c(m)+F^{k}"));
        }
    }
    push(make_c(&split, f).expect("2x2"), "c(diag(1,-1))".into());
    push(make_c(&nil, f).expect("2x2"), "c(nil)".into());
    push(make_d(&split, f).expect("traceless"), "d(diag(1,-1))".into());
    push(make_d(&nil, f).expect("traceless"), "d(nil)".into());
    push(oscillator(f), "oscillator".into());
    push(with_abelian_summand(&oscillator(f), 1), "oscillator+F^1".into());
    push(eigenline_extension(f), "eigenline-extension".into());
    push(leibniz_oscillator(f), "leibniz-oscillator".into());
    for k in 0..=1 {
        for square in [false, true] {
            if let Ok(l) = rotation_extension(f, k, square) {
                let name = l.name().unwrap_or_default().to_string();
                push(l, name);
            }
        }
    }
    for k in 2..=5 {
        push(abelian(k, f), format!("F^{k}"));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    Heisenberg,
    Oscillator,
    Abelian,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "a",
            Family::B => "b",
            Family::C => "c",
            Family::D => "d",
            Family::E => "e",
            Family::Heisenberg => "heisenberg",
            Family::Oscillator => "oscillator",
            Family::Abelian => "abelian",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "a" => Family::A,
            "b" => Family::B,
            "c" => Family::C,
            "d" => Family::D,
            "e" => Family::E,
            "heisenberg" | "h" => Family::Heisenberg,
            "oscillator" | "os" => Family::Oscillator,
            "abelian" => Family::Abelian,
            other => return Err(Error::InvalidParameters(format!("unknown family '{other}'"))),
        })
    }
}

/// Parameter block for any family, plus `k` abelian summand copies.
///
/// For `Abelian`, `k` is the dimension. For `E`, `n` is the dimension of the
/// extension before the summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    pub field: FieldSpec,
    pub lambda: Option<Matrix>,
    pub mu: Option<Matrix>,
    pub m: Option<Matrix>,
    pub phi: Option<Matrix>,
    pub theta: Option<Matrix>,
    pub v: Option<Vec<Scalar>>,
    pub n: Option<usize>,
    pub k: usize,
}

impl FamilyParams {
    pub fn new(family: Family, field: FieldSpec) -> Self {
        FamilyParams {
            family,
            field,
            lambda: None,
            mu: None,
            m: None,
            phi: None,
            theta: None,
            v: None,
            n: None,
            k: 0,
        }
    }

    fn need<'a, T>(opt: &'a Option<T>, what: &str, fam: Family) -> Result<&'a T> {
        opt.as_ref().ok_or_else(|| {
            Error::InvalidParameters(format!("family {fam} requires parameter {what}"))
        })
    }

    /// Builds the table. Families that are only conditionally Leibniz
    /// (`b`, `c`) are rejected here when the check fails.
    pub fn build(&self) -> Result<AlgebraTable> {
        let f = self.field;
        let fam = self.family;
        let base = match fam {
            Family::A => make_a(
                Self::need(&self.lambda, "lambda", fam)?,
                Self::need(&self.mu, "mu", fam)?,
                f,
            )?,
            Family::B => make_b(
                Self::need(&self.lambda, "lambda", fam)?,
                Self::need(&self.mu, "mu", fam)?,
                f,
            )?,
            Family::C => {
                let lam = self.lambda.as_ref().or(self.m.as_ref());
                make_c(Self::need(&lam.cloned(), "lambda", fam)?, f)?
            }
            Family::D => {
                let m = self.m.as_ref().or(self.lambda.as_ref());
                make_d(Self::need(&m.cloned(), "m", fam)?, f)?
            }
            Family::E => {
                let n = *Self::need(&self.n, "n", fam)?;
                let phi = Self::need(&self.phi, "phi", fam)?;
                let theta = self.theta.clone().unwrap_or_else(|| phi.scale(&-&f.one()));
                let v = self.v.clone().unwrap_or_else(|| f.zero_vector(n.saturating_sub(1)));
                make_e(phi, &theta, &v, n, f)?
            }
            Family::Heisenberg => heisenberg(f),
            Family::Oscillator => oscillator(f),
            Family::Abelian => return Ok(abelian(self.k, f).with_name("abelian")),
        };
        base.require_leibniz()?;
        Ok(with_abelian_summand(&base, self.k))
    }
}

/// `L_x` restricted to a coordinate block, as a helper for tests and reports.
pub fn restricted_left_action(l: &AlgebraTable, x: usize, block: &[usize]) -> Result<Matrix> {
    let f = l.field();
    let columns: Vec<Vec<Scalar>> = block
        .iter()
        .map(|&j| block.iter().map(|&i| l.product(x, j)[i].clone()).collect())
        .collect();
    for &j in block {
        let img = l.product(x, j);
        let outside: Vec<Scalar> = (0..l.dim())
            .filter(|i| !block.contains(i))
            .map(|i| img[i].clone())
            .collect();
        if !is_zero_vector(&outside) {
            return Err(Error::Precondition("block is not invariant".into()));
        }
    }
    Matrix::from_columns(f, block.len(), &columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf3() -> FieldSpec {
        FieldSpec::gf(3)
    }

    fn mat(f: FieldSpec, e: &[i64]) -> Matrix {
        Matrix::from_i64(f, 2, 2, e).unwrap()
    }

    #[test]
    fn a_products_by_hand() {
        let q = FieldSpec::Rationals;
        let t = make_a(&Matrix::identity(q, 2), &mat(q, &[0, 1, -1, 0]), q).unwrap();
        assert_eq!(t.product(0, 2), q.vector_from_i64(&[0, 0, 1, 0]).as_slice());
        assert_eq!(t.product(0, 3), q.vector_from_i64(&[0, 0, 0, 1]).as_slice());
        assert_eq!(t.product(1, 2), q.vector_from_i64(&[0, 0, 0, 1]).as_slice());
        assert_eq!(t.product(1, 3), q.vector_from_i64(&[0, 0, -1, 0]).as_slice());
        assert!(is_zero_vector(t.product(2, 0)));
        assert!(t.is_leibniz());
    }

    #[test]
    fn a_zero_is_abelian() {
        let f = gf3();
        let z = Matrix::zeros(f, 2, 2);
        assert_eq!(make_a(&z, &z, f).unwrap(), abelian(4, f));
    }

    #[test]
    fn a_rejects_noncommuting() {
        let f = FieldSpec::Rationals;
        let l = mat(f, &[0, 1, 0, 0]);
        let m = mat(f, &[0, 0, 1, 0]);
        assert!(matches!(make_a(&l, &m, f), Err(Error::InvalidParameters(_))));
        assert!(!a_table_raw(&l, &m, f).unwrap().is_leibniz());
    }

    #[test]
    fn b_lie_iff_commuting() {
        let f = gf3();
        let t = make_b(&Matrix::identity(f, 2), &mat(f, &[0, 1, -1, 0]), f).unwrap();
        assert!(t.is_leibniz());
        assert!(t.is_lie().unwrap());
        let bad = make_b(&mat(f, &[0, 1, 0, 0]), &mat(f, &[0, 0, 1, 0]), f).unwrap();
        assert!(!bad.is_leibniz());
        assert!(!bad.is_skew() || !bad.is_leibniz());
        let z = Matrix::zeros(f, 2, 2);
        assert_eq!(make_b(&z, &z, f).unwrap(), abelian(4, f));
    }

    #[test]
    fn c_lie_iff_traceless() {
        let f = gf3();
        let c = make_c(&mat(f, &[0, 1, 2, 0]), f).unwrap();
        assert!(c.is_leibniz() && c.is_lie().unwrap());
        let c_id = make_c(&Matrix::identity(f, 2), f).unwrap();
        // skew tables satisfy the identity only when they are Lie
        assert!(!c_id.is_leibniz());
    }

    #[test]
    fn d_requires_traceless() {
        let f = gf3();
        assert!(make_d(&Matrix::identity(f, 2), f).is_err());
        let d = make_d(&mat(f, &[0, 1, 2, 0]), f).unwrap();
        assert!(d.is_lie().unwrap());
    }

    #[test]
    fn d_zero_is_heisenberg_relabelled() {
        let f = gf3();
        let d = make_d(&Matrix::zeros(f, 2, 2), f).unwrap();
        // (h, x, y) -> (x, y, h) puts it in Heisenberg order
        let p = Matrix::from_i64(f, 3, 3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]).unwrap();
        assert_eq!(d.change_of_basis(&p).unwrap(), heisenberg(f));
    }

    #[test]
    fn oscillator_products() {
        let f = FieldSpec::Rationals;
        let os = oscillator(f);
        assert!(os.is_lie().unwrap());
        let op = crate::algebra::Side::Left;
        let l = os.mult_operator(&f.unit_vector(4, 0), op).unwrap();
        // restricted to span(e1, ê1) = coordinates (2, 3)
        let block = l.matrix.block(2, 4, 2, 4);
        assert_eq!(block, Matrix::from_i64(f, 2, 2, &[0, -1, 1, 0]).unwrap());
    }

    #[test]
    fn named_examples_are_leibniz_not_lie() {
        for f in [gf3(), FieldSpec::gf(5), FieldSpec::Rationals] {
            for t in [eigenline_extension(f), leibniz_oscillator(f)] {
                assert!(t.is_leibniz(), "{:?}", t.name());
                assert!(!t.is_lie().unwrap());
            }
        }
        let t = leibniz_oscillator(gf3());
        assert_eq!(t.product(3, 3), gf3().unit_vector(4, 2).as_slice());
    }

    fn rotation_phi(f: FieldSpec, n: usize) -> Matrix {
        // φ(e1) = ê1, φ(ê1) = −e1, zero elsewhere
        let mut m = Matrix::zeros(f, n - 1, n - 1);
        m.set(1, 0, f.one());
        m.set(0, 1, -&f.one());
        m
    }

    #[test]
    fn e_reproduces_named_extension() {
        let f = gf3();
        let phi = rotation_phi(f, 4);
        let theta = phi.scale(&-&f.one());
        let v = f.vector_from_i64(&[0, 0, 1]);
        let e = make_e(&phi, &theta, &v, 4, f).unwrap();
        // (x, e1, ê1, e0) -> (e1, e2, e3, e4) ordering
        let p = Matrix::from_i64(f, 4, 4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0])
            .unwrap();
        assert_eq!(e.change_of_basis(&p).unwrap(), leibniz_oscillator(f));
    }

    #[test]
    fn e_with_zero_v_is_oscillator() {
        let f = FieldSpec::Rationals;
        let phi = rotation_phi(f, 4);
        let e = make_e(&phi, &phi.scale(&-&f.one()), &f.zero_vector(3), 4, f).unwrap();
        // oscillator order (e₋₁, e₀, e₁, ê₁) = (x, e0, e1, ê1)
        let p = Matrix::from_i64(f, 4, 4, &[1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0])
            .unwrap();
        assert_eq!(e.change_of_basis(&p).unwrap(), oscillator(f));
    }

    #[test]
    fn e_trivial_parameters_give_direct_sum() {
        let f = gf3();
        let z = Matrix::zeros(f, 3, 3);
        let e = make_e(&z, &z, &f.zero_vector(3), 4, f).unwrap();
        assert_eq!(e, abelian(1, f).direct_sum(&heisenberg(f)).unwrap());
    }

    #[test]
    fn e_rejects_bad_parameters() {
        let f = gf3();
        let z = Matrix::zeros(f, 3, 3);
        assert!(make_e(&z, &z, &f.zero_vector(3), 3, f).is_err());
        assert!(make_e(&z, &z, &f.vector_from_i64(&[1, 0, 0]), 4, f).is_err());
        let mut not_der = Matrix::zeros(f, 3, 3);
        not_der.set(0, 0, f.one());
        assert!(make_e(&not_der, &z, &f.zero_vector(3), 4, f).is_err());
        // rotation with mismatched ϑ breaks the identity
        let phi = rotation_phi(f, 4);
        assert!(matches!(
            make_e(&phi, &z, &f.zero_vector(3), 4, f),
            Err(Error::NotLeibniz(..))
        ));
    }

    #[test]
    fn params_build_with_summand() {
        let f = gf3();
        let mut p = FamilyParams::new(Family::A, f);
        p.lambda = Some(Matrix::identity(f, 2));
        p.mu = Some(mat(f, &[0, 1, 2, 0]));
        p.k = 2;
        let t = p.build().unwrap();
        assert_eq!(t.dim(), 6);
        assert_eq!(t.center().dim(), 2);
        let mut ab = FamilyParams::new(Family::Abelian, f);
        ab.k = 0;
        assert_eq!(ab.build().unwrap().dim(), 0);
        assert!(FamilyParams::new(Family::C, f).build().is_err());
        assert_eq!("oscillator".parse::<Family>().unwrap(), Family::Oscillator);
    }

    #[test]
    fn standard_fixtures_build_everywhere() {
        for f in [FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::gf(5), FieldSpec::Rationals] {
            let fx = standard_fixtures(f, 6);
            assert!(fx.len() >= 20, "{f}: {}", fx.len());
            let names: std::collections::HashSet<_> = fx.iter().map(|l| l.name().unwrap().to_string()).collect();
            assert_eq!(names.len(), fx.len());
            assert!(fx.iter().all(AlgebraTable::is_leibniz));
            assert!(irreducible_companion(f).rows() == 2);
        }
    }
}
