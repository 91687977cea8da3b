//! Seeded random family instances and basis changes. All randomness comes
//! from a ChaCha stream seeded by the caller.

use leibniz_core::families::{Family, FamilyParams};
use leibniz_core::{AlgebraTable, Error, FieldSpec, Matrix, Result, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over GF(p); small fractions `a/b` with `|a| ≤ 3`, `1 ≤ b ≤ 3` over Q.
pub fn scalar(rng: &mut impl Rng, f: FieldSpec) -> Scalar {
    match f.modulus() {
        Some(p) => f.residue(rng.gen_range(0..p)),
        None => f
            .from_fraction(rng.gen_range(-3..=3), rng.gen_range(1..=3))
            .expect("nonzero denominator"),
    }
}

pub fn matrix(rng: &mut impl Rng, f: FieldSpec, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(f, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, scalar(rng, f));
        }
    }
    m
}

/// Rejection-sampled invertible matrix.
pub fn invertible(rng: &mut impl Rng, f: FieldSpec, n: usize) -> Matrix {
    loop {
        let m = matrix(rng, f, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

fn traceless(rng: &mut impl Rng, f: FieldSpec) -> Matrix {
    let mut m = matrix(rng, f, 2, 2);
    let a = m.get(0, 0).clone();
    m.set(1, 1, -&a);
    m
}

/// `φ` on `𝔥 ⊕ 𝔽^k` acting by a random 2×2 block on `(e1, ê1)` and by the
/// block trace on `e0`, which makes it a derivation.
fn heisenberg_derivation(rng: &mut impl Rng, f: FieldSpec, size: usize) -> Matrix {
    let block = matrix(rng, f, 2, 2);
    let mut phi = Matrix::zeros(f, size, size);
    for i in 0..2 {
        for j in 0..2 {
            phi.set(i, j, block.get(i, j).clone());
        }
    }
    phi.set(2, 2, block.trace().expect("square"));
    phi
}

fn json_matrix(m: &Matrix) -> Value {
    json!(m.entries().iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

/// A random Leibniz instance of `family` plus its parameter block.
///
/// `a`, `b` draw a random `λ` and `μ = c0·id + c1·λ` so the pair commutes;
/// `c`, `d` draw a traceless matrix; `e` draws a derivation `φ`, `ϑ = −φ`
/// and `v ∈ 𝔽e0`, retrying until the table is Leibniz.
pub fn instance(
    family: Family,
    field: FieldSpec,
    seed: u64,
    k: usize,
    n: usize,
    basis_change: bool,
) -> Result<(AlgebraTable, Value)> {
    let f = field;
    let mut r = rng(seed);
    let mut p = FamilyParams::new(family, f);
    p.k = k;
    let mut block = json!({ "family": family.to_string(), "field": f.to_string(), "k": k, "seed": seed });
    let table = match family {
        Family::A | Family::B => {
            let lambda = matrix(&mut r, f, 2, 2);
            let c0 = scalar(&mut r, f);
            let c1 = scalar(&mut r, f);
            let mu = Matrix::identity(f, 2).scale(&c0).add(&lambda.scale(&c1))?;
            block["lambda"] = json_matrix(&lambda);
            block["mu"] = json_matrix(&mu);
            p.lambda = Some(lambda);
            p.mu = Some(mu);
            p.build()?
        }
        Family::C => {
            let lambda = traceless(&mut r, f);
            block["lambda"] = json_matrix(&lambda);
            p.lambda = Some(lambda);
            p.build()?
        }
        Family::D => {
            let m = traceless(&mut r, f);
            block["m"] = json_matrix(&m);
            p.m = Some(m);
            p.build()?
        }
        Family::E => {
            if n < 4 {
                return Err(Error::InvalidParameters(format!("family e needs n >= 4, got {n}")));
            }
            p.n = Some(n);
            block["n"] = json!(n);
            let mut built = None;
            for _ in 0..64 {
                let phi = heisenberg_derivation(&mut r, f, n - 1);
                let mut v = f.zero_vector(n - 1);
                v[2] = scalar(&mut r, f);
                p.phi = Some(phi.clone());
                p.theta = Some(phi.scale(&-&f.one()));
                p.v = Some(v.clone());
                if let Ok(t) = p.build() {
                    block["phi"] = json_matrix(&phi);
                    block["v"] = json!(v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
                    built = Some(t);
                    break;
                }
            }
            built.ok_or_else(|| Error::InvalidParameters("no Leibniz e-instance in 64 draws".into()))?
        }
        Family::Heisenberg | Family::Oscillator | Family::Abelian => p.build()?,
    };
    let name = format!("random-{family}-{seed}");
    let table = if basis_change {
        let pm = invertible(&mut r, f, table.dim());
        block["basis_change"] = json_matrix(&pm);
        table.change_of_basis(&pm)?
    } else {
        table
    };
    Ok((table.with_name(name), block))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_leibniz() {
        for fam in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::Oscillator] {
            for seed in 0..5 {
                let (a, pa) = instance(fam, FieldSpec::gf(3), seed, 1, 5, true).unwrap();
                let (b, pb) = instance(fam, FieldSpec::gf(3), seed, 1, 5, true).unwrap();
                assert_eq!(a, b);
                assert_eq!(pa, pb);
                assert!(a.is_leibniz(), "{fam} seed {seed}");
            }
        }
        let (q, _) = instance(Family::A, FieldSpec::Rationals, 7, 0, 4, true).unwrap();
        assert!(q.is_leibniz());
    }
}
