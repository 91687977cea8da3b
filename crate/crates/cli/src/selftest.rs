//! Property suites behind `leibniz selftest`. Each suite is seeded and
//! reports the first counterexample it finds.

use leibniz_core::classify::{classify, verify_main_theorem, ClassifyOptions, Witness};
use leibniz_core::families::{a_table_raw, standard_fixtures};
use leibniz_core::invariants::{acts_nilpotently_on, fitting_decomposition, series};
use leibniz_core::search::{self, SearchConfig};
use leibniz_core::{enumerate_subspaces, gaussian_binomial, FieldSpec, Matrix, Subspace};
use rand::Rng;

use crate::document::{parse_algebra, serialize_algebra};
use crate::random::{invertible, matrix, rng, scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn suite(name: &'static str, outcome: Result<String, String>) -> SuiteResult {
    match outcome {
        Ok(detail) => SuiteResult { name, passed: true, detail },
        Err(detail) => SuiteResult { name, passed: false, detail },
    }
}

fn fields() -> [FieldSpec; 4] {
    [FieldSpec::Rationals, FieldSpec::gf(3), FieldSpec::gf(5), FieldSpec::gf(7)]
}

pub fn run(seed: u64) -> Vec<SuiteResult> {
    vec![
        suite("field axioms", field_axioms(seed)),
        suite("rref and rank", rref_rank(seed)),
        suite("subspace counts", subspace_counts()),
        suite("Grassmann identity", grassmann(seed)),
        suite("fixtures are Leibniz", fixtures_leibniz()),
        suite("commuting parameters", commuting_parameters(seed)),
        suite("document round trip", round_trip()),
        suite("Fitting splitting", fitting()),
        suite("theorem claims", theorem()),
        suite("classification basis invariance", basis_invariance(seed)),
    ]
}

fn field_axioms(seed: u64) -> Result<String, String> {
    let mut r = rng(seed);
    let mut count = 0;
    for f in fields() {
        for _ in 0..250 {
            let (a, b, c) = (scalar(&mut r, f), scalar(&mut r, f), scalar(&mut r, f));
            let assoc = &(&a * &b) * &c == &a * &(&b * &c) && &(&a + &b) + &c == &a + &(&b + &c);
            let distrib = &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
            let inverse = a.is_zero() || (&a * &a.inv().expect("nonzero")).is_one();
            let negation = (&a + &(-&a)).is_zero() && &a - &b == &a + &(-&b);
            if !(assoc && distrib && inverse && negation) {
                return Err(format!("over {f}: a={a}, b={b}, c={c}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} triples"))
}

fn rref_rank(seed: u64) -> Result<String, String> {
    let mut r = rng(seed ^ 1);
    for f in fields() {
        for _ in 0..50 {
            let (rows, cols) = (r.gen_range(1..6), r.gen_range(1..6));
            let m = matrix(&mut r, f, rows, cols);
            let (e, rank) = m.rref();
            if e.rref() != (e.clone(), rank) || m.transpose().rank() != rank {
                return Err(format!("over {f}: {m:?}"));
            }
            let k = m.kernel_basis();
            if k.rows() + rank != cols {
                return Err(format!("rank-nullity over {f}"));
            }
        }
    }
    Ok("200 matrices".into())
}

fn subspace_counts() -> Result<String, String> {
    for p in [2u64, 3] {
        let f = FieldSpec::gf(p);
        for n in 0..=4 {
            for d in 0..=n {
                let count = enumerate_subspaces(n, d, f).map_err(|e| e.to_string())?.count() as u128;
                if count != gaussian_binomial(n, d, p) {
                    return Err(format!("GF({p}) n={n} d={d}: {count}"));
                }
            }
        }
    }
    Ok("GF(2), GF(3), n <= 4".into())
}

fn grassmann(seed: u64) -> Result<String, String> {
    let mut r = rng(seed ^ 2);
    for f in fields() {
        for _ in 0..50 {
            let n = r.gen_range(1..6);
            let (du, dw) = (r.gen_range(0..=n), r.gen_range(0..=n));
            let u = Subspace::from_matrix(&matrix(&mut r, f, du, n));
            let w = Subspace::from_matrix(&matrix(&mut r, f, dw, n));
            let s = u.sum(&w).map_err(|e| e.to_string())?;
            let i = u.intersect(&w).map_err(|e| e.to_string())?;
            if s.dim() + i.dim() != u.dim() + w.dim() {
                return Err(format!("over {f}"));
            }
        }
    }
    Ok("200 pairs".into())
}

fn fixtures_leibniz() -> Result<String, String> {
    let mut count = 0;
    for f in fields() {
        for l in standard_fixtures(f, 6) {
            if !l.is_leibniz() {
                return Err(format!("{} over {f}", l.name().unwrap_or("?")));
            }
            let squares = l.squares_ideal().map_err(|e| e.to_string())?;
            if l.product_space(&squares, &l.full()).map_err(|e| e.to_string())?.dim() != 0 {
                return Err(format!("squares do not left-annihilate in {}", l.name().unwrap_or("?")));
            }
            count += 1;
        }
    }
    Ok(format!("{count} fixtures"))
}

fn commuting_parameters(seed: u64) -> Result<String, String> {
    let mut r = rng(seed ^ 3);
    for f in [FieldSpec::gf(5), FieldSpec::Rationals] {
        for _ in 0..50 {
            let lambda = matrix(&mut r, f, 2, 2);
            let mu = matrix(&mut r, f, 2, 2);
            let commute = lambda.mul(&mu).ok() == mu.mul(&lambda).ok();
            let raw = a_table_raw(&lambda, &mu, f).map_err(|e| e.to_string())?;
            if raw.is_leibniz() != commute {
                return Err(format!("over {f}: lambda={lambda:?} mu={mu:?}"));
            }
        }
    }
    Ok("100 pairs".into())
}

fn round_trip() -> Result<String, String> {
    let mut count = 0;
    for f in fields() {
        for l in standard_fixtures(f, 6) {
            let text = serialize_algebra(&l, None);
            let back = parse_algebra(&text, false).map_err(|e| e.to_string())?;
            if back.table != l || serialize_algebra(&back.table, None) != text {
                return Err(format!("{} over {f}", l.name().unwrap_or("?")));
            }
            count += 1;
        }
    }
    Ok(format!("{count} documents"))
}

fn fitting() -> Result<String, String> {
    let cfg = SearchConfig::default();
    let f = FieldSpec::gf(3);
    let mut pairs = 0;
    for l in standard_fixtures(f, 4) {
        let n = l.dim();
        for d in n.saturating_sub(2).max(1)..=n {
            let subs = search::all_abelian_subalgebras(&l, d, &cfg).map_err(|e| e.to_string())?;
            for a in subs {
                let split = fitting_decomposition(&l, &a).map_err(|e| e.to_string())?;
                let nil = acts_nilpotently_on(&l, &a, &split.l0).map_err(|e| e.to_string())?;
                if split.l0.dim() + split.l1.dim() != n || !nil {
                    return Err(l.name().unwrap_or("?").to_string());
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (fixture, subalgebra) pairs"))
}

fn theorem() -> Result<String, String> {
    let cfg = SearchConfig::default();
    let mut checked = 0;
    for f in [FieldSpec::gf(3), FieldSpec::gf(5)] {
        for l in standard_fixtures(f, 5) {
            let r = verify_main_theorem(&l, &cfg).map_err(|e| format!("{}: {e}", l.name().unwrap_or("?")))?;
            if !r.all_pass() {
                return Err(format!("{} over {f}", l.name().unwrap_or("?")));
            }
            if r.verdict.is_some() {
                checked += 1;
            }
            let s = series(&l).map_err(|e| e.to_string())?;
            if s.nilpotent != s.lower_central_chain.last().is_some_and(Subspace::is_zero) {
                return Err("nilpotency disagrees with the lower central chain".into());
            }
        }
    }
    Ok(format!("{checked} classified fixtures"))
}

fn basis_invariance(seed: u64) -> Result<String, String> {
    let mut r = rng(seed ^ 4);
    let f = FieldSpec::gf(3);
    let opts = ClassifyOptions::default();
    let mut trials = 0;
    for l in standard_fixtures(f, 4) {
        let base = classify(&l, &opts).map_err(|e| e.to_string())?;
        if base.case == leibniz_core::classify::Case::NotApplicable {
            continue;
        }
        for _ in 0..10 {
            let p: Matrix = invertible(&mut r, f, l.dim());
            let moved = l.change_of_basis(&p).map_err(|e| e.to_string())?;
            let v = classify(&moved, &opts).map_err(|e| e.to_string())?;
            let same_witness_dim = match (&base.witness, &v.witness) {
                (Witness::AbelianIdeal(a), Witness::AbelianIdeal(b)) => a.dim() == b.dim(),
                _ => true,
            };
            if v.case != base.case || v.diagnostics.chi != base.diagnostics.chi || !same_witness_dim {
                return Err(format!("{}: {:?} vs {:?}", l.name().unwrap_or("?"), base.case, v.case));
            }
            trials += 1;
        }
    }
    Ok(format!("{trials} basis changes"))
}
