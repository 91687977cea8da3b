//! Randomized properties of the exact linear algebra and of algebra tables,
//! each checked against an oracle written independently here.

use std::collections::HashSet;

use leibniz_core::families::standard_fixtures;
use leibniz_core::invariants::series;
use leibniz_core::{
    enumerate_subspaces, gaussian_binomial, FieldSpec, Matrix, QuadraticPoly, Scalar, Subspace,
};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::gf(2)),
        Just(FieldSpec::gf(3)),
        Just(FieldSpec::gf(5)),
        Just(FieldSpec::gf(7)),
        Just(FieldSpec::gf(65_521)),
    ]
}

fn scalar_in(f: FieldSpec) -> BoxedStrategy<Scalar> {
    match f.modulus() {
        Some(p) => (0..p).prop_map(move |r| f.residue(r)).boxed(),
        None => (-50i64..=50, 1i64..=12)
            .prop_map(move |(n, d)| f.from_fraction(n, d).unwrap())
            .boxed(),
    }
}

fn matrix_in(f: FieldSpec, rows: usize, cols: usize) -> BoxedStrategy<Matrix> {
    proptest::collection::vec(scalar_in(f), rows * cols)
        .prop_map(move |e| {
            let rs = e.chunks(cols.max(1)).map(<[Scalar]>::to_vec).collect();
            if cols == 0 {
                Matrix::zeros(f, rows, 0)
            } else {
                Matrix::from_rows(f, cols, rs).unwrap()
            }
        })
        .boxed()
}

fn any_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1..=max, 1..=max).prop_flat_map(|(f, r, c)| matrix_in(f, r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(triple in field_strategy().prop_flat_map(|f| (scalar_in(f), scalar_in(f), scalar_in(f)))) {
        let (a, b, c) = triple;
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a - &b, &a + &(-&b));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rref_is_idempotent_and_rank_is_transpose_invariant(m in any_matrix(6)) {
        let (e, pivots) = m.rref_with_pivots();
        let (e2, pivots2) = e.rref_with_pivots();
        prop_assert_eq!(&e, &e2);
        prop_assert_eq!(&pivots, &pivots2);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        // Every kernel vector is annihilated; rank-nullity holds.
        let k = m.kernel_basis();
        prop_assert_eq!(k.rows() + pivots.len(), m.cols());
        for v in k.row_vectors() {
            prop_assert!(m.apply(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn grassmann_identity_small_fields(
        (u, w) in (prop_oneof![Just(FieldSpec::gf(2)), Just(FieldSpec::gf(3))], 1usize..=6)
            .prop_flat_map(|(f, n)| (0..=n, 0..=n).prop_flat_map(move |(a, b)| (matrix_in(f, a, n), matrix_in(f, b, n))))
    ) {
        let u = Subspace::from_matrix(&u);
        let w = Subspace::from_matrix(&w);
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&w));
        prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
    }

    #[test]
    fn change_of_basis_preserves_structure(
        (idx, p) in (0usize..24).prop_flat_map(|i| (Just(i), matrix_in(FieldSpec::gf(3), 5, 5)))
    ) {
        let fixtures = standard_fixtures(FieldSpec::gf(3), 5);
        let l = &fixtures[idx % fixtures.len()];
        let n = l.dim();
        let p = p.block(0, n, 0, n);
        prop_assume!(p.is_invertible());
        let t = l.change_of_basis(&p).unwrap();
        prop_assert!(t.is_leibniz());
        prop_assert_eq!(t.is_lie().unwrap(), l.is_lie().unwrap());
        prop_assert_eq!(t.center().dim(), l.center().dim());
        prop_assert_eq!(t.squares_ideal().unwrap().dim(), l.squares_ideal().unwrap().dim());
        prop_assert_eq!(series(&t).unwrap().derived_dims(), series(l).unwrap().derived_dims());
        prop_assert_eq!(series(&t).unwrap().lower_central_dims(), series(l).unwrap().lower_central_dims());
        prop_assert_eq!(&t.change_of_basis(&p.inverse().unwrap()).unwrap(), l);
        // Oracle: the bracket of transported basis vectors, computed by hand.
        for i in 0..n {
            for j in 0..n {
                let lhs = l.bracket(p.row(i), p.row(j)).unwrap();
                let rhs = p.apply_row(t.product(i, j)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

/// Subspaces counted as distinct RREF spans of every `d`-tuple of vectors.
fn brute_subspace_count(f: FieldSpec, n: usize, d: usize) -> usize {
    let p = f.modulus().unwrap();
    let vectors: Vec<Vec<Scalar>> = (0..p.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let r = code % p;
                    code /= p;
                    f.residue(r)
                })
                .collect()
        })
        .collect();
    let mut seen = HashSet::new();
    let mut idx = vec![0usize; d];
    loop {
        let rows: Vec<Vec<Scalar>> = idx.iter().map(|&i| vectors[i].clone()).collect();
        let s = Subspace::span(f, n, &rows).unwrap();
        if s.dim() == d {
            seen.insert(s);
        }
        let mut k = 0;
        loop {
            if k == d {
                return seen.len();
            }
            idx[k] += 1;
            if idx[k] < vectors.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn gaussian_counts_against_enumeration_and_brute_force() {
    for p in [2u64, 3] {
        let f = FieldSpec::gf(p);
        for n in 0..=5 {
            for d in 0..=n {
                let enumerated = enumerate_subspaces(n, d, f).unwrap().count() as u128;
                // Oracle: ordered bases of a d-space divided by |GL_d|.
                let (mut num, mut den) = (1u128, 1u128);
                for i in 0..d as u32 {
                    num *= u128::from(p).pow(n as u32) - u128::from(p).pow(i);
                    den *= u128::from(p).pow(d as u32) - u128::from(p).pow(i);
                }
                assert_eq!(enumerated, num / den, "GF({p}) n={n} d={d}");
                assert_eq!(gaussian_binomial(n, d, p), num / den);
                if p.pow(n as u32 * d as u32) <= 100_000 {
                    assert_eq!(brute_subspace_count(f, n, d) as u128, num / den, "brute GF({p}) n={n} d={d}");
                }
            }
        }
    }
}

#[test]
fn irreducibility_against_factorizations() {
    for p in [3u64, 5, 7, 11] {
        let f = FieldSpec::gf(p);
        // Oracle: the reducible monic quadratics are exactly (t − a)(t − b).
        let mut reducible = HashSet::new();
        for a in 0..p {
            for b in 0..p {
                reducible.insert(((2 * p - a - b) % p, (a * b) % p));
            }
        }
        for c1 in 0..p {
            for c0 in 0..p {
                let q = QuadraticPoly::new(f.residue(c1), f.residue(c0));
                assert_eq!(q.is_irreducible(), !reducible.contains(&(c1, c0)), "GF({p}) t^2+{c1}t+{c0}");
            }
        }
    }
    // Over Q a monic integer quadratic splits iff it has an integer root
    // dividing c0 (or c0 = 0).
    let q = FieldSpec::Rationals;
    for c1 in -6i64..=6 {
        for c0 in -12i64..=12 {
            let has_root = c0 == 0 || (1..=c0.abs()).filter(|r| c0 % r == 0).any(|r| {
                [r, -r].iter().any(|&t| t * t + c1 * t + c0 == 0)
            });
            let poly = QuadraticPoly::new(q.from_i64(c1), q.from_i64(c0));
            assert_eq!(poly.is_irreducible(), !has_root, "t^2+{c1}t+{c0}");
        }
    }
}

#[test]
fn bracket_is_bilinear_on_fixtures() {
    let f = FieldSpec::gf(5);
    for l in standard_fixtures(f, 5) {
        let n = l.dim();
        let u: Vec<Scalar> = (0..n).map(|i| f.from_i64(i as i64 + 1)).collect();
        let v: Vec<Scalar> = (0..n).map(|i| f.from_i64(2 * i as i64 - 1)).collect();
        let two = f.from_i64(2);
        let u2: Vec<Scalar> = u.iter().map(|c| &two * c).collect();
        let lhs = l.bracket(&u2, &v).unwrap();
        let rhs: Vec<Scalar> = l.bracket(&u, &v).unwrap().iter().map(|c| &two * c).collect();
        assert_eq!(lhs, rhs);
    }
}
