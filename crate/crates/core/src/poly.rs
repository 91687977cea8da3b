//! Monic quadratics: characteristic polynomials of 2x2 matrices.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

/// `t² + c1·t + c0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticPoly {
    pub c1: Scalar,
    pub c0: Scalar,
}

impl QuadraticPoly {
    pub fn new(c1: Scalar, c0: Scalar) -> Self {
        QuadraticPoly { c1, c0 }
    }

    pub fn field(&self) -> FieldSpec {
        self.c0.field()
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        &(&(t * t) + &(&self.c1 * t)) + &self.c0
    }

    pub fn discriminant(&self) -> Scalar {
        let f = self.field();
        &(&self.c1 * &self.c1) - &(&f.from_i64(4) * &self.c0)
    }

    /// No root in the field. Exhaustive over GF(p); a rational square test on
    /// the discriminant over Q.
    pub fn is_irreducible(&self) -> bool {
        match self.field().elements() {
            Some(elems) => elems.iter().all(|t| !self.eval(t).is_zero()),
            None => !self.discriminant().is_square(),
        }
    }

    /// Canonical representative of the class of `χ(t)` under `t ↦ c·t`
    /// rescaling, i.e. under replacing the underlying operator by a nonzero
    /// multiple. This is the basis-free part of `χ` for an operator defined up
    /// to scaling.
    pub fn scale_normalized(&self) -> QuadraticPoly {
        let f = self.field();
        if !self.c1.is_zero() {
            let inv = self.c1.inv().expect("nonzero");
            return QuadraticPoly::new(f.one(), &self.c0 * &(&inv * &inv));
        }
        QuadraticPoly::new(f.zero(), square_class_representative(&self.c0))
    }
}

/// Least element of `{c²·x : c ≠ 0}`: by residue value over GF(p), the signed
/// squarefree integer over Q.
fn square_class_representative(x: &Scalar) -> Scalar {
    match x {
        Scalar::Residue { value, modulus } => {
            if *value == 0 {
                return x.clone();
            }
            let p = *modulus as u128;
            let best = (1..p)
                .map(|c| ((c * c % p) * *value as u128 % p) as u64)
                .min()
                .expect("p > 1");
            Scalar::Residue {
                value: best,
                modulus: *modulus,
            }
        }
        Scalar::Rational(r) => {
            if r.is_zero() {
                return x.clone();
            }
            let prod: BigInt = r.numer() * r.denom();
            let sign = if prod.is_negative() { -BigInt::one() } else { BigInt::one() };
            Scalar::Rational(BigRational::from_integer(sign * squarefree_part(&prod.abs())))
        }
    }
}

fn squarefree_part(n: &BigInt) -> BigInt {
    let mut n = n.clone();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut odd = false;
        while (&n % &d).is_zero() {
            n /= &d;
            odd = !odd;
        }
        if odd {
            out *= &d;
        }
        d += 1;
    }
    if n > BigInt::one() {
        out *= n;
    }
    out
}

impl fmt::Display for QuadraticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^2")?;
        if !self.c1.is_zero() {
            write!(f, " + ({})t", self.c1)?;
        }
        if !self.c0.is_zero() {
            write!(f, " + ({})", self.c0)?;
        }
        Ok(())
    }
}

/// `t² − tr(m)·t + det(m)`.
pub fn char_poly_2x2(m: &Matrix) -> Result<QuadraticPoly> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::Shape(format!(
            "expected 2x2, found {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let tr = m.get(0, 0) + m.get(1, 1);
    let det = &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0));
    Ok(QuadraticPoly::new(-tr, det))
}

pub fn is_irreducible_quadratic(q: &QuadraticPoly, field: FieldSpec) -> bool {
    debug_assert_eq!(q.field(), field);
    q.is_irreducible()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: FieldSpec, c1: i64, c0: i64) -> QuadraticPoly {
        QuadraticPoly::new(f.from_i64(c1), f.from_i64(c0))
    }

    #[test]
    fn rotation_has_t2_plus_1() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_i64(q, 2, 2, &[0, 1, -1, 0]).unwrap();
        assert_eq!(char_poly_2x2(&m).unwrap(), poly(q, 0, 1));
    }

    #[test]
    fn identity_has_square_factor() {
        let q = FieldSpec::Rationals;
        let m = Matrix::identity(q, 2);
        assert_eq!(char_poly_2x2(&m).unwrap(), poly(q, -2, 1));
    }

    #[test]
    fn gf3_char_poly() {
        // det = -2 = 1 mod 3
        let f = FieldSpec::gf(3);
        let m = Matrix::from_i64(f, 2, 2, &[0, 1, 2, 0]).unwrap();
        assert_eq!(char_poly_2x2(&m).unwrap(), poly(f, 0, 1));
    }

    #[test]
    fn wrong_shape() {
        let m = Matrix::identity(FieldSpec::Rationals, 3);
        assert!(char_poly_2x2(&m).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        let f3 = FieldSpec::gf(3);
        assert!(is_irreducible_quadratic(&poly(f3, 0, 1), f3));
        let q = FieldSpec::Rationals;
        assert!(!is_irreducible_quadratic(&poly(q, 0, -1), q));
        assert!(is_irreducible_quadratic(&poly(q, 0, -2), q));
        assert!(is_irreducible_quadratic(&poly(q, 0, 1), q));
    }

    #[test]
    fn scale_normalization_is_class_invariant() {
        let f = FieldSpec::gf(5);
        let base = poly(f, 0, 2);
        for c in 1..5 {
            let c = f.from_i64(c);
            let scaled = QuadraticPoly::new(&c * &base.c1, &(&c * &c) * &base.c0);
            assert_eq!(scaled.scale_normalized(), base.scale_normalized());
        }
        let q = FieldSpec::Rationals;
        let a = QuadraticPoly::new(q.zero(), q.from_fraction(-8, 9).unwrap());
        assert_eq!(a.scale_normalized(), poly(q, 0, -2));
        let b = poly(q, 3, 5);
        assert_eq!(
            b.scale_normalized(),
            QuadraticPoly::new(q.one(), q.from_fraction(5, 9).unwrap())
        );
    }
}
