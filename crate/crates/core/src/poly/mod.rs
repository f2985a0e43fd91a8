//! Exact multivariate polynomials over ℚ.

mod matrix;
mod monomial;
mod polynomial;
pub mod rational;

pub use matrix::RatMatrix;
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{Degree, Poly, Ring};
pub use rational::Rational;


#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::rational::{int, ratio};
    use super::*;
    use crate::expr_io::parse_poly;

    fn xy() -> Arc<Ring> {
        Ring::new(["x", "y"]).unwrap()
    }

    fn p(ring: &Arc<Ring>, s: &str) -> Poly {
        parse_poly(s, ring).unwrap()
    }

    #[test]
    fn addition_cancels() {
        let r = xy();
        assert_eq!(&p(&r, "x+y") + &p(&r, "x-y"), p(&r, "2*x"));
        assert_eq!(&p(&r, "x^2*y") + &Poly::zero(&r), p(&r, "x^2*y"));
        assert_eq!(&p(&r, "y^2-x^3") + &p(&r, "x^3"), p(&r, "y^2"));
    }

    #[test]
    fn multiplication() {
        let r = xy();
        assert_eq!(&p(&r, "x+y") * &p(&r, "x-y"), p(&r, "x^2-y^2"));
        assert_eq!(&p(&r, "3*x - 1/2") * &Poly::one(&r), p(&r, "3*x - 1/2"));
        let t = Ring::new(["t"]).unwrap();
        let prod = &(&p(&t, "t-1") * &p(&t, "t+1")) * &p(&t, "t");
        assert_eq!(prod, p(&t, "t^3-t"));
    }

    #[test]
    fn ring_mismatch_is_an_input_error() {
        let a = p(&xy(), "x");
        let b = p(&Ring::new(["x", "z"]).unwrap(), "x");
        assert!(matches!(a.checked_add(&b), Err(crate::Error::Input(_))));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn derivatives() {
        let r = Ring::new(["x", "t"]).unwrap();
        assert_eq!(p(&r, "t^2-x^3").partial_derivative(1), p(&r, "2*t"));
        assert_eq!(p(&r, "x^3").partial_derivative(1), Poly::zero(&r));
        assert_eq!(p(&r, "t^3-3*x*t").partial_derivative(1), p(&r, "3*t^2-3*x"));
    }

    #[test]
    fn substitution_along_the_cusp_graph() {
        let src = Ring::new(["x", "w"]).unwrap();
        let tgt = Ring::new(["t"]).unwrap();
        let mut images = BTreeMap::new();
        images.insert(0, p(&tgt, "t^2"));
        images.insert(1, p(&tgt, "t"));
        assert!(p(&src, "w^2-x").substitute(&tgt, &images).unwrap().is_zero());

        let r = xy();
        let q = p(&r, "x^3*y - 7/3*y + 1");
        assert_eq!(q.substitute(&r, &BTreeMap::new()).unwrap(), q);

        let zw = Ring::new(["z", "w1"]).unwrap();
        let zy = Ring::new(["z", "y"]).unwrap();
        let mut images = BTreeMap::new();
        images.insert(1, p(&zy, "y"));
        assert_eq!(p(&zw, "z*w1").substitute(&zy, &images).unwrap(), p(&zy, "z*y"));
    }

    #[test]
    fn linear_changes() {
        let r = xy();
        let q = p(&r, "y^2 - x^3 + 2*x*y");
        assert_eq!(q.linear_change(&RatMatrix::identity(2)).unwrap(), q);
        let swap = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(p(&r, "x").linear_change(&swap).unwrap(), p(&r, "y"));
        let l = RatMatrix::from_ints(&[&[1, 2], &[-1, -1]]).unwrap();
        let back = q
            .linear_change(&l)
            .unwrap()
            .linear_change(&l.inverse().unwrap())
            .unwrap();
        assert_eq!(back, q);
        let singular = RatMatrix::from_ints(&[&[1, 1], &[1, 1]]).unwrap();
        assert!(q.linear_change(&singular).is_err());
    }

    #[test]
    fn content_normalisation() {
        let r = xy();
        assert_eq!(p(&r, "2/3*x + 4/3*y").content_normalize().unwrap(), p(&r, "x + 2*y"));
        let (n, unit) = p(&r, "-x^2").content_normalize_with_unit().unwrap();
        assert_eq!(n, p(&r, "x^2"));
        assert_eq!(unit, int(-1));
        assert_eq!(Poly::from_int(&r, 5).content_normalize().unwrap(), Poly::one(&r));
        assert!(Poly::zero(&r).content_normalize().is_err());
        assert_eq!(
            p(&r, "y^2-x^3").content_normalize_with_unit().unwrap().1,
            int(-1)
        );
        assert_eq!(p(&r, "3/4*x").content_normalize_with_unit().unwrap().1, ratio(4, 3));
    }

    #[test]
    fn zero_degree_sentinel() {
        let r = xy();
        assert_eq!(Poly::zero(&r).total_degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(p(&r, "x^2*y + y").total_degree(), Degree::Finite(3));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -4i64..5), 0..5).prop_map(|terms| {
            let r = Ring::new(["x", "y", "z"]).unwrap();
            Poly::from_terms(
                &r,
                terms
                    .into_iter()
                    .map(|(a, b, c, k)| (Monomial::from_exponents(&[a, b, c]), int(k))),
            )
        })
    }

    fn unimodular() -> impl Strategy<Value = RatMatrix> {
        (-2i64..3, -2i64..3, -2i64..3).prop_map(|(a, b, c)| {
            // lower times upper unitriangular
            let lo = RatMatrix::from_ints(&[&[1, 0, 0], &[a, 1, 0], &[b, c, 1]]).unwrap();
            let up = RatMatrix::from_ints(&[&[1, c, a], &[0, 1, b], &[0, 0, 1]]).unwrap();
            lo.mul(&up)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn degree_is_additive(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let da = a.total_degree().finite().unwrap();
            let db = b.total_degree().finite().unwrap();
            prop_assert_eq!((&a * &b).total_degree(), Degree::Finite(da + db));
        }

        #[test]
        fn linear_change_is_a_homomorphism(a in small_poly(), b in small_poly(), l in unimodular()) {
            let lhs = (&a * &b).linear_change(&l).unwrap();
            let rhs = &a.linear_change(&l).unwrap() * &b.linear_change(&l).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn content_normalize_is_idempotent(a in small_poly()) {
            prop_assume!(!a.is_zero());
            let (n, unit) = a.content_normalize_with_unit().unwrap();
            prop_assert_eq!(n.content_normalize().unwrap(), n.clone());
            prop_assert_eq!(a.scale(&unit), n);
        }
    }
}
