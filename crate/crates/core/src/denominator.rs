//! Universal denominators `Q = ∂P/∂t` and rational representations `f = R/Q`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::function::CAlgFunction;
use crate::groebner::{eliminate, is_monic_in, member, Ideal};
use crate::poly::{Degree, Poly};
use crate::variety::{noether_frame, NoetherFrame, VarietyModel};

/// Generator of `I' ∩ ℚ[z'_1..z'_k, t]` where `t = z'_{k+1}`, made monic in
/// `t`. Fails unless that elimination ideal is principal with a generator of
/// constant leading coefficient in `t`.
pub fn minimal_unitary_poly_in(frame_ideal: &Ideal, k: usize) -> Result<Poly> {
    let keep: Vec<usize> = (0..=k).collect();
    let e = eliminate(frame_ideal, &keep)?;
    let [p] = e.generators() else {
        return Err(Error::input(format!(
            "projected hypersurface is cut out by {} generators, not one",
            e.generators().len()
        )));
    };
    if !is_monic_in(p, k) {
        return Err(Error::input("projected hypersurface is not monic in t"));
    }
    let Degree::Finite(d) = p.degree_in(k) else {
        unreachable!("monic polynomials are nonzero")
    };
    let lc = p.coeff_of_power(k, d).as_constant().expect("checked monic");
    Ok(p.scale(&lc.recip()))
}

/// `P(x, t)` for an accepted frame (frame coordinates); `None` when `k = m`.
pub fn minimal_unitary_poly(variety: &VarietyModel, frame: &NoetherFrame) -> Result<Option<Poly>> {
    if frame.t_index.is_none() {
        return Ok(None);
    }
    if let Some(p) = &frame.unitary {
        return Ok(Some(p.clone()));
    }
    let frame_ideal = variety.ideal().linear_change(&frame.matrix)?;
    minimal_unitary_poly_in(&frame_ideal, frame.base_dim).map(Some)
}

#[derive(Debug, Clone)]
pub struct UniversalDenominator {
    pub frame: Arc<NoetherFrame>,
    /// `P` in frame coordinates; absent for the full space.
    pub unitary: Option<Poly>,
    /// `Q` in original coordinates.
    pub q: Poly,
}

impl UniversalDenominator {
    pub fn covering_number(&self) -> u32 {
        self.frame.covering_number
    }
}

/// `Q = ∂P/∂t` pulled back to the original coordinates, for the frame found
/// with `seed`.
pub fn universal_denominator(variety: &VarietyModel, seed: u64) -> Result<UniversalDenominator> {
    let frame = noether_frame(variety, seed)?;
    universal_denominator_in(variety, frame)
}

pub fn universal_denominator_in(variety: &VarietyModel, frame: Arc<NoetherFrame>) -> Result<UniversalDenominator> {
    let unitary = minimal_unitary_poly(variety, &frame)?;
    let q = match (&unitary, frame.t_index) {
        (Some(p), Some(t)) => frame.to_original(&p.partial_derivative(t))?,
        _ => Poly::one(variety.ring()),
    };
    if variety.vanishes(&q)? {
        return Err(Error::Verification(format!(
            "universal denominator {q} vanishes on `{}`",
            variety.name()
        )));
    }
    Ok(UniversalDenominator { frame, unitary, q })
}

/// `R` with `R·s ≡ r·Q (mod I(A))`: the cofactor of `s` in a membership
/// witness for `r·Q ∈ ⟨s⟩ + I(A)`. Unique only modulo `I(A)`.
pub fn represent(f: &CAlgFunction, variety: &VarietyModel, d: &UniversalDenominator) -> Result<Poly> {
    let target = &f.numerator * &d.q;
    if let Some(c) = f.denominator.as_constant() {
        return Ok(target.scale(&c.recip()));
    }
    let ideal = variety.ideal().with_leading(std::slice::from_ref(&f.denominator))?;
    let m = member(&target, &ideal)?;
    let Some(cof) = m.cofactors else {
        return Err(Error::NoCertificate {
            stage: crate::error::CertificateStage::Extension,
            detail: format!(
                "({}) * ({}) is not in <{}> + I({}); `{}` is not representable over Q",
                f.numerator,
                d.q,
                f.denominator,
                variety.name(),
                f.name
            ),
        });
    };
    let r = variety.ideal().normal_form(&cof[0])?;
    let residual = variety.ideal().normal_form(&(&(&r * &f.denominator) - &target))?;
    if !residual.is_zero() {
        return Err(Error::Internal(format!("representation of `{}` leaves {residual}", f.name)));
    }
    Ok(r)
}

/// Outcome of representing one test function.
#[derive(Debug, Clone)]
pub struct RepresentCheck {
    pub function: String,
    pub r: Option<Poly>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone)]
pub struct DenominatorCheck {
    pub q_nonvanishing: bool,
    pub results: Vec<RepresentCheck>,
}

impl DenominatorCheck {
    pub fn passed(&self) -> bool {
        self.q_nonvanishing && self.results.iter().all(|r| r.r.is_some())
    }
}

/// Re-checks `Q ∉ I(A)` and tries `represent` on each test function.
pub fn check_denominator(variety: &VarietyModel, d: &UniversalDenominator, testfns: &[CAlgFunction]) -> Result<DenominatorCheck> {
    let q_nonvanishing = !variety.vanishes(&d.q)?;
    let mut results = Vec::new();
    for f in testfns {
        results.push(match represent(f, variety, d) {
            Ok(r) => RepresentCheck {
                function: f.name.clone(),
                r: Some(r),
                detail: None,
            },
            Err(e @ (Error::NoCertificate { .. } | Error::Input(_))) => RepresentCheck {
                function: f.name.clone(),
                r: None,
                detail: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        });
    }
    Ok(DenominatorCheck {
        q_nonvanishing,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr_io::parse_poly;
    use crate::poly::{RatMatrix, Ring};
    use crate::variety::frame_from_matrix;

    fn model(vars: &[&str], gens: &[&str], dim: usize) -> VarietyModel {
        let r = Ring::new(vars.iter().copied()).unwrap();
        let gens = gens.iter().map(|g| parse_poly(g, &r).unwrap()).collect();
        VarietyModel::new("A", Ideal::new(&r, gens).unwrap(), dim).unwrap()
    }

    fn func(a: &VarietyModel, num: &str, den: &str) -> CAlgFunction {
        let r = a.ring();
        CAlgFunction::new(a, "f", parse_poly(num, r).unwrap(), parse_poly(den, r).unwrap()).unwrap()
    }

    #[test]
    fn cusp_denominator_and_representation() {
        let a = model(&["x", "y"], &["y^2 - x^3"], 1);
        let d = universal_denominator(&a, 0).unwrap();
        assert_eq!(d.unitary.as_ref().unwrap(), &parse_poly("y^2 - x^3", a.ring()).unwrap());
        assert_eq!(d.q, parse_poly("2*y", a.ring()).unwrap());
        let r = represent(&func(&a, "y", "x"), &a, &d).unwrap();
        assert_eq!(r, parse_poly("2*x^2", a.ring()).unwrap());
    }

    #[test]
    fn polynomial_functions_clear_trivially() {
        let a = model(&["x", "y"], &["y^2 - x^3"], 1);
        let d = universal_denominator(&a, 0).unwrap();
        let r = represent(&func(&a, "x + y", "1"), &a, &d).unwrap();
        assert_eq!(r, parse_poly("2*x*y + 2*y^2", a.ring()).unwrap());
    }

    #[test]
    fn node_representation() {
        let a = model(&["x", "y"], &["y^2 - x^2*(x + 1)"], 1);
        let d = universal_denominator(&a, 0).unwrap();
        assert_eq!(d.q, parse_poly("2*y", a.ring()).unwrap());
        let r = represent(&func(&a, "y", "x"), &a, &d).unwrap();
        assert!(a.ideal().contains(&(&r - &parse_poly("2*x*(x+1)", a.ring()).unwrap())).unwrap());
    }

    #[test]
    fn full_space_has_unit_denominator() {
        let a = model(&["x", "y"], &[], 2);
        let d = universal_denominator(&a, 0).unwrap();
        assert!(d.q.is_one() && d.unitary.is_none());
    }

    #[test]
    fn cross_in_the_diagonal_frame() {
        let a = model(&["x", "y"], &["x*y"], 1);
        let l = RatMatrix::new(vec![
            vec![crate::poly::rational::ratio(1, 2), crate::poly::rational::ratio(1, 2)],
            vec![crate::poly::rational::ratio(1, 2), crate::poly::rational::ratio(-1, 2)],
        ])
        .unwrap();
        let frame = Arc::new(frame_from_matrix(&a, l, 0).unwrap());
        let d = universal_denominator_in(&a, frame).unwrap();
        assert_eq!(d.unitary.as_ref().unwrap(), &parse_poly("y^2 - x^2", a.ring()).unwrap());
        assert_eq!(d.q, parse_poly("2*x - 2*y", a.ring()).unwrap());
    }

    #[test]
    fn cross_with_random_frame_is_a_denominator() {
        let a = model(&["x", "y"], &["x*y"], 1);
        let d = universal_denominator(&a, 0).unwrap();
        assert!(!a.vanishes(&d.q).unwrap());
        assert_eq!(d.covering_number(), 2);
    }

    #[test]
    fn check_reports() {
        let a = model(&["x", "y"], &["y^2 - x^3"], 1);
        let d = universal_denominator(&a, 0).unwrap();
        let ok = check_denominator(&a, &d, &[func(&a, "y", "x")]).unwrap();
        assert!(ok.passed());
        let bad = check_denominator(&a, &d, &[func(&a, "1", "x")]).unwrap();
        assert!(!bad.passed());
        assert!(bad.results[0].detail.as_ref().unwrap().contains("not in"));
        let empty = check_denominator(&a, &d, &[]).unwrap();
        assert!(empty.passed() && empty.q_nonvanishing);
    }

    #[test]
    fn representations_agree_across_seeds() {
        let a = model(&["x", "y"], &["x*y"], 1);
        let f = func(&a, "x^2", "x + y");
        let d1 = universal_denominator(&a, 1).unwrap();
        let d2 = universal_denominator(&a, 2).unwrap();
        let r1 = represent(&f, &a, &d1).unwrap();
        let r2 = represent(&f, &a, &d2).unwrap();
        assert!(a.ideal().contains(&(&(&r1 * &d2.q) - &(&r2 * &d1.q))).unwrap());
    }
}
