//! Nullstellensatz certificates `g^n = Σ q_i f_i` on `A`, computed on an
//! a-normalisation where all functions become polynomials.

use crate::anormalizer::{pullback_extend, pushdown, ANormalisation};
use crate::error::{CertificateStage, Error, Result};
use crate::function::CAlgFunction;
use crate::groebner::{radical_member, Ideal};
use crate::poly::Poly;
use crate::variety::VarietyModel;

#[derive(Debug, Clone)]
pub struct Certificate {
    pub n: u32,
    pub q: Vec<CAlgFunction>,
    /// `G^n = Σ w_i F_i + Σ v_j P_j` on the normalisation's ambient space.
    pub ambient: AmbientIdentity,
    /// Name of the normalisation the certificate was computed through.
    pub normalisation: String,
    /// Generator names of that normalisation.
    pub generators: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct AmbientIdentity {
    pub exponent: u32,
    pub g: Poly,
    pub fs: Vec<Poly>,
    /// Generators `P_j` of the graph ideal.
    pub relations: Vec<Poly>,
    /// `w_i` followed by `v_j`.
    pub cofactors: Vec<Poly>,
}

impl AmbientIdentity {
    pub fn holds(&self) -> bool {
        let rhs = self
            .fs
            .iter()
            .chain(&self.relations)
            .zip(&self.cofactors)
            .fold(Poly::zero(self.g.ring()), |acc, (f, c)| &acc + &(f * c));
        self.g.pow(self.exponent) == rhs
    }
}

/// Runs the pipeline: extend `g` and each `f_i` to the normalisation, test
/// radical membership there, push the cofactors down to `A`, then verify.
pub fn certificate(g: &CAlgFunction, fs: &[CAlgFunction], n: &ANormalisation) -> Result<Certificate> {
    let big_g = pullback_extend(g, n)?;
    let big_fs = fs
        .iter()
        .map(|f| pullback_extend(f, n))
        .collect::<Result<Vec<_>>>()?;
    let relations = n.graph_ideal().generators().to_vec();

    // zero generators are dropped by `Ideal`, so keep the index map
    let mut gens = Vec::new();
    let mut slots = Vec::new();
    for (i, p) in big_fs.iter().chain(&relations).enumerate() {
        if !p.is_zero() {
            gens.push(p.clone());
            slots.push(i);
        }
    }
    let ambient = Ideal::new(n.ring(), gens)?.with_limits(n.graph_ideal().limits());
    let rm = radical_member(&big_g, &ambient)?;
    let (Some(exp), Some(cof)) = (rm.n, rm.cofactors) else {
        return Err(Error::NoCertificate {
            stage: CertificateStage::RadicalMembership,
            detail: format!(
                "`{}` is not in the radical of the ideal of {} on `{}`",
                g.name,
                names(fs),
                n.graph.name()
            ),
        });
    };
    let mut cofactors = vec![Poly::zero(n.ring()); big_fs.len() + relations.len()];
    for (slot, c) in slots.into_iter().zip(cof) {
        cofactors[slot] = c;
    }
    let identity = AmbientIdentity {
        exponent: exp,
        g: big_g,
        fs: big_fs,
        relations,
        cofactors,
    };
    if !identity.holds() {
        return Err(Error::Internal("ambient certificate identity does not re-expand".into()));
    }
    let q = identity.cofactors[..fs.len()]
        .iter()
        .enumerate()
        .map(|(i, w)| pushdown(w, n, &format!("q{}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let cert = Certificate {
        n: exp,
        q,
        ambient: identity,
        normalisation: n.graph.name().to_string(),
        generators: n.generators.iter().map(|h| h.name.clone()).collect(),
    };
    if !verify_certificate(g, fs, &cert, &n.base)? {
        return Err(Error::Verification(format!(
            "certificate for `{}` does not descend to `{}`",
            g.name,
            n.base.name()
        )));
    }
    Ok(cert)
}

fn names(fs: &[CAlgFunction]) -> String {
    let list: Vec<&str> = fs.iter().map(|f| f.name.as_str()).collect();
    format!("[{}]", list.join(", "))
}

/// The cleared identity
/// `r_g^n Π s_i b_i − Σ a_i r_i (Π_{j≠i} s_j b_j) s_g^n ∈ I(A)`
/// for `g = r_g/s_g`, `f_i = r_i/s_i`, `q_i = a_i/b_i`.
pub fn certificate_residual(g: &CAlgFunction, fs: &[CAlgFunction], cert: &Certificate, variety: &VarietyModel) -> Result<Poly> {
    if cert.q.len() != fs.len() {
        return Err(Error::input(format!(
            "certificate has {} cofactors for {} functions",
            cert.q.len(),
            fs.len()
        )));
    }
    let ring = variety.ring();
    let cleared: Vec<Poly> = fs
        .iter()
        .zip(&cert.q)
        .map(|(f, q)| &f.denominator * &q.denominator)
        .collect();
    let all = cleared.iter().fold(Poly::one(ring), |acc, c| &acc * c);
    let sg_n = g.denominator.pow(cert.n);
    let mut diff = &g.numerator.pow(cert.n) * &all;
    for (i, (f, q)) in fs.iter().zip(&cert.q).enumerate() {
        let others = cleared
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Poly::one(ring), |acc, (_, c)| &acc * c);
        diff = &diff - &(&(&(&q.numerator * &f.numerator) * &others) * &sg_n);
    }
    variety.ideal().normal_form(&diff)
}

pub fn verify_certificate(g: &CAlgFunction, fs: &[CAlgFunction], cert: &Certificate, variety: &VarietyModel) -> Result<bool> {
    if cert.n == 0 {
        return Ok(false);
    }
    Ok(certificate_residual(g, fs, cert, variety)?.is_zero())
}

/// `1 = Σ q_i f_i` on `A`, when the `f_i` have no common zero.
pub fn unit_ideal_check(fs: &[CAlgFunction], n: &ANormalisation) -> Result<Certificate> {
    let one = CAlgFunction::polynomial(&n.base, "1", Poly::one(n.base.ring()))?;
    certificate(&one, fs, n)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::anormalizer::graph_ideal;
    use crate::expr_io::parse_poly;
    use crate::poly::Ring;

    fn model(vars: &[&str], gens: &[&str], dim: usize) -> Arc<VarietyModel> {
        let r = Ring::new(vars.iter().copied()).unwrap();
        let gens = gens.iter().map(|g| parse_poly(g, &r).unwrap()).collect();
        Arc::new(VarietyModel::new("A", Ideal::new(&r, gens).unwrap(), dim).unwrap())
    }

    fn func(a: &VarietyModel, name: &str, num: &str, den: &str) -> CAlgFunction {
        let r = a.ring();
        CAlgFunction::new(a, name, parse_poly(num, r).unwrap(), parse_poly(den, r).unwrap()).unwrap()
    }

    fn cusp_hat() -> (Arc<VarietyModel>, ANormalisation) {
        let a = model(&["x", "y"], &["y^2 - x^3"], 1);
        let n = graph_ideal(&a, &[func(&a, "h", "y", "x")]).unwrap();
        (a, n)
    }

    #[test]
    fn cusp_certificate() {
        let (a, n) = cusp_hat();
        let g = func(&a, "g", "y", "1");
        let fs = [func(&a, "f", "x", "1")];
        let c = certificate(&g, &fs, &n).unwrap();
        assert!(c.n <= 2);
        assert!(c.ambient.holds());
        assert!(verify_certificate(&g, &fs, &c, &a).unwrap());
        // on the normalisation y = w^3 ∈ ⟨w^2⟩, so n = 1 with q_1 = y/x;
        // through A itself it would be y^2 = x^2·x
        let expected = if c.n == 1 { func(&a, "q", "y", "x") } else { func(&a, "q", "x^2", "1") };
        assert!(c.q[0].congruent(&expected, a.ideal()).unwrap());

        let mut tampered = c.clone();
        tampered.q[0].numerator = &tampered.q[0].numerator + &tampered.q[0].denominator;
        assert!(!verify_certificate(&g, &fs, &tampered, &a).unwrap());
    }

    #[test]
    fn member_of_its_own_list() {
        let (a, n) = cusp_hat();
        let g = func(&a, "g", "y", "x");
        let c = certificate(&g, std::slice::from_ref(&g), &n).unwrap();
        assert_eq!(c.n, 1);
        assert!(c.q[0].congruent(&func(&a, "one", "1", "1"), a.ideal()).unwrap());
    }

    #[test]
    fn cross_certificates() {
        let a = model(&["x", "y"], &["x*y"], 1);
        let n = graph_ideal(&a, &[]).unwrap();
        let c = certificate(&func(&a, "g", "x*y", "1"), &[func(&a, "f", "1", "1")], &n).unwrap();
        assert_eq!(c.n, 1);
        let g = func(&a, "g", "x", "1");
        let fs = [func(&a, "f", "x + y", "1")];
        let c = certificate(&g, &fs, &n).unwrap();
        assert_eq!(c.n, 2);
        assert!(verify_certificate(&g, &fs, &c, &a).unwrap());
    }

    #[test]
    fn common_zero_means_no_certificate() {
        let (a, n) = cusp_hat();
        let g = func(&a, "g", "x + 1", "1");
        let fs = [func(&a, "f1", "x", "1"), func(&a, "f2", "y", "1")];
        let e = certificate(&g, &fs, &n).unwrap_err();
        assert!(matches!(e, Error::NoCertificate { stage: CertificateStage::RadicalMembership, .. }));
        assert!(e.to_string().starts_with("no certificate: radical membership failed"));
        // the witness: (0, 0) is a common zero where g = 1
        let origin = [crate::poly::rational::int(0), crate::poly::rational::int(0)];
        assert!(fs.iter().all(|f| f.numerator.eval_rational(&origin) == crate::poly::rational::int(0)));
        assert_ne!(g.numerator.eval_rational(&origin), crate::poly::rational::int(0));
        assert!(unit_ideal_check(&fs, &n).is_err());
    }

    #[test]
    fn insufficient_generators_fail_at_extension() {
        let a = model(&["x", "y"], &["y^2 - x^3"], 1);
        let n = graph_ideal(&a, &[]).unwrap();
        let e = certificate(&func(&a, "g", "y", "x"), &[func(&a, "f", "x", "1")], &n).unwrap_err();
        assert!(matches!(e, Error::NoCertificate { stage: CertificateStage::Extension, .. }));
    }

    #[test]
    fn unit_ideal() {
        let (a, n) = cusp_hat();
        let fs = [func(&a, "f1", "x - 1", "1"), func(&a, "f2", "y", "1")];
        let c = unit_ideal_check(&fs, &n).unwrap();
        assert_eq!(c.n, 1);
        let one = func(&a, "1", "1", "1");
        assert!(verify_certificate(&one, &fs, &c, &a).unwrap());

        let c = unit_ideal_check(&[func(&a, "f", "1", "1")], &n).unwrap();
        assert!(c.q[0].congruent(&one, a.ideal()).unwrap());
    }

    #[test]
    fn exponent_is_minimal() {
        let (a, n) = cusp_hat();
        let g = func(&a, "g", "y", "1");
        let fs = [func(&a, "f", "x", "1")];
        let c = certificate(&g, &fs, &n).unwrap();
        let ambient = Ideal::new(n.ring(), c.ambient.fs.iter().chain(&c.ambient.relations).cloned().collect()).unwrap();
        for k in 1..c.n {
            assert!(!ambient.contains(&c.ambient.g.pow(k)).unwrap());
        }
    }
}
