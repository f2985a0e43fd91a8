use std::sync::Arc;

use anorm_core::anormalizer::{graph_ideal, pullback_extend, verify_anormal_instance};
use anorm_core::denominator::{represent, universal_denominator};
use anorm_core::expr_io::{parse_job, parse_poly};
use anorm_core::function::CAlgFunction;
use anorm_core::groebner::{eliminate, ideal_equal, member, Ideal};
use anorm_core::growth::{estimate_growth, GrowthConfig};
use anorm_core::nullsatz::{certificate, verify_certificate};
use anorm_core::poly::Ring;
use anorm_core::variety::VarietyModel;
use proptest::prelude::*;

fn cusp() -> Arc<VarietyModel> {
    let r = Ring::new(["x", "y"]).unwrap();
    let i = Ideal::new(&r, vec![parse_poly("y^2 - x^3", &r).unwrap()]).unwrap();
    Arc::new(VarietyModel::new("A", i, 1).unwrap())
}

fn func(a: &VarietyModel, name: &str, num: &str, den: &str) -> CAlgFunction {
    let r = a.ring();
    CAlgFunction::new(a, name, parse_poly(num, r).unwrap(), parse_poly(den, r).unwrap()).unwrap()
}

#[test]
fn cusp_walkthrough_from_job_text() {
    let job = parse_job(include_str!("../../cli/corpus/cusp.job")).unwrap();
    assert_eq!(job.varieties.len(), 1);
    assert_eq!(job.functions.len(), 2);
    assert_eq!(job.tasks.len(), 5);
    let a = job.variety("A").unwrap();
    let d = universal_denominator(a, 0).unwrap();
    assert_eq!(d.q.to_string(), "2*y");
    let r = represent(job.function("f").unwrap(), a, &d).unwrap();
    assert_eq!(r.to_string(), "2*x^2");
}

#[test]
fn normalisation_matches_the_parametrisation() {
    let a = cusp();
    let n = graph_ideal(&a, &[func(&a, "h", "y", "x")]).unwrap();
    let r = n.ring();
    let param = Ideal::new(r, vec![parse_poly("x - w^2", r).unwrap(), parse_poly("y - w^3", r).unwrap()]).unwrap();
    assert!(ideal_equal(n.graph_ideal(), &param).unwrap());
    let down = eliminate(n.graph_ideal(), &[0, 1]).unwrap();
    let expected = Ideal::new(r, vec![parse_poly("y^2 - x^3", r).unwrap()]).unwrap();
    assert!(ideal_equal(&down, &expected).unwrap());
}

#[test]
fn y_over_x_is_not_polynomial_on_the_cusp() {
    let a = cusp();
    let r = a.ring();
    let i = a.ideal().with_leading(&[parse_poly("x", r).unwrap()]).unwrap();
    assert!(!member(&parse_poly("y", r).unwrap(), &i).unwrap().is_member);
}

#[test]
fn cross_is_a_normal() {
    let r = Ring::new(["x", "y"]).unwrap();
    let i = Ideal::new(&r, vec![parse_poly("x*y", &r).unwrap()]).unwrap();
    let a = Arc::new(VarietyModel::new("C", i, 1).unwrap());
    let n = graph_ideal(&a, &[]).unwrap();
    let corpus = [
        func(&a, "f1", "x^2 - y^3", "x + y"),
        func(&a, "f2", "x^3 + y^2 + x + y", "x + y"),
        func(&a, "f3", "x*(x^2 + 1) - 2*y^2 + 5", "1"),
    ];
    let checks = verify_anormal_instance(&n, &corpus).unwrap();
    assert!(checks.iter().all(|c| c.extension.is_some()));
}

#[test]
fn certificate_through_the_normalisation() {
    let a = cusp();
    let n = graph_ideal(&a, &[func(&a, "h", "y", "x")]).unwrap();
    let g = func(&a, "g", "y", "1");
    let fs = [func(&a, "f", "x", "1")];
    let c = certificate(&g, &fs, &n).unwrap();
    assert!(c.n <= 2);
    assert!(verify_certificate(&g, &fs, &c, &a).unwrap());
}

#[test]
fn growth_is_seed_reproducible() {
    let a = cusp();
    let f = func(&a, "f", "y", "x");
    let cfg = GrowthConfig {
        seed: 11,
        ..GrowthConfig::default()
    };
    let e1 = estimate_growth(&f, &a, &cfg).unwrap();
    let e2 = estimate_growth(&f, &a, &cfg).unwrap();
    assert_eq!(e1.slope.to_bits(), e2.slope.to_bits());
    assert_eq!(e1.snapped.unwrap().to_string(), "1/3");
}

fn small_poly() -> impl Strategy<Value = String> {
    prop::collection::vec((-3i64..=3, 0u32..=3, 0u32..=2), 1..=3).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, i, j)| format!("({c})*x^{i}*y^{j}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // p·(y/x) is continuous on the cusp for every polynomial p
    #[test]
    fn represent_identity_holds(p in small_poly()) {
        let a = cusp();
        let r = a.ring();
        let pp = parse_poly(&p, r).unwrap();
        prop_assume!(!a.ideal().contains(&pp).unwrap());
        let num = &pp * &parse_poly("y", r).unwrap();
        let f = CAlgFunction::new(&a, "f", num.clone(), parse_poly("x", r).unwrap()).unwrap();
        let d = universal_denominator(&a, 0).unwrap();
        let rr = represent(&f, &a, &d).unwrap();
        let diff = &(&rr * &f.denominator) - &(&num * &d.q);
        prop_assert!(a.ideal().contains(&diff).unwrap());

        let n = graph_ideal(&a, &[func(&a, "h", "y", "x")]).unwrap();
        let ext = pullback_extend(&f, &n).unwrap();
        let lifted = &(&ext * &f.denominator.embed(n.ring()).unwrap()) - &num.embed(n.ring()).unwrap();
        prop_assert!(n.graph_ideal().contains(&lifted).unwrap());
    }
}
