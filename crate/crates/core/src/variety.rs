//! Affine algebraic sets with an asserted pure dimension, and Noether frames:
//! linear coordinate changes after which the projection onto the first `k`
//! coordinates is proper.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::denominator::minimal_unitary_poly_in;
use crate::error::{Error, Result};
use crate::groebner::{eliminate, is_monic_in, leading_monomials, Ideal};
use crate::growth::fiber_solve;
use crate::poly::rational::ratio;
use crate::poly::{Degree, Poly, RatMatrix, Rational, Ring};

/// Random coordinate changes tried after the identity.
pub const FRAME_ATTEMPTS: usize = 64;
/// Base points used to cross-check the covering number numerically.
const CHECK_POINTS: usize = 3;

/// Krull dimension of `ℚ[vars]/I`: the size of the largest set of variables
/// containing the support of no leading monomial.
pub fn dimension(ideal: &Ideal) -> Result<usize> {
    let n = ideal.ring().nvars();
    if ideal.generators().is_empty() {
        return Ok(n);
    }
    let lms = leading_monomials(ideal)?;
    if lms.iter().any(|m| m.is_one()) {
        return Err(Error::input("the unit ideal has no dimension (empty set)"));
    }
    let supports: Vec<u64> = lms
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0;
    for subset in 0u64..(1u64 << n) {
        let size = subset.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !subset != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// An affine algebraic set `A ⊂ ℂ^m` given by an ideal and an asserted pure
/// dimension (only the dimension value is verified).
#[derive(Clone)]
pub struct VarietyModel {
    name: String,
    ideal: Ideal,
    dim: usize,
    residual_tol: f64,
    frames: Arc<Mutex<BTreeMap<u64, Arc<NoetherFrame>>>>,
}

impl std::fmt::Debug for VarietyModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VarietyModel")
            .field("name", &self.name)
            .field("ideal", &self.ideal)
            .field("dim", &self.dim)
            .finish()
    }
}

impl VarietyModel {
    pub fn new(name: impl Into<String>, ideal: Ideal, asserted_dim: usize) -> Result<Self> {
        let name = name.into();
        let m = ideal.ring().nvars();
        if asserted_dim > m {
            return Err(Error::input(format!(
                "variety `{name}`: dimension {asserted_dim} exceeds ambient dimension {m}"
            )));
        }
        let actual = dimension(&ideal)?;
        if actual != asserted_dim {
            return Err(Error::input(format!(
                "variety `{name}`: asserted dimension {asserted_dim} but the ideal has dimension {actual}"
            )));
        }
        Ok(VarietyModel {
            name,
            ideal,
            dim: asserted_dim,
            residual_tol: 1e-6,
            frames: Arc::default(),
        })
    }

    /// Relative residual accepted when filtering numeric fiber points.
    pub fn with_residual_tol(mut self, tol: f64) -> Self {
        self.residual_tol = tol;
        self.frames = Arc::default();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.ideal.ring()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ring().nvars()
    }

    pub fn residual_tol(&self) -> f64 {
        self.residual_tol
    }

    /// Whether `p` vanishes identically on `A`, i.e. lies in `I(A)`.
    pub fn vanishes(&self, p: &Poly) -> Result<bool> {
        self.ideal.contains(p)
    }
}

/// A monic witness: a polynomial in `I(A)∘L` involving only the base
/// variables and `var`, with constant leading coefficient in `var`.
#[derive(Debug, Clone)]
pub struct MonicWitness {
    pub var: usize,
    pub poly: Poly,
}

/// A coordinate change `z = L·z'` after which `(z'_1..z'_k)` is a proper
/// projection of `A`; `z'_{k+1}` plays the role of the primitive coordinate `t`.
///
/// Frame-coordinate polynomials reuse the ambient variable names.
#[derive(Debug, Clone)]
pub struct NoetherFrame {
    pub matrix: RatMatrix,
    pub inverse: RatMatrix,
    pub base_dim: usize,
    pub t_index: Option<usize>,
    /// One witness for each variable beyond the base, `t` first.
    pub witnesses: Vec<MonicWitness>,
    /// `P(x, t)`, monic in `t`; absent when `k = m`.
    pub unitary: Option<Poly>,
    pub covering_number: u32,
    /// `I(A)∘L`.
    pub frame_ideal: Ideal,
}

impl NoetherFrame {
    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn witness_for(&self, var: usize) -> Option<&Poly> {
        self.witnesses.iter().find(|w| w.var == var).map(|w| &w.poly)
    }

    /// Rewrites an original-coordinate polynomial in frame coordinates (`p∘L`).
    pub fn to_frame(&self, p: &Poly) -> Result<Poly> {
        p.linear_change(&self.matrix)
    }

    /// A frame-coordinate polynomial written in the original coordinates.
    pub fn to_original(&self, p: &Poly) -> Result<Poly> {
        p.linear_change(&self.inverse)
    }
}

/// For each variable beyond the base, looks for an element of the
/// elimination ideal onto `base ∪ {v}` that is monic in `v`.
pub fn properness_check(ideal: &Ideal, l: &RatMatrix, base_dim: usize) -> Result<Option<Vec<MonicWitness>>> {
    let frame_ideal = ideal.linear_change(l)?;
    properness_in_frame(&frame_ideal, base_dim)
}

fn properness_in_frame(frame_ideal: &Ideal, base_dim: usize) -> Result<Option<Vec<MonicWitness>>> {
    let m = frame_ideal.ring().nvars();
    let mut witnesses = Vec::new();
    for v in base_dim..m {
        let keep: Vec<usize> = (0..base_dim).chain(std::iter::once(v)).collect();
        let e = eliminate(frame_ideal, &keep)?;
        let best = e
            .generators()
            .iter()
            .filter(|g| is_monic_in(g, v))
            .min_by_key(|g| (g.degree_in(v), g.nterms()));
        match best {
            Some(g) => {
                let lc = g
                    .coeff_of_power(v, g.degree_in(v).finite().unwrap())
                    .as_constant()
                    .unwrap();
                witnesses.push(MonicWitness {
                    var: v,
                    poly: g.scale(&lc.recip()),
                });
            }
            None => return Ok(None),
        }
    }
    Ok(Some(witnesses))
}

/// `deg_t P`, cross-checked against the number of distinct fiber points at
/// random base points.
pub fn covering_number(
    frame: &NoetherFrame,
    unitary: &Poly,
    variety: &VarietyModel,
    rng: &mut ChaCha8Rng,
) -> Result<u32> {
    let t = frame
        .t_index
        .ok_or_else(|| Error::input("full-space frame has no t coordinate"))?;
    let d = match unitary.degree_in(t) {
        Degree::Finite(d) if d > 0 => d,
        _ => return Err(Error::input("unitary polynomial has no positive degree in t")),
    };
    for _ in 0..CHECK_POINTS {
        let base = random_base_point(rng, frame.base_dim);
        let fiber = fiber_solve(frame, variety, &base)?;
        if fiber.points.len() != d as usize {
            return Err(Error::Numeric(format!(
                "found {} fiber points but deg_t P = {d}",
                fiber.points.len()
            )));
        }
    }
    Ok(d)
}

pub(crate) fn random_base_point(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    (0..k)
        .map(|_| {
            let v: i64 = rng.gen_range(500..5000);
            let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
            ratio(sign * v, 1000)
        })
        .collect()
}

/// Random unimodular matrix with entries in `-3..=3`.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = RatMatrix::from_ints(&refs).unwrap();
        let det = m.determinant();
        if det == Rational::one() || det == -Rational::one() {
            return m;
        }
    }
}

/// Finds a Noether frame: the identity first, then seeded random unimodular
/// changes until properness, a principal monic unitary polynomial and the
/// numeric covering-number check all pass.
pub fn noether_frame(variety: &VarietyModel, seed: u64) -> Result<Arc<NoetherFrame>> {
    if let Some(f) = variety.frames.lock().unwrap().get(&seed) {
        return Ok(f.clone());
    }
    let frame = Arc::new(search_frame(variety, seed)?);
    variety.frames.lock().unwrap().insert(seed, frame.clone());
    Ok(frame)
}

fn search_frame(variety: &VarietyModel, seed: u64) -> Result<NoetherFrame> {
    let m = variety.ambient_dim();
    let k = variety.dim();
    if k == m {
        return Ok(NoetherFrame {
            matrix: RatMatrix::identity(m),
            inverse: RatMatrix::identity(m),
            base_dim: m,
            t_index: None,
            witnesses: Vec::new(),
            unitary: None,
            covering_number: 1,
            frame_ideal: variety.ideal().clone(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_reason = String::new();
    let mut numeric_only = true;
    for attempt in 0..=FRAME_ATTEMPTS {
        let l = if attempt == 0 {
            RatMatrix::identity(m)
        } else {
            random_unimodular(&mut rng, m)
        };
        match try_frame(variety, l, &mut rng) {
            Ok(Some(frame)) => return Ok(frame),
            Ok(None) => {
                numeric_only = false;
                last_reason = "projection not proper".into();
            }
            Err(Error::Limit(msg)) => return Err(Error::Limit(msg)),
            Err(e) => {
                numeric_only &= matches!(e, Error::Numeric(_));
                last_reason = e.to_string();
            }
        }
    }
    let msg = format!(
        "no Noether frame for `{}` within {} attempts (last: {last_reason})",
        variety.name(),
        FRAME_ATTEMPTS + 1
    );
    // proper frames existed but the sheet count could not be confirmed
    Err(if numeric_only { Error::Numeric(msg) } else { Error::Limit(msg) })
}

/// Checks one candidate coordinate change; `Ok(None)` when not proper.
pub fn try_frame(variety: &VarietyModel, l: RatMatrix, rng: &mut ChaCha8Rng) -> Result<Option<NoetherFrame>> {
    let k = variety.dim();
    let inverse = l.inverse()?;
    let frame_ideal = variety.ideal().linear_change(&l)?;
    let Some(witnesses) = properness_in_frame(&frame_ideal, k)? else {
        return Ok(None);
    };
    let unitary = minimal_unitary_poly_in(&frame_ideal, k)?;
    let mut frame = NoetherFrame {
        matrix: l,
        inverse,
        base_dim: k,
        t_index: Some(k),
        witnesses,
        unitary: Some(unitary.clone()),
        covering_number: 0,
        frame_ideal,
    };
    frame.covering_number = covering_number(&frame, &unitary, variety, rng)?;
    Ok(Some(frame))
}

/// Builds a frame from a caller-chosen matrix (seeded numeric check).
pub fn frame_from_matrix(variety: &VarietyModel, l: RatMatrix, seed: u64) -> Result<NoetherFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    try_frame(variety, l, &mut rng)?
        .ok_or_else(|| Error::input("the given coordinate change does not give a proper projection"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr_io::parse_poly;

    fn model(vars: &[&str], gens: &[&str], dim: usize) -> VarietyModel {
        let r = Ring::new(vars.iter().copied()).unwrap();
        let gens = gens.iter().map(|g| parse_poly(g, &r).unwrap()).collect();
        VarietyModel::new("A", Ideal::new(&r, gens).unwrap(), dim).unwrap()
    }

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
        let r = Ring::new(vars.iter().copied()).unwrap();
        Ideal::new(&r, gens.iter().map(|g| parse_poly(g, &r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&ideal(&["x", "y"], &["y^2 - x^3"])).unwrap(), 1);
        assert_eq!(dimension(&ideal(&["x", "y", "z"], &["y - x^2", "z - x^3"])).unwrap(), 1);
        assert_eq!(dimension(&ideal(&["x", "y"], &["x*y"])).unwrap(), 1);
        assert_eq!(dimension(&ideal(&["x", "y"], &[])).unwrap(), 2);
        assert_eq!(dimension(&ideal(&["x", "y"], &["x", "y - 1"])).unwrap(), 0);
        assert!(dimension(&ideal(&["x", "y"], &["x", "1 - x"])).is_err());
    }

    #[test]
    fn dimension_is_invariant_under_coordinate_change() {
        let l = RatMatrix::from_ints(&[&[1, 2, 0], &[0, 1, -1], &[1, 1, 0]]).unwrap();
        for (gens, d) in [
            (vec!["y - x^2", "z - x^3"], 1),
            (vec!["x*y*z"], 2),
            (vec!["x^2 + y^2 + z^2 - 1", "x - y*z"], 1),
        ] {
            let i = ideal(&["x", "y", "z"], &gens);
            assert_eq!(dimension(&i.linear_change(&l).unwrap()).unwrap(), d);
        }
    }

    #[test]
    fn asserted_dimension_is_validated() {
        let r = Ring::new(["x", "y"]).unwrap();
        let i = Ideal::new(&r, vec![parse_poly("y^2-x^3", &r).unwrap()]).unwrap();
        assert!(VarietyModel::new("A", i.clone(), 2).is_err());
        assert!(VarietyModel::new("A", i.clone(), 3).is_err());
        assert!(VarietyModel::new("A", i, 1).is_ok());
    }

    #[test]
    fn cusp_identity_frame() {
        let a = model(&["x", "y"], &["y^2 - x^3"], 1);
        let f = noether_frame(&a, 0).unwrap();
        assert!(f.is_identity());
        assert_eq!(f.covering_number, 2);
        assert_eq!(f.t_index, Some(1));
        assert_eq!(f.witnesses[0].poly, parse_poly("y^2 - x^3", a.ring()).unwrap());
    }

    #[test]
    fn full_space_frame() {
        let a = model(&["x", "y"], &[], 2);
        let f = noether_frame(&a, 0).unwrap();
        assert!(f.is_identity() && f.witnesses.is_empty() && f.unitary.is_none());
        assert_eq!(f.covering_number, 1);
    }

    #[test]
    fn twisted_cubic_frame_has_one_sheet() {
        let a = model(&["x", "y", "z"], &["y - x^2", "z - x^3"], 1);
        let f = noether_frame(&a, 0).unwrap();
        assert_eq!(f.covering_number, 1);
    }

    #[test]
    fn properness_examples() {
        let cusp = ideal(&["x", "y"], &["y^2 - x^3"]);
        let w = properness_check(&cusp, &RatMatrix::identity(2), 1).unwrap().unwrap();
        assert_eq!(w[0].poly, parse_poly("y^2 - x^3", cusp.ring()).unwrap());
        // base y, v = x: swap coordinates so that y comes first
        let swap = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        let w = properness_check(&cusp, &swap, 1).unwrap().unwrap();
        assert!(is_monic_in(&w[0].poly, 1));
        let hyperbola = ideal(&["x", "y"], &["x*y - 1"]);
        assert!(properness_check(&hyperbola, &RatMatrix::identity(2), 1).unwrap().is_none());
    }

    #[test]
    fn cross_needs_a_generic_frame() {
        let a = model(&["x", "y"], &["x*y"], 1);
        let f = noether_frame(&a, 0).unwrap();
        assert!(!f.is_identity());
        assert_eq!(f.covering_number, 2);
        for w in &f.witnesses {
            assert!(f.frame_ideal.contains(&w.poly).unwrap());
            assert!(is_monic_in(&w.poly, w.var));
        }
    }

    #[test]
    fn cross_with_the_diagonal_frame() {
        // x = (u+v)/2, y = (u-v)/2
        let a = model(&["x", "y"], &["x*y"], 1);
        let h = ratio(1, 2);
        let l = RatMatrix::new(vec![vec![h.clone(), h.clone()], vec![h.clone(), -h]]).unwrap();
        let f = frame_from_matrix(&a, l, 0).unwrap();
        assert_eq!(f.covering_number, 2);
        let p = f.unitary.clone().unwrap();
        assert_eq!(p, parse_poly("y^2 - x^2", a.ring()).unwrap());
    }

    #[test]
    fn hyperbola_has_no_identity_frame_but_a_generic_one() {
        let a = model(&["x", "y"], &["x*y - 1"], 1);
        let f = noether_frame(&a, 3).unwrap();
        assert!(!f.is_identity());
        assert_eq!(f.covering_number, 2);
    }
}
