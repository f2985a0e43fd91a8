use num_complex::Complex64;

use super::roots::roots_univariate;
use crate::error::{Error, Result};
use crate::poly::rational::to_f64;
use crate::poly::Rational;
use crate::variety::{NoetherFrame, VarietyModel};

/// Cap on candidate tuples assembled from per-variable roots.
pub const MAX_CANDIDATES: usize = 10_000;

/// A point of `ℂ^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint(pub Vec<Complex64>);

impl ComplexPoint {
    pub fn max_norm(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    fn distance(&self, other: &ComplexPoint) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

/// Points of `A` over a base point, in original coordinates.
#[derive(Debug, Clone)]
pub struct Fiber {
    pub points: Vec<ComplexPoint>,
    pub expected: u32,
    /// Set when the count differs from the covering number (the base point
    /// is probably near the branch locus).
    pub warning: Option<String>,
}

/// Solves for the fiber of the frame projection over the rational base point
/// `base` (frame coordinates).
pub fn fiber_solve(frame: &NoetherFrame, variety: &VarietyModel, base: &[Rational]) -> Result<Fiber> {
    let m = variety.ambient_dim();
    let k = frame.base_dim;
    if base.len() != k {
        return Err(Error::input(format!(
            "base point has {} coordinates, expected {k}",
            base.len()
        )));
    }
    let base_c: Vec<Complex64> = base.iter().map(|v| Complex64::new(to_f64(v), 0.0)).collect();
    if k == m {
        return Ok(Fiber {
            points: vec![to_original(frame, &base_c)],
            expected: 1,
            warning: None,
        });
    }
    let mut fixed: Vec<Option<Rational>> = vec![None; m];
    for (i, v) in base.iter().enumerate() {
        fixed[i] = Some(v.clone());
    }
    // candidate values per non-base variable, t first
    let mut choices: Vec<Vec<Complex64>> = Vec::with_capacity(m - k);
    for w in &frame.witnesses {
        let coeffs: Vec<Complex64> = w
            .poly
            .univariate_at(w.var, &fixed)
            .iter()
            .map(|c| Complex64::new(to_f64(c), 0.0))
            .collect();
        let roots = roots_univariate(&coeffs)?;
        choices.push(dedupe_values(roots));
    }
    let total: usize = choices.iter().map(Vec::len).product();
    if total > MAX_CANDIDATES {
        return Err(Error::Numeric(format!(
            "{total} candidate fiber tuples exceed the cap of {MAX_CANDIDATES}"
        )));
    }
    let tol = variety.residual_tol();
    let gens = frame.frame_ideal.generators();
    let mut accepted: Vec<ComplexPoint> = Vec::new();
    let mut index = vec![0usize; choices.len()];
    'tuples: loop {
        let mut pt = base_c.clone();
        pt.extend(index.iter().zip(&choices).map(|(&i, c)| c[i]));
        let ok = gens.iter().all(|g| {
            let res = g.eval_complex(&pt).norm();
            let scale = g.magnitude_at(&pt);
            res <= tol * scale.max(f64::MIN_POSITIVE)
        });
        if ok {
            let cp = ComplexPoint(pt);
            let sep = 1e-6 * cp.max_norm().max(1.0);
            if accepted.iter().all(|a| a.distance(&cp) > sep) {
                accepted.push(cp);
            }
        }
        // odometer over the choices
        for slot in (0..index.len()).rev() {
            index[slot] += 1;
            if index[slot] < choices[slot].len() {
                continue 'tuples;
            }
            index[slot] = 0;
        }
        break;
    }
    let expected = frame.covering_number.max(1);
    let warning = (accepted.len() != expected as usize && frame.covering_number > 0).then(|| {
        format!(
            "found {} fiber points, expected {expected}; base point may be near the branch locus",
            accepted.len()
        )
    });
    Ok(Fiber {
        points: accepted.iter().map(|p| to_original(frame, &p.0)).collect(),
        expected,
        warning,
    })
}

fn to_original(frame: &NoetherFrame, z: &[Complex64]) -> ComplexPoint {
    let n = z.len();
    let rows = frame.matrix.rows();
    ComplexPoint(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| z[j] * to_f64(&rows[i][j]))
                    .sum::<Complex64>()
            })
            .collect(),
    )
}

fn dedupe_values(values: Vec<Complex64>) -> Vec<Complex64> {
    let scale = values.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let mut out: Vec<Complex64> = Vec::new();
    for v in values {
        if out.iter().all(|u| (u - v).norm() > 1e-7 * scale) {
            out.push(v);
        }
    }
    out
}
