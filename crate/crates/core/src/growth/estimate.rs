use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fiber::fiber_solve;
use crate::anormalizer::{pullback_extend, ANormalisation};
use crate::error::{Error, Result};
use crate::function::CAlgFunction;
use crate::poly::rational::{from_f64_with_den, ratio, rationalize};
use crate::poly::Rational;
use crate::variety::{noether_frame, VarietyModel};

/// Slack allowed on each inequality of the sandwich check.
pub const PROP52_EPSILON: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthConfig {
    pub rmin: f64,
    pub rmax: f64,
    /// Number of geometrically spaced radii in `[rmin, rmax]`.
    pub decades: usize,
    /// Random directions, reused at every radius.
    pub samples: usize,
    pub seed: u64,
    pub snap_max_den: u32,
    pub snap_tol: f64,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig {
            rmin: 10.0,
            rmax: 1e6,
            decades: 6,
            samples: 4,
            seed: 0,
            snap_max_den: 12,
            snap_tol: 0.05,
        }
    }
}

impl GrowthConfig {
    fn validate(&self) -> Result<()> {
        if !(self.rmin > 0.0 && self.rmax > self.rmin && self.rmax.is_finite()) {
            return Err(Error::input(format!(
                "growth radii must satisfy 0 < rmin < rmax, got {} and {}",
                self.rmin, self.rmax
            )));
        }
        if self.decades < 2 || self.samples == 0 {
            return Err(Error::input("growth needs at least 2 radii and 1 sample"));
        }
        Ok(())
    }

    fn radii(&self) -> Vec<f64> {
        let n = self.decades;
        let ratio = (self.rmax / self.rmin).ln();
        (0..n)
            .map(|i| self.rmin * (ratio * i as f64 / (n - 1) as f64).exp())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEstimate {
    /// Least-squares slope of `log|f|` against `log(1 + ‖z‖)`.
    pub slope: f64,
    pub snapped: Option<Rational>,
    /// Largest deviation of an upper-half secant slope from `slope`.
    pub residual: f64,
    /// Secant slopes between consecutive radii.
    pub per_decade: Vec<f64>,
    pub samples_used: usize,
    pub config: GrowthConfig,
}

impl GrowthEstimate {
    fn constant(config: &GrowthConfig) -> Self {
        GrowthEstimate {
            slope: 0.0,
            snapped: Some(Rational::zero()),
            residual: 0.0,
            per_decade: vec![0.0; config.decades - 1],
            samples_used: 0,
            config: config.clone(),
        }
    }
}

/// Nearest `p/q` with `q ≤ max_den` within `tol` of `x`; ties go to the
/// smaller denominator.
pub fn snap_rational(x: f64, max_den: u32, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let mut best: Option<(f64, i64, i64)> = None;
    for q in 1..=max_den.max(1) as i64 {
        let p = (x * q as f64).round() as i64;
        let err = (x - p as f64 / q as f64).abs();
        if err <= tol && best.is_none_or(|(e, _, _)| err < e - 1e-12) {
            best = Some((err, p, q));
        }
    }
    best.map(|(_, p, q)| ratio(p, q))
}

fn directions(rng: &mut ChaCha8Rng, k: usize, count: usize) -> Vec<Vec<Rational>> {
    (0..count)
        .map(|_| {
            let mut d: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            let pin = rng.gen_range(0..k);
            d[pin] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            d.into_iter().map(|v| from_f64_with_den(v, 1_000_000)).collect()
        })
        .collect()
}

fn least_squares(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Estimates `ℬ(f)` on `A` in the maximum norm.
pub fn estimate_growth(f: &CAlgFunction, variety: &VarietyModel, cfg: &GrowthConfig) -> Result<GrowthEstimate> {
    cfg.validate()?;
    if variety.vanishes(&f.numerator)? {
        return Ok(GrowthEstimate::constant(cfg));
    }
    let frame = noether_frame(variety, cfg.seed)?;
    let k = frame.base_dim;
    if k == 0 {
        // finitely many points: bounded
        return Ok(GrowthEstimate::constant(cfg));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    let dirs = directions(&mut rng, k, cfg.samples);

    let mut envelope: Vec<(f64, f64)> = Vec::new();
    let mut samples_used = 0;
    let mut last_error = None;
    for radius in cfg.radii() {
        let r = rationalize(radius);
        let mut best: Option<(f64, f64)> = None;
        for d in &dirs {
            let base: Vec<Rational> = d.iter().map(|c| c * &r).collect();
            let fiber = match fiber_solve(&frame, variety, &base) {
                Ok(fb) => fb,
                Err(e @ Error::Numeric(_)) => {
                    last_error = Some(e);
                    continue;
                }
                Err(e) => return Err(e),
            };
            for pt in &fiber.points {
                let z = pt.coords();
                let den = f.denominator.eval_complex(z).norm();
                if den <= 1e-12 * f.denominator.magnitude_at(z) {
                    continue;
                }
                let num = f.numerator.eval_complex(z).norm();
                if num == 0.0 {
                    continue;
                }
                let x = (1.0 + pt.max_norm()).ln();
                let y = num.ln() - den.ln();
                samples_used += 1;
                if best.is_none_or(|(bx, by)| y > by || (y == by && x < bx)) {
                    best = Some((x, y));
                }
            }
        }
        if let Some(b) = best {
            envelope.push(b);
        }
    }
    if envelope.len() < 2 {
        return Err(Error::Numeric(format!(
            "growth of `{}`: usable samples at only {} radii{}",
            f.name,
            envelope.len(),
            last_error.map(|e| format!(" (last: {e})")).unwrap_or_default()
        )));
    }
    let per_decade: Vec<f64> = envelope
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
        .collect();
    let upper = envelope.len().div_ceil(2);
    let tail = &envelope[envelope.len() - upper.max(2)..];
    let slope = least_squares(tail);
    let tail_secants = &per_decade[per_decade.len() - (tail.len() - 1)..];
    let residual = tail_secants
        .iter()
        .fold(0.0f64, |m, s| m.max((s - slope).abs()));
    let converged = match per_decade.len() {
        0 | 1 => true,
        n => (per_decade[n - 1] - per_decade[n - 2]).abs() < cfg.snap_tol,
    };
    let snapped = if converged && slope.is_finite() {
        snap_rational(slope, cfg.snap_max_den, cfg.snap_tol)
    } else {
        None
    };
    Ok(GrowthEstimate {
        slope,
        snapped,
        residual,
        per_decade,
        samples_used,
        config: cfg.clone(),
    })
}

#[derive(Debug, Clone)]
pub struct Prop52Check {
    /// `ℬ(f)` on `A`.
    pub b_f: GrowthEstimate,
    /// `ℬ(f̂)` on `Â`.
    pub b_fhat: GrowthEstimate,
    /// `ℬ(h_i)` on `A`, one per generator.
    pub b_h: Vec<GrowthEstimate>,
    pub epsilon: f64,
    /// `ℬ(f) ≥ ℬ(f̂)`, within `epsilon`.
    pub upper_holds: bool,
    /// `ℬ(f̂) ≥ ℬ(f) / max{1, ℬ(h_i)}`, within `epsilon`.
    pub lower_holds: bool,
}

impl Prop52Check {
    pub fn holds(&self) -> bool {
        self.upper_holds && self.lower_holds
    }
}

/// Estimates the three growth exponents of the sandwich
/// `ℬ(f) ≥ ℬ(f̂) ≥ ℬ(f)/max{1, ℬ(h_i)}` and checks both inequalities.
pub fn check_prop52(f: &CAlgFunction, n: &ANormalisation, cfg: &GrowthConfig) -> Result<Prop52Check> {
    let b_f = estimate_growth(f, &n.base, cfg)?;
    let t = pullback_extend(f, n)?;
    let fhat = CAlgFunction::polynomial(&n.graph, format!("{}_hat", f.name), t)?;
    let b_fhat = estimate_growth(&fhat, &n.graph, cfg)?;
    let b_h = n
        .generators
        .iter()
        .map(|h| estimate_growth(h, &n.base, cfg))
        .collect::<Result<Vec<_>>>()?;
    let hmax = b_h.iter().fold(1.0f64, |m, e| m.max(e.slope));
    let eps = PROP52_EPSILON;
    Ok(Prop52Check {
        upper_holds: b_f.slope >= b_fhat.slope - eps,
        lower_holds: b_fhat.slope >= b_f.slope / hmax - eps,
        b_f,
        b_fhat,
        b_h,
        epsilon: eps,
    })
}
