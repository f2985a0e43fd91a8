//! All complex roots of a univariate polynomial by Aberth–Ehrlich iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 2000;

/// Roots of `Σ coeffs[k] t^k` (constant term first), with multiplicity.
pub fn roots_univariate(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Numeric("non-finite coefficient".into()));
    }
    while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err(Error::input("polynomial must have degree at least one"));
    }
    // exact zero roots
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let rest = &coeffs[zeros..];
    if rest.len() > 1 {
        roots.extend(aberth(rest)?);
    }
    let scale = roots.iter().fold(1.0f64, |s, r| s.max(r.norm()));
    let cmax = coeffs.iter().fold(0.0f64, |s, c| s.max(c.norm()));
    let bound = 1e-8 * cmax * scale.powi(coeffs.len() as i32 - 1);
    for r in &roots {
        let res = horner(&coeffs, *r).norm();
        if res.is_nan() || res > bound {
            return Err(Error::Numeric(format!(
                "root residual {res:e} exceeds bound {bound:e}"
            )));
        }
    }
    Ok(roots)
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Value, derivative and the rounding scale `Σ |a_k||z|^k` at `z`.
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let az = z.norm();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        mag = mag * az + c.norm();
    }
    (p, dp, mag)
}

fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }
    // start on a circle whose radius is the geometric mean of the root moduli
    let radius = monic[0].norm().powf(1.0 / n as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp, mag) = eval_with_derivative(&monic, z[i]);
            if p.norm() <= 4.0 * f64::EPSILON * mag {
                done[i] = true;
                continue;
            }
            all_done = false;
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let mut w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                w = ratio;
            }
            if !w.re.is_finite() || !w.im.is_finite() {
                // derivative vanished away from a root: nudge
                w = Complex64::new(radius.max(1.0) * 1e-3, radius.max(1.0) * 1e-3);
            }
            z[i] -= w;
            if w.norm() <= f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if all_done {
            return Ok(z);
        }
    }
    // the caller checks residuals; slow convergence near clusters is acceptable
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<f64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        v.into_iter().map(|z| z.re).collect()
    }

    #[test]
    fn unit_roots() {
        let r = roots_univariate(&[c(-1.0), c(0.0), c(1.0)]).unwrap();
        let r = sorted_re(r);
        assert!((r[0] + 1.0).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cusp_fiber_over_four() {
        // t^2 - 4^3
        let r = sorted_re(roots_univariate(&[c(-64.0), c(0.0), c(1.0)]).unwrap());
        assert!((r[0] + 8.0).abs() < 1e-12 && (r[1] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn triple_zero() {
        let r = roots_univariate(&[c(0.0), c(0.0), c(0.0), c(2.0)]).unwrap();
        assert_eq!(r, vec![c(0.0); 3]);
    }

    #[test]
    fn shifted_triple_root() {
        // (t-1)^3
        let r = roots_univariate(&[c(-1.0), c(3.0), c(-3.0), c(1.0)]).unwrap();
        for z in r {
            assert!((z - c(1.0)).norm() < 1e-4);
        }
    }

    #[test]
    fn degree_zero_is_rejected() {
        assert!(roots_univariate(&[c(3.0)]).is_err());
        assert!(roots_univariate(&[c(3.0), c(0.0)]).is_err());
        assert!(roots_univariate(&[c(f64::NAN), c(1.0)]).is_err());
    }

    proptest! {
        #[test]
        fn residuals_within_bound(coeffs in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 2..14)) {
            let mut cs: Vec<Complex64> = coeffs.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
            let last = cs.len() - 1;
            if cs[last].norm() < 1e-3 {
                cs[last] = Complex64::new(1.0, 0.0);
            }
            let roots = roots_univariate(&cs).unwrap();
            prop_assert_eq!(roots.len(), cs.len() - 1);
        }
    }
}
