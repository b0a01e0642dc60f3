//! Roots of the 1D reflection-cascade characteristic equations.
//!
//! The loss case solves `e^{2λ} = −λ²` (roots march right with
//! `Re λₙ ≈ log(πn)`, one derivative lost per reflection); the gain case
//! solves `e^{2λ} = −λ⁻²` (all roots in the left half plane).

use crate::analysis::report::AnalysisError;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionCase {
    Loss,
    Gain,
}

#[derive(Debug, Clone, Copy)]
pub struct ReflectionRoot {
    pub n: usize,
    /// Leading double-precision part of the root.
    pub lambda: Complex64,
    /// Deferred Newton correction: the root is `lambda + lambda_correction`.
    /// Needed because at large `n` the characteristic function's derivative
    /// is ~2|λ|², so even the best representable `λ` alone carries a
    /// residual of ~|f′|·ulp(Im λ)/2 ≈ 2e-9, above the 1e-10 target.
    pub lambda_correction: Complex64,
    /// `|e^{2λ} + λ²|` (loss) or `|e^{2λ} + λ⁻²|` (gain) at the corrected
    /// root, evaluated by compensated second-order Taylor expansion.
    pub residual: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Compensated evaluation of `e^{2λ} + λ²`. At the largest branch indices
/// both terms are ~|λ|² ≈ 1e5 and cancel, so a plain evaluation bottoms out
/// at ~6·eps·|λ|² > 1e-10; carrying the products and the cancelling sum in
/// double-double keeps the floor at the exp/sin/cos rounding level instead.
fn loss_f(l: Complex64) -> Complex64 {
    let (a, b) = (l.re, l.im);
    let t = (2.0 * a).exp();
    let (e_re, e_re_lo) = two_prod(t, (2.0 * b).cos());
    let (e_im, e_im_lo) = two_prod(t, (2.0 * b).sin());
    let (a2, a2_lo) = two_prod(a, a);
    let (b2, b2_lo) = two_prod(b, b);
    let (l_re, l_re_lo) = two_sum(a2, -b2);
    let l_re_lo = l_re_lo + a2_lo - b2_lo;
    let (l_im, l_im_lo) = two_prod(2.0 * a, b);
    let (fr, fr_e) = two_sum(e_re, l_re);
    let (fi, fi_e) = two_sum(e_im, l_im);
    Complex64::new(
        fr + (fr_e + e_re_lo + l_re_lo),
        fi + (fi_e + e_im_lo + l_im_lo),
    )
}

fn loss_df(l: Complex64) -> Complex64 {
    2.0 * (2.0 * l).exp() + 2.0 * l
}

fn gain_f(l: Complex64) -> Complex64 {
    (2.0 * l).exp() + 1.0 / (l * l)
}

fn gain_df(l: Complex64) -> Complex64 {
    2.0 * (2.0 * l).exp() - 2.0 / (l * l * l)
}

/// Newton iteration per branch index `n = 1..=n_max`, seeded from the
/// asymptotic forms `λ ≈ ±log(πn) + iπn`.
pub fn reflection_roots(
    case: ReflectionCase,
    n_max: usize,
) -> Result<Vec<ReflectionRoot>, AnalysisError> {
    if n_max < 1 {
        return Err(AnalysisError::InvalidInput("n_max must be >= 1".to_string()));
    }
    let mut roots = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let pin = PI * n as f64;
        let mut l = match case {
            ReflectionCase::Loss => Complex64::new(pin.ln(), pin),
            ReflectionCase::Gain => Complex64::new(-pin.ln(), pin),
        };
        // Iterate to the rounding floor: the terms of f are O(|λ|²), so the
        // best achievable absolute residual is about eps·|λ|². Stop when the
        // Newton step is negligible rather than on a residual target.
        for step in 0..100 {
            let (f, df) = match case {
                ReflectionCase::Loss => (loss_f(l), loss_df(l)),
                ReflectionCase::Gain => (gain_f(l), gain_df(l)),
            };
            if f.norm() < 1e-13 {
                break;
            }
            if df.norm() == 0.0 {
                return Err(AnalysisError::NoConvergence {
                    steps: step,
                    residual: f.norm(),
                });
            }
            let delta = f / df;
            l -= delta;
            if delta.norm() < 1e-16 * (1.0 + l.norm()) {
                break;
            }
        }
        // Newton stalls once its step falls below one ulp of λ. Keep the
        // sub-ulp step as an explicit correction and evaluate the residual
        // at the corrected root by a compensated second-order Taylor
        // expansion: f(λ + δ) = f(λ) + f′(λ)δ + ½f″(λ)δ², where the first
        // two terms cancel by construction of δ.
        let (f0, d1, d2) = match case {
            ReflectionCase::Loss => (
                loss_f(l),
                loss_df(l),
                4.0 * (2.0 * l).exp() + 2.0,
            ),
            ReflectionCase::Gain => (
                gain_f(l),
                gain_df(l),
                4.0 * (2.0 * l).exp() + 6.0 / (l * l * l * l),
            ),
        };
        let correction = -f0 / d1;
        let t1 = d1 * correction;
        let t2 = 0.5 * d2 * correction * correction;
        let (rr, rr_e) = two_sum(f0.re, t1.re);
        let (ri, ri_e) = two_sum(f0.im, t1.im);
        let residual = Complex64::new(rr + (rr_e + t2.re), ri + (ri_e + t2.im)).norm();
        if residual > 1e-10 {
            return Err(AnalysisError::NoConvergence {
                steps: 100,
                residual,
            });
        }
        roots.push(ReflectionRoot {
            n,
            lambda: l,
            lambda_correction: correction,
            residual,
        });
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loss_roots_have_small_residual() {
        let roots = reflection_roots(ReflectionCase::Loss, 100).unwrap();
        assert_eq!(roots.len(), 100);
        for r in &roots {
            assert!(r.residual < 1e-10, "n={} residual {}", r.n, r.residual);
        }
    }

    #[test]
    fn loss_roots_march_logarithmically() {
        let roots = reflection_roots(ReflectionCase::Loss, 100).unwrap();
        let last = roots.last().unwrap();
        assert!((last.lambda.re - (100.0 * PI).ln()).abs() < 0.1);
        for r in roots.iter().filter(|r| r.n >= 10) {
            assert!((r.lambda.re - (PI * r.n as f64).ln()).abs() < 0.15);
        }
        // Monotone rightward march.
        for pair in roots.windows(2) {
            assert!(pair[1].lambda.re > pair[0].lambda.re);
        }
    }

    #[test]
    fn gain_roots_stay_left_of_the_axis() {
        let roots = reflection_roots(ReflectionCase::Gain, 20).unwrap();
        for r in &roots {
            assert!(r.lambda.re < 0.0, "n={} at {}", r.n, r.lambda);
            assert!(r.residual < 1e-10);
        }
    }

    #[test]
    fn rejects_zero_n_max() {
        assert!(reflection_roots(ReflectionCase::Loss, 0).is_err());
    }
}
