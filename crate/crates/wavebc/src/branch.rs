//! Branch-fixed complex square root `κ = √(s² + ω²)` and the lower-bound
//! machinery used throughout the mode analysis.
//!
//! The branch is fixed by taking `−π < arg(s² + ω²) ≤ π` and
//! `arg κ = ½ arg(s² + ω²)`, so `Re κ ≥ 0` everywhere and `Re κ > 0` when
//! `Re s > 0`. Points with `arg(s² + ω²)` exactly `π` map to `arg κ = π/2`
//! (the half-open convention); continuity fails across that cut and callers
//! who need the `Re s → 0⁺` limit should use [`kappa_limit`].

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BranchError {
    #[error("the branch of sqrt(s^2 + omega^2) is undefined at (s, omega) = (0, 0)")]
    Origin,
    #[error("delta must lie in the open interval (0, 1), got {0}")]
    DeltaOutOfRange(f64),
}

/// A Laplace–Fourier dual point `(s, ω)` with `s = η + iξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualPoint {
    pub s: Complex64,
    pub omega: f64,
}

impl DualPoint {
    pub fn new(s: Complex64, omega: f64) -> Result<Self, BranchError> {
        if s == Complex64::ZERO && omega == 0.0 {
            return Err(BranchError::Origin);
        }
        Ok(Self { s, omega })
    }

    /// `η = Re s`, the Laplace abscissa.
    pub fn eta(&self) -> f64 {
        self.s.re
    }

    /// `ξ = Im s`, the dual time frequency.
    pub fn xi(&self) -> f64 {
        self.s.im
    }
}

/// A dual point scaled onto the sphere `|s'|² + ω'² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedDualPoint {
    pub s_prime: Complex64,
    pub omega_prime: f64,
}

impl NormalizedDualPoint {
    /// Builds a normalized point, checking the sphere constraint to 1e-12.
    pub fn new(s_prime: Complex64, omega_prime: f64) -> Result<Self, BranchError> {
        let r = s_prime.norm_sqr() + omega_prime * omega_prime;
        if (r - 1.0).abs() > 1e-12 {
            return Err(BranchError::Origin);
        }
        Ok(Self {
            s_prime,
            omega_prime,
        })
    }

    pub fn eta(&self) -> f64 {
        self.s_prime.re
    }

    pub fn xi(&self) -> f64 {
        self.s_prime.im
    }

    pub fn as_dual(&self) -> DualPoint {
        DualPoint {
            s: self.s_prime,
            omega: self.omega_prime,
        }
    }
}

/// The branch-fixed root together with the argument of `s² + ω²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kappa {
    pub value: Complex64,
    /// `arg(s² + ω²)` in `(−π, π]`.
    pub branch_arg: f64,
}

/// Computes `κ = √(s² + ω²)` with the fixed branch.
pub fn kappa(p: &DualPoint) -> Kappa {
    let z = p.s * p.s + Complex64::new(p.omega * p.omega, 0.0);
    // `Complex64::sqrt` takes the principal branch with arg in (−π, π];
    // pin the negative real axis (arg exactly π) to +i·√|z| explicitly so
    // a `−0.0` imaginary part cannot flip us to the lower half plane.
    let value = if z.im == 0.0 && z.re < 0.0 {
        Complex64::new(0.0, (-z.re).sqrt())
    } else {
        z.sqrt()
    };
    let branch_arg = if z.im == 0.0 && z.re < 0.0 {
        std::f64::consts::PI
    } else {
        z.arg()
    };
    Kappa { value, branch_arg }
}

/// The `Re s → 0⁺` limit of `κ` at the boundary point `s = iξ`.
///
/// On the imaginary axis `s² + ω² = ω² − ξ²` is real. For `ω² > ξ²` the
/// limit is the positive real root; for `ω² < ξ²` the limit from
/// `η → 0⁺` is `i·sgn(ξ)·√(ξ² − ω²)` — which differs from the branch-cut
/// value `+i√(ξ² − ω²)` when `ξ < 0`. Generalized-eigenvalue bookkeeping
/// must use this limit, not [`kappa`].
pub fn kappa_limit(xi: f64, omega: f64) -> Complex64 {
    let z = omega * omega - xi * xi;
    if z >= 0.0 {
        Complex64::new(z.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, xi.signum() * (-z).sqrt())
    }
}

/// Scales a dual point onto the unit sphere; returns the point and the scale
/// `√(|s|² + ω²)`.
pub fn normalize(p: &DualPoint) -> (NormalizedDualPoint, f64) {
    let scale = (p.s.norm_sqr() + p.omega * p.omega).sqrt();
    (
        NormalizedDualPoint {
            s_prime: p.s / scale,
            omega_prime: p.omega / scale,
        },
        scale,
    )
}

/// The constants of the lower-bound lemmas, as functions of the free
/// parameter `δ ∈ (0, 1)`. There is no `δ₅` in the chain; the indices jump
/// from `δ₄` to `δ₆`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    pub delta: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub delta4: f64,
    pub delta6: f64,
}

impl BoundConstants {
    pub fn new(delta: f64) -> Result<Self, BranchError> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(BranchError::DeltaOutOfRange(delta));
        }
        let delta1 = 2f64.powf(-0.25) * delta.sqrt();
        // Small-|a| case: |κ|² ≥ |b| = 2|ξ|η and 2ξ² ≥ (1−δ)(ω²+|s|²)
        // give |κ| ≥ 2^(1/4) (1−δ)^(1/4) √(√(ω²+|s|²) η).
        let delta2 = 2f64.powf(0.25) * (1.0 - delta).powf(0.25);
        let delta3 = delta1.min(delta2);
        let delta4 = 2f64.powf(-0.75) * 1f64.min(delta3);
        let delta6 = (delta1 * delta4)
            .min(2f64.powf(-1.25) * delta2 * delta2)
            .min(2f64.powf(-0.75));
        Ok(Self {
            delta,
            delta1,
            delta2,
            delta3,
            delta4,
            delta6,
        })
    }
}

/// One evaluated inequality `lhs ≥ rhs`.
#[derive(Debug, Clone)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
}

impl InequalityCheck {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }
}

/// Every lower/upper bound of the appendix lemmas evaluated at one point.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub abs_kappa: f64,
    pub re_kappa: f64,
    pub constants: BoundConstants,
    pub checks: Vec<InequalityCheck>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(InequalityCheck::holds)
    }
}

/// Evaluates the two-sided modulus bound, the case-split lower bounds on
/// `|κ|`, the real-part bounds, the product bound, and their normalized
/// forms at the point `p` (requires `Re s ≥ 0`).
pub fn bound_report(p: &DualPoint, delta: f64) -> Result<BoundReport, BranchError> {
    let c = BoundConstants::new(delta)?;
    let eta = p.eta();
    let xi = p.xi();
    let omega = p.omega;
    let k = kappa(p);
    let abs_kappa = k.value.norm();
    let re_kappa = k.value.re;

    // Writing s² + ω² = a + ib with real a, b.
    let a = omega * omega + eta * eta - xi * xi;
    let b = 2.0 * xi * eta;
    let mod_scale = (a.abs() + b.abs()).sqrt();
    let big = (omega * omega + p.s.norm_sqr()).sqrt();

    let mut checks = vec![
        InequalityCheck {
            name: "modulus_lower: |kappa| >= 2^(-1/4) sqrt(|a|+|b|)",
            lhs: abs_kappa,
            rhs: 2f64.powf(-0.25) * mod_scale,
        },
        InequalityCheck {
            name: "modulus_upper: sqrt(|a|+|b|) >= |kappa|",
            lhs: mod_scale,
            rhs: abs_kappa,
        },
    ];

    // Case split on the size of a relative to ω² + |s|².
    if a.abs() >= delta * big * big {
        checks.push(InequalityCheck {
            name: "kappa_large_a: |kappa| >= delta1 sqrt(omega^2+|s|^2)",
            lhs: abs_kappa,
            rhs: c.delta1 * big,
        });
    } else {
        checks.push(InequalityCheck {
            name: "kappa_small_a: |kappa| >= delta2 sqrt(sqrt(omega^2+|s|^2) eta)",
            lhs: abs_kappa,
            rhs: c.delta2 * (big * eta).sqrt(),
        });
    }
    checks.push(InequalityCheck {
        name: "kappa_eta: |kappa| >= delta3 eta",
        lhs: abs_kappa,
        rhs: c.delta3 * eta,
    });

    // Real-part bounds.
    if a >= 0.0 {
        checks.push(InequalityCheck {
            name: "re_kappa_pos_a: Re kappa >= 2^(-5/4) |kappa|",
            lhs: re_kappa,
            rhs: 2f64.powf(-1.25) * abs_kappa,
        });
    } else if abs_kappa > 0.0 {
        checks.push(InequalityCheck {
            name: "re_kappa_neg_a: Re kappa >= 2^(-3/4) sqrt(omega^2+|s|^2) eta / |kappa|",
            lhs: re_kappa,
            rhs: 2f64.powf(-0.75) * big * eta / abs_kappa,
        });
    }
    checks.push(InequalityCheck {
        name: "re_kappa_eta: Re kappa >= delta4 eta",
        lhs: re_kappa,
        rhs: c.delta4 * eta,
    });

    // Product bound.
    checks.push(InequalityCheck {
        name: "product: |kappa| Re kappa >= delta6 sqrt(omega^2+|s|^2) eta",
        lhs: abs_kappa * re_kappa,
        rhs: c.delta6 * big * eta,
    });

    // Normalized forms, scaled by ω² + ξ² (skipped on the half-line
    // ω = ξ = 0 where that normalization degenerates).
    let tangential = omega * omega + xi * xi;
    if tangential > 0.0 {
        let root = tangential.sqrt();
        let eta_n = eta / root;
        let kappa_n = abs_kappa / root;
        let re_kappa_n = re_kappa / root;
        checks.push(InequalityCheck {
            name: "normalized_re: |Re kappa'| >= delta4 eta'",
            lhs: re_kappa_n.abs(),
            rhs: c.delta4 * eta_n,
        });
        checks.push(InequalityCheck {
            name: "normalized_mod: |kappa'| >= 2^(-1/4) eta'",
            lhs: kappa_n,
            rhs: 2f64.powf(-0.25) * eta_n,
        });
        checks.push(InequalityCheck {
            name: "normalized_product: |kappa'| |Re kappa'| >= delta6 eta'",
            lhs: kappa_n * re_kappa_n.abs(),
            rhs: c.delta6 * eta_n,
        });
    }

    Ok(BoundReport {
        abs_kappa,
        re_kappa,
        constants: c,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent polar-form evaluation: κ = √ρ · e^{iθ/2} with
    /// ρ = √(a² + b²), θ = atan2(b, a) mapped to (−π, π].
    fn kappa_polar_oracle(s: Complex64, omega: f64) -> Complex64 {
        let (eta, xi) = (s.re, s.im);
        let a = omega * omega + eta * eta - xi * xi;
        let b = 2.0 * xi * eta;
        let rho = a.hypot(b);
        let theta = if b == 0.0 && a < 0.0 {
            std::f64::consts::PI
        } else {
            b.atan2(a)
        };
        Complex64::from_polar(rho.sqrt(), theta / 2.0)
    }

    #[test]
    fn kappa_real_positive_axis() {
        let p = DualPoint::new(Complex64::new(1.0, 0.0), 0.0).unwrap();
        assert_eq!(kappa(&p).value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn kappa_vanishes_at_glancing_points() {
        for (xi, omega) in [(1.0, 1.0), (-2.5, 2.5), (3.0, -3.0)] {
            let p = DualPoint::new(Complex64::new(0.0, xi), omega).unwrap();
            assert!(kappa(&p).value.norm() < 1e-15);
        }
    }

    #[test]
    fn kappa_matches_polar_oracle() {
        let p = DualPoint::new(Complex64::new(1.0, 2.0), 3.0).unwrap();
        let got = kappa(&p).value;
        let want = kappa_polar_oracle(p.s, p.omega);
        assert!((got - want).norm() <= 1e-14 * want.norm());
    }

    #[test]
    fn kappa_matches_polar_oracle_randomly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20_000 {
            let s = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let omega = rng.gen_range(-5.0..5.0);
            if s == Complex64::ZERO && omega == 0.0 {
                continue;
            }
            let p = DualPoint::new(s, omega).unwrap();
            let k = kappa(&p);
            let want = kappa_polar_oracle(s, omega);
            assert!(
                (k.value - want).norm() <= 1e-13 * (1.0 + want.norm()),
                "mismatch at s={s}, omega={omega}"
            );
            // Both Kappa invariants.
            let z = s * s + Complex64::new(omega * omega, 0.0);
            assert!((k.value * k.value - z).norm() <= 1e-12 * (1.0 + z.norm()));
            assert!(k.value.re >= -1e-15);
            if s.re > 1e-12 {
                assert!(k.value.re > 0.0);
            }
            assert!(k.branch_arg > -std::f64::consts::PI - 1e-15);
            assert!(k.branch_arg <= std::f64::consts::PI + 1e-15);
        }
    }

    #[test]
    fn kappa_is_even_in_omega_and_conjugate_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..5_000 {
            let s = Complex64::new(rng.gen_range(0.01..4.0), rng.gen_range(-4.0..4.0));
            let omega = rng.gen_range(-4.0..4.0);
            let p = DualPoint::new(s, omega).unwrap();
            let z = s * s + Complex64::new(omega * omega, 0.0);
            // Stay clear of the cut, where conjugate symmetry fails by design.
            if z.im.abs() <= 1e-10 && z.re < 0.0 {
                continue;
            }
            let k = kappa(&p).value;
            let k_neg = kappa(&DualPoint::new(s, -omega).unwrap()).value;
            assert_eq!(k, k_neg);
            let k_conj = kappa(&DualPoint::new(s.conj(), omega).unwrap()).value;
            assert!((k_conj - k.conj()).norm() <= 1e-13 * (1.0 + k.norm()));
        }
    }

    #[test]
    fn branch_cut_maps_to_upper_half_plane() {
        // s = iξ with ξ² > ω² puts s² + ω² on the negative real axis.
        let p = DualPoint::new(Complex64::new(0.0, -2.0), 1.0).unwrap();
        let k = kappa(&p);
        assert_relative_eq!(k.branch_arg, std::f64::consts::PI);
        assert!((k.value - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-14);
    }

    #[test]
    fn kappa_limit_agrees_with_small_eta() {
        for (xi, omega) in [(0.7, 1.3), (-0.7, 1.3), (1.3, 0.7), (-1.3, 0.7), (2.0, -0.5)] {
            let lim = kappa_limit(xi, omega);
            let eta = 1e-9;
            let near = kappa(&DualPoint::new(Complex64::new(eta, xi), omega).unwrap()).value;
            assert!(
                (lim - near).norm() < 1e-6,
                "limit mismatch at xi={xi}, omega={omega}: {lim} vs {near}"
            );
        }
    }

    #[test]
    fn rejects_origin() {
        assert_eq!(
            DualPoint::new(Complex64::ZERO, 0.0).unwrap_err(),
            BranchError::Origin
        );
    }

    #[test]
    fn normalize_examples() {
        let p = DualPoint::new(Complex64::new(3.0, 4.0), 0.0).unwrap();
        let (q, scale) = normalize(&p);
        assert_relative_eq!(scale, 5.0);
        assert!((q.s_prime - Complex64::new(0.6, 0.8)).norm() < 1e-15);

        let p = DualPoint::new(Complex64::new(0.0, 1.0), 1.0).unwrap();
        let (_, scale) = normalize(&p);
        assert_relative_eq!(scale, 2f64.sqrt());
    }

    #[test]
    fn normalize_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..5_000 {
            let s = Complex64::new(rng.gen_range(-9.0..9.0), rng.gen_range(-9.0..9.0));
            let omega: f64 = rng.gen_range(-9.0..9.0);
            if s.norm() + omega.abs() < 1e-6 {
                continue;
            }
            let p = DualPoint::new(s, omega).unwrap();
            let (q, scale) = normalize(&p);
            assert!((q.s_prime.norm_sqr() + q.omega_prime * q.omega_prime - 1.0).abs() < 1e-12);
            assert!((q.s_prime * scale - s).norm() <= 1e-12 * s.norm().max(1.0));
            assert!((q.omega_prime * scale - omega).abs() <= 1e-12 * omega.abs().max(1.0));
        }
    }

    #[test]
    fn bound_constants_reject_bad_delta() {
        assert!(BoundConstants::new(0.0).is_err());
        assert!(BoundConstants::new(1.0).is_err());
        assert!(BoundConstants::new(0.5).is_ok());
    }

    #[test]
    fn bound_report_trivial_point() {
        let p = DualPoint::new(Complex64::new(1.0, 0.0), 0.0).unwrap();
        let r = bound_report(&p, 0.5).unwrap();
        assert_relative_eq!(r.abs_kappa, 1.0);
        assert!(r.abs_kappa >= r.constants.delta3 * 1.0);
        assert!(r.all_hold(), "failed: {:?}", r.checks);
    }

    #[test]
    fn bound_report_near_glancing() {
        let p = DualPoint::new(Complex64::new(0.01, 10.0), 10.0).unwrap();
        let r = bound_report(&p, 0.5).unwrap();
        assert!(r.all_hold(), "failed: {:?}", r.checks);
    }

    #[test]
    fn bound_report_random_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..20_000 {
            let s = Complex64::new(rng.gen_range(1e-8..10.0f64), rng.gen_range(-10.0..10.0));
            let omega = rng.gen_range(-10.0..10.0);
            let p = DualPoint::new(s, omega).unwrap();
            let r = bound_report(&p, rng.gen_range(0.05..0.95)).unwrap();
            assert!(
                r.all_hold(),
                "bound failed at s={s}, omega={omega}: {:?}",
                r.checks.iter().filter(|c| !c.holds()).collect::<Vec<_>>()
            );
        }
    }
}
