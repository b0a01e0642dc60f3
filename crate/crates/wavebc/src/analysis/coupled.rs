//! The coupled pair of wave equations with cross boundary conditions
//! `u_{1x} + b₁ u_{2y} = g₁`, `u_{2x} + b₂ u_{1y} = g₂` at `x = 0`.
//!
//! The classification is a function of the product `p = b₁b₂` alone:
//! `p < −1` ill posed, `p = −1` degenerate (`s = 0` generalized eigenvalue),
//! `−1 < p < 0` stable with surface waves, `p = 0` stable with glancing
//! waves, `p > 0` unstable with oscillatory waves.

use crate::analysis::report::{
    AnalysisError, GeneralizedEigenvalue, StabilityClass, StabilityReport, WaveKind,
};
use crate::branch::{kappa, kappa_limit, DualPoint};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledBC {
    pub b1: f64,
    pub b2: f64,
}

impl CoupledBC {
    pub fn label(&self) -> String {
        format!("coupled pair (b1={}, b2={})", self.b1, self.b2)
    }
}

/// Determinant of the 2×2 transformed boundary system:
/// `κ² + ω²b₁b₂ = s² + ω²(b₁b₂ + 1)`.
pub fn coupled_determinant(cb: &CoupledBC, p: &DualPoint) -> Complex64 {
    p.s * p.s + Complex64::new(p.omega * p.omega * (cb.b1 * cb.b2 + 1.0), 0.0)
}

/// Generalized eigenvalues of the pair, on the unit circle in `(ξ'₀, ω'₀)`.
///
/// The determinant vanishes on the imaginary axis at `ξ'₀² = (1+p)ω'₀²`
/// when `p ≥ −1`. The limiting `κ'₀ = kappa_limit(ξ'₀, ω'₀)` decides the
/// wave kind: real positive for `−1 < p < 0` (surface), zero for `p = 0`
/// (glancing), imaginary for `p > 0` (oscillatory).
fn coupled_generalized_eigenvalues(product: f64) -> Vec<GeneralizedEigenvalue> {
    if product < -1.0 {
        return Vec::new();
    }
    if product == -1.0 {
        // s = 0: the circle point is (ξ'₀, ω'₀) = (0, ±1); one representative.
        return vec![GeneralizedEigenvalue {
            xi0_prime: 0.0,
            omega0_prime: 1.0,
            kappa0_prime: Complex64::new(1.0, 0.0),
            wave_kind: WaveKind::Surface,
        }];
    }
    let omega0 = 1.0 / (2.0 + product).sqrt();
    let xi_mag = (1.0 + product).sqrt() * omega0;
    [xi_mag, -xi_mag]
        .into_iter()
        .map(|xi0| {
            let kappa0 = kappa_limit(xi0, omega0);
            let wave_kind = if kappa0.norm() < 1e-14 {
                WaveKind::Glancing
            } else if kappa0.re > 0.0 {
                WaveKind::Surface
            } else {
                WaveKind::Oscillatory
            };
            GeneralizedEigenvalue {
                xi0_prime: xi0,
                omega0_prime: omega0,
                kappa0_prime: kappa0,
                wave_kind,
            }
        })
        .collect()
}

/// Five-case classification in the product `b₁b₂`.
pub fn classify_coupled(cb: &CoupledBC) -> StabilityReport {
    let p = cb.b1 * cb.b2;
    let ges = coupled_generalized_eigenvalues(p);
    let (classification, notes) = if p < -1.0 {
        (
            StabilityClass::IllPosed,
            "b1*b2 < -1 admits eigenvalues s with Re s > 0".to_string(),
        )
    } else if p == -1.0 {
        (
            StabilityClass::BoundaryStable,
            "Degenerate: s = 0 is a generalized eigenvalue; solvable only for boundary data \
             with two extra time derivatives (g = d^2/dt^2 of bounded data)"
                .to_string(),
        )
    } else if p < 0.0 {
        (
            StabilityClass::Stable,
            "surface waves at xi0'^2 = (1+b1*b2) omega0'^2; boundary stable".to_string(),
        )
    } else if p == 0.0 {
        (
            StabilityClass::Stable,
            "glancing waves; boundary stable".to_string(),
        )
    } else {
        (
            StabilityClass::Unstable,
            "oscillatory waves; one derivative lost per boundary reflection".to_string(),
        )
    };
    StabilityReport {
        subject: cb.label(),
        classification,
        generalized_eigenvalues: ges,
        notes,
    }
}

/// Solves the transformed 2×2 boundary system for the boundary amplitudes:
///
/// `u₁₀ = −(κ ĝ₁ + iω b₁ ĝ₂) / (κ² + ω²b₁b₂)`,
/// `u₂₀ = −(κ ĝ₂ + iω b₂ ĝ₁) / (κ² + ω²b₁b₂)`.
pub fn coupled_boundary_solution(
    cb: &CoupledBC,
    g1hat: Complex64,
    g2hat: Complex64,
    p: &DualPoint,
) -> Result<(Complex64, Complex64), AnalysisError> {
    let det = coupled_determinant(cb, p);
    let scale = p.s.norm_sqr() + p.omega * p.omega;
    if det.norm() <= 1e-13 * scale {
        return Err(AnalysisError::SingularBoundarySystem);
    }
    let k = kappa(p).value;
    let iw = Complex64::i() * p.omega;
    let u10 = -(k * g1hat + iw * cb.b1 * g2hat) / det;
    let u20 = -(k * g2hat + iw * cb.b2 * g1hat) / det;
    Ok((u10, u20))
}
