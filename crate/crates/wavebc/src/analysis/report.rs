//! Classification verdicts and the serialized analysis report.

use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("invalid boundary condition: {0}")]
    InvalidBoundaryCondition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("boundary system is singular (eigenvalue or generalized eigenvalue hit)")]
    SingularBoundarySystem,
    #[error("eigenvalue split failed: {0}")]
    SplitFailure(String),
    #[error("spectrum too degenerate for the block reduction: {0}")]
    DegenerateSpectrum(String),
    #[error("Newton iteration did not converge after {steps} steps (residual {residual:.3e})")]
    NoConvergence { steps: usize, residual: f64 },
    #[error("empty sample list")]
    EmptySamples,
    #[error("linear algebra backend failure: {0}")]
    Backend(String),
}

/// The estimate hierarchy: gain of one boundary derivative, no gain, interior
/// estimate with forcing, or loss of derivatives per reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityClass {
    IllPosed,
    StronglyBoundaryStable,
    BoundaryStable,
    Stable,
    Unstable,
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StabilityClass::IllPosed => "IllPosed",
            StabilityClass::StronglyBoundaryStable => "StronglyBoundaryStable",
            StabilityClass::BoundaryStable => "BoundaryStable",
            StabilityClass::Stable => "Stable",
            StabilityClass::Unstable => "Unstable",
        };
        f.write_str(s)
    }
}

/// Character of a boundary wave at a generalized eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveKind {
    /// `Re κ'₀ > 0`: decays exponentially away from the boundary.
    Surface,
    /// `κ'₀ = 0`: constant in the normal direction.
    Glancing,
    /// `κ'₀ ≠ 0` purely imaginary: oscillates without decay.
    Oscillatory,
}

impl fmt::Display for WaveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WaveKind::Surface => "surface",
            WaveKind::Glancing => "glancing",
            WaveKind::Oscillatory => "oscillatory",
        };
        f.write_str(s)
    }
}

/// A boundary point `s' = iξ'₀`, `ω' = ω'₀` on the unit circle where the
/// boundary symbol vanishes in the `Re s → 0⁺` limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedEigenvalue {
    pub xi0_prime: f64,
    pub omega0_prime: f64,
    pub kappa0_prime: Complex64,
    pub wave_kind: WaveKind,
}

/// Classification verdict plus the located generalized eigenvalues.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    /// Human-readable label of the analyzed boundary condition.
    pub subject: String,
    pub classification: StabilityClass,
    pub generalized_eigenvalues: Vec<GeneralizedEigenvalue>,
    pub notes: String,
}

impl fmt::Display for StabilityReport {
    /// One record per analyzed BC in a flat `key = value` layout.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[analysis]")?;
        writeln!(f, "subject = {}", self.subject)?;
        writeln!(f, "classification = {}", self.classification)?;
        writeln!(
            f,
            "generalized_eigenvalues = {}",
            self.generalized_eigenvalues.len()
        )?;
        for (i, ge) in self.generalized_eigenvalues.iter().enumerate() {
            writeln!(
                f,
                "eigenvalue.{i} = kind={} xi0={:.17e} omega0={:.17e} kappa0_re={:.17e} kappa0_im={:.17e}",
                ge.wave_kind, ge.xi0_prime, ge.omega0_prime, ge.kappa0_prime.re, ge.kappa0_prime.im
            )?;
        }
        if !self.notes.is_empty() {
            writeln!(f, "notes = {}", self.notes)?;
        }
        Ok(())
    }
}
