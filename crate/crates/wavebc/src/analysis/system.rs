//! First-order reduction of the general second-order system: the 2n×2n
//! symbol `M(s, ω₋)`, its eigenvalue split, resolvent boundedness probes,
//! and the 2×2 block normal form near glancing points.

use crate::analysis::report::AnalysisError;
use ndarray::{s, Array1, Array2};
use ndarray_linalg::{Eig, Eigh, Inverse, Solve, SVD, UPLO};
use num_complex::Complex64;

fn backend(e: impl std::fmt::Display) -> AnalysisError {
    AnalysisError::Backend(e.to_string())
}

/// The coefficient matrices of `u_tt = A₁ u_xx + Σ B_j u_{y_j y_j}` with
/// boundary matrices `C₀ u_x = Σ C_j u_{y_j} + g`, normalized so `C₁ = I`.
#[derive(Debug, Clone)]
pub struct SystemSpec {
    pub n: usize,
    pub a1: Array2<f64>,
    pub b: Vec<Array2<f64>>,
    pub c0: Array2<f64>,
    pub cj: Vec<Array2<f64>>,
}

fn check_spd(name: &str, m: &Array2<f64>) -> Result<(), AnalysisError> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(AnalysisError::InvalidInput(format!("{name} is not square")));
    }
    let scale = m.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1e-300);
    for i in 0..n {
        for j in 0..n {
            if (m[[i, j]] - m[[j, i]]).abs() > 1e-12 * scale {
                return Err(AnalysisError::InvalidInput(format!(
                    "{name} is not symmetric"
                )));
            }
        }
    }
    let (vals, _) = m.eigh(UPLO::Lower).map_err(backend)?;
    let max = vals.iter().cloned().fold(f64::MIN, f64::max);
    let min = vals.iter().cloned().fold(f64::MAX, f64::min);
    if !(max > 0.0 && min > 1e-10 * max) {
        return Err(AnalysisError::InvalidInput(format!(
            "{name} is not positive definite (eigenvalues in [{min:.3e}, {max:.3e}])"
        )));
    }
    Ok(())
}

impl SystemSpec {
    pub fn new(
        a1: Array2<f64>,
        b: Vec<Array2<f64>>,
        c0: Array2<f64>,
        cj: Vec<Array2<f64>>,
    ) -> Result<Self, AnalysisError> {
        let n = a1.nrows();
        check_spd("A1", &a1)?;
        if b.is_empty() {
            return Err(AnalysisError::InvalidInput(
                "need at least one tangential direction".to_string(),
            ));
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.nrows() != n {
                return Err(AnalysisError::InvalidInput(format!(
                    "B[{j}] has wrong dimension"
                )));
            }
            check_spd(&format!("B[{j}]"), bj)?;
        }
        if c0.nrows() != n || c0.ncols() != n {
            return Err(AnalysisError::InvalidInput("C0 has wrong shape".to_string()));
        }
        if cj.len() != b.len() {
            return Err(AnalysisError::InvalidInput(
                "need one C_j per tangential direction".to_string(),
            ));
        }
        let eye = Array2::<f64>::eye(n);
        let diff = &cj[0] - &eye;
        if diff.iter().any(|v| v.abs() > 1e-12) {
            return Err(AnalysisError::InvalidInput(
                "C1 must be the identity".to_string(),
            ));
        }
        Ok(Self { n, a1, b, c0, cj })
    }

    /// Convenience constructor with trivial boundary matrices (`C₀ = 0`,
    /// `C₁ = I`), for the interior-symbol operations that never read them.
    pub fn interior(a1: Array2<f64>, b: Vec<Array2<f64>>) -> Result<Self, AnalysisError> {
        let n = a1.nrows();
        let mut cj = vec![Array2::<f64>::eye(n)];
        cj.resize(b.len(), Array2::<f64>::zeros((n, n)));
        Self::new(a1, b, Array2::<f64>::zeros((n, n)), cj)
    }

    /// `B(ω₋) = Σ B_j ω_j²`.
    pub fn b_of(&self, omega_minus: &[f64]) -> Array2<f64> {
        let mut acc = Array2::<f64>::zeros((self.n, self.n));
        for (bj, &w) in self.b.iter().zip(omega_minus) {
            acc = acc + bj * (w * w);
        }
        acc
    }
}

/// The 2n×2n first-order symbol
/// `M = [[0, cI], [A₁⁻¹(s²I + B(ω₋))/c, 0]]` with `c = √(|s|² + |ω₋|²)`.
#[derive(Debug, Clone)]
pub struct FirstOrderSymbol {
    pub m: Array2<Complex64>,
    pub s: Complex64,
    pub omega_minus: Vec<f64>,
    /// The normalization `c = √(|s|² + |ω₋|²)`.
    pub scale: f64,
    pub n: usize,
}

pub fn build_first_order_symbol(
    sys: &SystemSpec,
    s_freq: Complex64,
    omega_minus: &[f64],
) -> Result<FirstOrderSymbol, AnalysisError> {
    if s_freq.re <= 0.0 {
        return Err(AnalysisError::InvalidInput(format!(
            "first-order symbol needs Re s > 0, got {s_freq}"
        )));
    }
    if omega_minus.len() != sys.b.len() {
        return Err(AnalysisError::InvalidInput(
            "omega_minus length must match the number of tangential directions".to_string(),
        ));
    }
    let n = sys.n;
    let c = (s_freq.norm_sqr() + omega_minus.iter().map(|w| w * w).sum::<f64>()).sqrt();
    let a1_inv = sys.a1.inv().map_err(backend)?;
    let inner_real = sys.b_of(omega_minus);
    // A₁⁻¹ (s² I + B(ω₋)) / c as a complex block.
    let s2 = s_freq * s_freq;
    let mut lower = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..n {
                let entry = Complex64::new(inner_real[[k, j]], 0.0)
                    + if k == j { s2 } else { Complex64::ZERO };
                acc += Complex64::new(a1_inv[[i, k]], 0.0) * entry;
            }
            lower[[i, j]] = acc / c;
        }
    }
    let mut m = Array2::<Complex64>::zeros((2 * n, 2 * n));
    for i in 0..n {
        m[[i, n + i]] = Complex64::new(c, 0.0);
        for j in 0..n {
            m[[n + i, j]] = lower[[i, j]];
        }
    }
    Ok(FirstOrderSymbol {
        m,
        s: s_freq,
        omega_minus: omega_minus.to_vec(),
        scale: c,
        n,
    })
}

/// Result of the eigenvalue split: a unitary `Q` with `QᴴMQ` block upper
/// triangular, the `Re κ < 0` invariant subspace spanned by the first
/// `n_minus` columns.
#[derive(Debug, Clone)]
pub struct EigenSplit {
    pub n_minus: usize,
    pub n_plus: usize,
    pub q: Array2<Complex64>,
    pub t: Array2<Complex64>,
    pub eigenvalues: Vec<Complex64>,
}

fn spectral_norm(m: &Array2<Complex64>) -> Result<f64, AnalysisError> {
    let (_, sv, _) = m.svd(false, false).map_err(backend)?;
    Ok(sv.iter().cloned().fold(0.0, f64::max))
}

fn smallest_singular_value(m: &Array2<Complex64>) -> Result<f64, AnalysisError> {
    let (_, sv, _) = m.svd(false, false).map_err(backend)?;
    Ok(sv.iter().cloned().fold(f64::MAX, f64::min))
}

/// Modified Gram–Schmidt; appends each candidate that keeps norm above tol.
fn mgs_extend(basis: &mut Vec<Array1<Complex64>>, candidate: &Array1<Complex64>, tol: f64) {
    let mut v = candidate.clone();
    for _ in 0..2 {
        for q in basis.iter() {
            let coeff: Complex64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            v = &v - &q.mapv(|x| x * coeff);
        }
    }
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm > tol {
        basis.push(v.mapv(|x| x / norm));
    }
}

pub fn eigen_split(sym: &FirstOrderSymbol) -> Result<EigenSplit, AnalysisError> {
    let n = sym.n;
    let dim = 2 * n;
    let (vals, vecs) = sym.m.eig().map_err(backend)?;
    let mnorm = spectral_norm(&sym.m)?;
    let threshold = 1e-10 * mnorm;
    let mut neg = Vec::new();
    let mut pos = Vec::new();
    for (i, lam) in vals.iter().enumerate() {
        if lam.re.abs() < threshold {
            return Err(AnalysisError::SplitFailure(format!(
                "eigenvalue {lam} has |Re| below the threshold {threshold:.3e}"
            )));
        }
        if lam.re < 0.0 {
            neg.push(i);
        } else {
            pos.push(i);
        }
    }
    if neg.len() != n || pos.len() != n {
        return Err(AnalysisError::SplitFailure(format!(
            "expected an (n, n) split, got ({}, {})",
            neg.len(),
            pos.len()
        )));
    }

    // Orthonormal basis: Re<0 eigenvectors first, then completion from the
    // Re>0 eigenvectors (falling back on coordinate vectors if degenerate).
    let mut basis: Vec<Array1<Complex64>> = Vec::with_capacity(dim);
    for &i in &neg {
        mgs_extend(&mut basis, &vecs.column(i).to_owned(), 1e-12);
    }
    if basis.len() != n {
        return Err(AnalysisError::SplitFailure(
            "stable eigenvectors are numerically dependent".to_string(),
        ));
    }
    for &i in &pos {
        if basis.len() == dim {
            break;
        }
        mgs_extend(&mut basis, &vecs.column(i).to_owned(), 1e-8);
    }
    let mut unit = 0;
    while basis.len() < dim && unit < dim {
        let mut e = Array1::<Complex64>::zeros(dim);
        e[unit] = Complex64::ONE;
        mgs_extend(&mut basis, &e, 1e-8);
        unit += 1;
    }
    if basis.len() != dim {
        return Err(AnalysisError::SplitFailure(
            "could not complete the unitary basis".to_string(),
        ));
    }
    let mut q = Array2::<Complex64>::zeros((dim, dim));
    for (j, col) in basis.iter().enumerate() {
        for i in 0..dim {
            q[[i, j]] = col[i];
        }
    }
    // T = Qᴴ M Q.
    let qh = q.mapv(|x| x.conj()).reversed_axes().to_owned();
    let t = qh.dot(&sym.m).dot(&q);
    Ok(EigenSplit {
        n_minus: n,
        n_plus: n,
        q,
        t,
        eigenvalues: vals.to_vec(),
    })
}

/// `Re s · sup_{ω₁} ‖(M − iω₁ I)⁻¹‖` over a sampled set of real `ω₁`
/// (multiples of the normalization `c` plus the imaginary parts of the
/// eigenvalues of `M`, where the resolvent is largest).
pub fn resolvent_product(
    sys: &SystemSpec,
    s_freq: Complex64,
    omega_minus: &[f64],
) -> Result<f64, AnalysisError> {
    let sym = build_first_order_symbol(sys, s_freq, omega_minus)?;
    let (vals, _) = sym.m.eig().map_err(backend)?;
    let mut samples: Vec<f64> = vec![0.0];
    for f in [0.25, 0.5, 1.0, 2.0, 4.0] {
        samples.push(f * sym.scale);
        samples.push(-f * sym.scale);
    }
    samples.extend(vals.iter().map(|v| v.im));
    let dim = sym.m.nrows();
    let mut best = 0.0f64;
    for w1 in samples {
        let mut shifted = sym.m.clone();
        for i in 0..dim {
            shifted[[i, i]] -= Complex64::new(0.0, w1);
        }
        let sigma_min = smallest_singular_value(&shifted)?;
        if sigma_min > 0.0 {
            best = best.max(s_freq.re / sigma_min);
        } else {
            return Err(AnalysisError::SplitFailure(
                "resolvent matrix is singular on the sample set".to_string(),
            ));
        }
    }
    Ok(best)
}

/// Solves the interior resolvent system `(s²I + A₁ω₁² + Σ B_j ω_{j+1}²) û = F̂`.
pub fn resolvent_solution(
    sys: &SystemSpec,
    s_freq: Complex64,
    omega: &[f64],
    fhat: &[Complex64],
) -> Result<Vec<Complex64>, AnalysisError> {
    if s_freq.re <= 0.0 {
        return Err(AnalysisError::InvalidInput(
            "resolvent solution needs Re s > 0".to_string(),
        ));
    }
    if omega.len() != sys.b.len() + 1 {
        return Err(AnalysisError::InvalidInput(
            "omega must list the normal direction plus every tangential direction".to_string(),
        ));
    }
    if fhat.len() != sys.n {
        return Err(AnalysisError::InvalidInput(
            "forcing vector has wrong dimension".to_string(),
        ));
    }
    let n = sys.n;
    let p_real = &(&sys.a1 * (omega[0] * omega[0])) + &sys.b_of(&omega[1..]);
    let s2 = s_freq * s_freq;
    let mut a = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            a[[i, j]] = Complex64::new(p_real[[i, j]], 0.0) + if i == j { s2 } else { Complex64::ZERO };
        }
    }
    let rhs = Array1::from_vec(fhat.to_vec());
    let sol = a.solve(&rhs).map_err(backend)?;
    Ok(sol.to_vec())
}

/// Spectrum of `H(ω'₋, iξ'₀) = A₁^{−1/2}(−ξ'₀²I + B(ω'₋))A₁^{−1/2}`
/// at a boundary point of the normalized sphere.
#[derive(Debug, Clone)]
pub struct HSpectrum {
    /// `κ'ⱼ²`, sorted descending.
    pub kappa_sq: Vec<f64>,
    /// `ãⱼⱼ = (Uᵀ A₁⁻¹ U)ⱼⱼ`, in the same order.
    pub a_diag: Vec<f64>,
    /// Number of strictly positive `κ'ⱼ²`.
    pub split_index: usize,
    /// True when some `κ'ⱼ² = 0` within tolerance (glancing).
    pub has_zero: bool,
    /// Orthonormal eigenvectors of `H`, columns in the sorted order.
    pub u: Array2<f64>,
}

fn inv_sqrt_spd(m: &Array2<f64>) -> Result<Array2<f64>, AnalysisError> {
    let (vals, vecs) = m.eigh(UPLO::Lower).map_err(backend)?;
    let n = m.nrows();
    let mut out = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += vecs[[i, k]] * vecs[[j, k]] / vals[k].sqrt();
            }
            out[[i, j]] = acc;
        }
    }
    Ok(out)
}

pub fn h_spectrum(
    sys: &SystemSpec,
    omega_minus_prime: &[f64],
    xi0_prime: f64,
) -> Result<HSpectrum, AnalysisError> {
    if omega_minus_prime.len() != sys.b.len() {
        return Err(AnalysisError::InvalidInput(
            "omega_minus length must match the number of tangential directions".to_string(),
        ));
    }
    let r = xi0_prime * xi0_prime
        + omega_minus_prime.iter().map(|w| w * w).sum::<f64>();
    if (r - 1.0).abs() > 1e-10 {
        return Err(AnalysisError::InvalidInput(format!(
            "(xi0', omega'_-) must lie on the unit sphere, |.|^2 = {r}"
        )));
    }
    let n = sys.n;
    let half = inv_sqrt_spd(&sys.a1)?;
    let mut core = sys.b_of(omega_minus_prime);
    for i in 0..n {
        core[[i, i]] -= xi0_prime * xi0_prime;
    }
    let mut h = half.dot(&core).dot(&half);
    // Symmetrize away rounding asymmetry before the symmetric eigensolve.
    h = (&h + &h.t()) * 0.5;
    let (vals, vecs) = h.eigh(UPLO::Lower).map_err(backend)?;
    let hnorm = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let tol = 1e-10 * hnorm.max(1.0);

    // eigh returns ascending order; the convention here is descending.
    let order: Vec<usize> = (0..n).rev().collect();
    let kappa_sq: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let mut u = Array2::<f64>::zeros((n, n));
    for (jnew, &jold) in order.iter().enumerate() {
        for i in 0..n {
            u[[i, jnew]] = vecs[[i, jold]];
        }
    }
    let a1_inv = sys.a1.inv().map_err(backend)?;
    let inner = u.t().dot(&a1_inv).dot(&u);
    let a_diag: Vec<f64> = (0..n).map(|i| inner[[i, i]]).collect();
    let split_index = kappa_sq.iter().filter(|&&v| v > tol).count();
    let has_zero = kappa_sq.iter().any(|v| v.abs() <= tol);
    Ok(HSpectrum {
        kappa_sq,
        a_diag,
        split_index,
        has_zero,
        u,
    })
}

/// First-order perturbation of the `H`-spectrum off the imaginary axis:
/// `κ̃'ⱼ² = κ'ⱼ² + 2i ãⱼⱼ ξ' η'`, valid to `O(η'²)` under a spectral gap.
pub fn block_reduce(
    sys: &SystemSpec,
    omega_minus_prime: &[f64],
    xi_prime: f64,
    eta_prime: f64,
) -> Result<Vec<Complex64>, AnalysisError> {
    if eta_prime < 0.0 {
        return Err(AnalysisError::InvalidInput(
            "eta' must be nonnegative".to_string(),
        ));
    }
    let hs = h_spectrum(sys, omega_minus_prime, xi_prime)?;
    let n = hs.kappa_sq.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = (hs.kappa_sq[i] - hs.kappa_sq[j]).abs();
            if gap < 1e-8 {
                return Err(AnalysisError::DegenerateSpectrum(format!(
                    "kappa'^2 gap {gap:.3e} between modes {i} and {j}"
                )));
            }
        }
    }
    Ok(hs
        .kappa_sq
        .iter()
        .zip(&hs.a_diag)
        .map(|(&k2, &a)| Complex64::new(k2, 2.0 * a * xi_prime * eta_prime))
        .collect())
}

/// Test helper: the exact complex spectrum of
/// `H(ω'₋, s') = A₁^{−1/2}(s'²I + B(ω'₋))A₁^{−1/2}` at `s' = η' + iξ'`,
/// used as the oracle for [`block_reduce`].
pub fn exact_h_eigenvalues(
    sys: &SystemSpec,
    omega_minus_prime: &[f64],
    xi_prime: f64,
    eta_prime: f64,
) -> Result<Vec<Complex64>, AnalysisError> {
    let n = sys.n;
    let half = inv_sqrt_spd(&sys.a1)?;
    let core = sys.b_of(omega_minus_prime);
    let h0 = half.dot(&core).dot(&half);
    let a1_inv_conj = half.dot(&half);
    let s2 = Complex64::new(eta_prime, xi_prime) * Complex64::new(eta_prime, xi_prime);
    let mut hc = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            hc[[i, j]] = Complex64::new(h0[[i, j]], 0.0) + s2 * a1_inv_conj[[i, j]];
        }
    }
    let (vals, _) = hc.eig().map_err(backend)?;
    Ok(vals.to_vec())
}

/// Test helper: the lower-left block `T₂₁` of an [`EigenSplit`], which the
/// split should annihilate.
pub fn split_lower_left_norm(split: &EigenSplit) -> f64 {
    let n = split.n_minus;
    split
        .t
        .slice(s![n.., ..n])
        .iter()
        .map(|v| v.norm_sqr())
        .sum::<f64>()
        .sqrt()
}
