//! Manufactured solutions, boundary-forcing families, and the convergence,
//! growth, and forcing studies on the strip.

use crate::solver::{
    run, BoundaryCoefficient, ForcingKind, Grid2D, ProblemData, RunOutput, Simulation, SolverError,
};
use std::f64::consts::PI;

pub const DEFAULT_OMEGA0: f64 = 8.0 * PI;
pub const DEFAULT_PULSE_WIDTH: f64 = 0.03;
pub const DEFAULT_T0: f64 = 0.2;

const TWO_PI: f64 = 2.0 * PI;

/// Traveling wave `u_w = sin(2π(x−t)) sin(2πy)` with interior forcing
/// `F = (2π)² u_w`, boundary forcings derived analytically so `u_w` is the
/// exact solution. For imaginary `b` the run carries the conjugate partner
/// `u_w^(2) = cos(2π(x−t)) cos(2πy)` as the second real component.
pub struct TravelingWaveProblem {
    pub bc: BoundaryCoefficient,
}

impl TravelingWaveProblem {
    pub fn new(bc: BoundaryCoefficient) -> Self {
        Self { bc }
    }

    pub fn exact(&self, component: usize, x: f64, y: f64, t: f64) -> f64 {
        if component == 0 {
            (TWO_PI * (x - t)).sin() * (TWO_PI * y).sin()
        } else {
            (TWO_PI * (x - t)).cos() * (TWO_PI * y).cos()
        }
    }

    pub fn exact_x(&self, component: usize, x: f64, y: f64, t: f64) -> f64 {
        if component == 0 {
            TWO_PI * (TWO_PI * (x - t)).cos() * (TWO_PI * y).sin()
        } else {
            -TWO_PI * (TWO_PI * (x - t)).sin() * (TWO_PI * y).cos()
        }
    }

    pub fn exact_y(&self, component: usize, x: f64, y: f64, t: f64) -> f64 {
        if component == 0 {
            TWO_PI * (TWO_PI * (x - t)).sin() * (TWO_PI * y).cos()
        } else {
            -TWO_PI * (TWO_PI * (x - t)).cos() * (TWO_PI * y).sin()
        }
    }
    pub fn components(&self) -> usize {
        self.bc.components()
    }

    pub fn forcing(&self, c: usize, x: f64, y: f64, t: f64) -> f64 {
        TWO_PI * TWO_PI * self.exact(c, x, y, t)
    }

    pub fn forcing_factors(&self, c: usize, t: f64, grid: &Grid2D, fx: &mut [f64], fy: &mut [f64]) {
        let amp = TWO_PI * TWO_PI;
        for (j, slot) in fx.iter_mut().enumerate() {
            let phase = TWO_PI * (grid.x(j) - t);
            *slot = amp * if c == 0 { phase.sin() } else { phase.cos() };
        }
        for (k, slot) in fy.iter_mut().enumerate() {
            let phase = TWO_PI * grid.y(k);
            *slot = if c == 0 { phase.sin() } else { phase.cos() };
        }
    }

    pub fn g0(&self, c: usize, y: f64, t: f64) -> f64 {
        // D0x v − b D0y v = g0 at x = 0, split into real components for
        // imaginary b: comp 0 couples to −β·u_y of comp 1 and vice versa.
        match self.bc {
            BoundaryCoefficient::Zero => self.exact_x(c, 0.0, y, t),
            BoundaryCoefficient::Real(b) => {
                self.exact_x(c, 0.0, y, t) - b * self.exact_y(c, 0.0, y, t)
            }
            BoundaryCoefficient::Imaginary(beta) => {
                if c == 0 {
                    self.exact_x(0, 0.0, y, t) + beta * self.exact_y(1, 0.0, y, t)
                } else {
                    self.exact_x(1, 0.0, y, t) - beta * self.exact_y(0, 0.0, y, t)
                }
            }
        }
    }

    pub fn g1(&self, c: usize, y: f64, t: f64) -> f64 {
        self.exact_x(c, 1.0, y, t)
    }
}

/// Wrapper fixing `f'₂ = u(·, ·, −δt)`; the trait cannot see `δt`, so the
/// problem is constructed per grid.
pub struct TravelingWaveOnGrid {
    inner: TravelingWaveProblem,
    dt: f64,
}

impl TravelingWaveOnGrid {
    pub fn new(bc: BoundaryCoefficient, grid: &Grid2D) -> Self {
        Self {
            inner: TravelingWaveProblem::new(bc),
            dt: grid.dt,
        }
    }

    pub fn exact(&self, c: usize, x: f64, y: f64, t: f64) -> f64 {
        self.inner.exact(c, x, y, t)
    }
}

impl ProblemData for TravelingWaveOnGrid {
    fn components(&self) -> usize {
        self.inner.components()
    }
    fn f1(&self, c: usize, x: f64, y: f64) -> f64 {
        self.inner.exact(c, x, y, 0.0)
    }
    fn f2_prev(&self, c: usize, x: f64, y: f64) -> f64 {
        self.inner.exact(c, x, y, -self.dt)
    }
    fn forcing_kind(&self) -> ForcingKind {
        ForcingKind::Separable
    }
    fn forcing(&self, c: usize, x: f64, y: f64, t: f64) -> f64 {
        self.inner.forcing(c, x, y, t)
    }
    fn forcing_factors(&self, c: usize, t: f64, grid: &Grid2D, fx: &mut [f64], fy: &mut [f64]) {
        self.inner.forcing_factors(c, t, grid, fx, fy)
    }
    fn has_g0(&self) -> bool {
        true
    }
    fn g0(&self, c: usize, y: f64, t: f64) -> f64 {
        self.inner.g0(c, y, t)
    }
    fn has_g1(&self) -> bool {
        true
    }
    fn g1(&self, c: usize, y: f64, t: f64) -> f64 {
        self.inner.g1(c, y, t)
    }
}

/// Surface wave `u_s = e^{−βω₀x} e^{iω₀(y−ct)}`, `c = √(1−β²)`, run as two
/// real components with `b = iβ`. All forcings are homogeneous; the wave
/// satisfies the `x = 0` closure identically and the `x = 1` condition up
/// to the exponentially small factor `e^{−βω₀}`.
pub struct SurfaceWaveProblem {
    pub beta: f64,
    pub omega0: f64,
    pub dt: f64,
}

impl SurfaceWaveProblem {
    pub fn new(beta: f64, omega0: f64, grid: &Grid2D) -> Result<Self, SolverError> {
        if !(beta * omega0 > 0.0 && beta.abs() < 1.0) {
            return Err(SolverError::InvalidGrid(format!(
                "surface wave needs beta*omega0 > 0 and |beta| < 1, got beta={beta}, omega0={omega0}"
            )));
        }
        Ok(Self {
            beta,
            omega0,
            dt: grid.dt,
        })
    }

    pub fn speed(&self) -> f64 {
        (1.0 - self.beta * self.beta).sqrt()
    }

    pub fn exact(&self, component: usize, x: f64, y: f64, t: f64) -> f64 {
        let amp = (-self.beta * self.omega0 * x).exp();
        let phase = self.omega0 * (y - self.speed() * t);
        amp * if component == 0 { phase.cos() } else { phase.sin() }
    }
}

impl ProblemData for SurfaceWaveProblem {
    fn components(&self) -> usize {
        2
    }
    fn f1(&self, c: usize, x: f64, y: f64) -> f64 {
        self.exact(c, x, y, 0.0)
    }
    fn f2_prev(&self, c: usize, x: f64, y: f64) -> f64 {
        self.exact(c, x, y, -self.dt)
    }
}

/// The `L = 0.03` Gaussian pulse, used by the growth studies.
pub struct GaussianPulseProblem {
    pub width: f64,
    pub ncomp: usize,
}

impl GaussianPulseProblem {
    pub fn new(ncomp: usize) -> Self {
        Self {
            width: DEFAULT_PULSE_WIDTH,
            ncomp,
        }
    }
}

impl ProblemData for GaussianPulseProblem {
    fn components(&self) -> usize {
        self.ncomp
    }
    fn f1(&self, _: usize, x: f64, y: f64) -> f64 {
        let l2 = self.width * self.width;
        (-((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)) / l2).exp()
    }
    fn f2_prev(&self, c: usize, x: f64, y: f64) -> f64 {
        self.f1(c, x, y)
    }
}

/// Boundary-forcing variants built from the pulse-modulated surface trace
/// `G(y, t) = u_s(0, y, t) · p(t)` with `p(t) = exp(−(t/t₀ − 7)²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForcingVariant {
    G,
    Gt,
    Gtt,
}

impl ForcingVariant {
    pub fn label(&self) -> &'static str {
        match self {
            ForcingVariant::G => "g",
            ForcingVariant::Gt => "gt",
            ForcingVariant::Gtt => "gtt",
        }
    }
}

/// Homogeneous initial data, forcing only through `g₀`; two real
/// components with `b = iβ`.
pub struct BoundaryForcingProblem {
    pub beta: f64,
    pub omega0: f64,
    pub t0: f64,
    pub variant: ForcingVariant,
}

impl BoundaryForcingProblem {
    pub fn new(beta: f64, omega0: f64, variant: ForcingVariant) -> Result<Self, SolverError> {
        if !(beta * omega0 > 0.0) {
            return Err(SolverError::InvalidGrid(
                "boundary forcing needs beta*omega0 > 0".to_string(),
            ));
        }
        Ok(Self {
            beta,
            omega0,
            t0: DEFAULT_T0,
            variant,
        })
    }

    /// Complex `G` and its analytic time derivatives at `(y, t)`;
    /// returns the requested variant as (re, im).
    pub fn value(&self, y: f64, t: f64) -> (f64, f64) {
        let c = (1.0 - self.beta * self.beta).sqrt();
        let arg = t / self.t0 - 7.0;
        let p = (-arg * arg).exp();
        let dp = -2.0 / self.t0 * arg * p;
        let ddp = (4.0 * arg * arg - 2.0) / (self.t0 * self.t0) * p;
        let phase = self.omega0 * (y - c * t);
        let (sin, cos) = phase.sin_cos();
        let wc = self.omega0 * c;
        // G = e^{i phase} p; d/dt e^{i phase} = −i wc e^{i phase}.
        let (re, im) = match self.variant {
            ForcingVariant::G => (p * cos, p * sin),
            ForcingVariant::Gt => (dp * cos + wc * p * sin, dp * sin - wc * p * cos),
            ForcingVariant::Gtt => (
                (ddp - wc * wc * p) * cos + 2.0 * wc * dp * sin,
                (ddp - wc * wc * p) * sin - 2.0 * wc * dp * cos,
            ),
        };
        (re, im)
    }
}

impl ProblemData for BoundaryForcingProblem {
    fn components(&self) -> usize {
        2
    }
    fn f1(&self, _: usize, _: f64, _: f64) -> f64 {
        0.0
    }
    fn f2_prev(&self, _: usize, _: f64, _: f64) -> f64 {
        0.0
    }
    fn has_g0(&self) -> bool {
        true
    }
    fn g0(&self, c: usize, y: f64, t: f64) -> f64 {
        let (re, im) = self.value(y, t);
        if c == 0 {
            re
        } else {
            im
        }
    }
}

/// One line of a convergence table.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub case: String,
    pub h: f64,
    pub err_t1: f64,
    pub err_t10: f64,
    /// Set when the `t = 10` error exceeds the solution amplitude (the
    /// non-convergent, phase-wrapped regime).
    pub phase_wrapped: bool,
}

pub fn bc_label(bc: &BoundaryCoefficient) -> String {
    match bc {
        BoundaryCoefficient::Zero => "b=0".to_string(),
        BoundaryCoefficient::Real(b) => format!("b={b}"),
        BoundaryCoefficient::Imaginary(beta) => format!("b=i{beta}"),
    }
}

fn errors_at_1_and_10<P: ProblemData>(
    grid: Grid2D,
    bc: BoundaryCoefficient,
    data: &P,
    exact: &dyn Fn(usize, f64, f64, f64) -> f64,
) -> Result<(f64, f64), SolverError> {
    let mut sim = Simulation::new(grid, bc, data)?;
    sim.advance_to(1.0)?;
    let err_t1 = sim.max_error(exact);
    sim.advance_to(10.0)?;
    let err_t10 = sim.max_error(exact);
    Ok((err_t1, err_t10))
}

/// Max-norm errors against the traveling wave at `t = 1` and `t = 10` per
/// grid size, the convergence-table protocol (`δt = 0.5h` by default).
pub fn traveling_wave_suite(
    bc: BoundaryCoefficient,
    h_list: &[f64],
    courant: f64,
) -> Result<Vec<ConvergenceRow>, SolverError> {
    let mut rows = Vec::new();
    for &h in h_list {
        let grid = Grid2D::from_h(h, courant)?;
        let data = TravelingWaveOnGrid::new(bc, &grid);
        let (err_t1, err_t10) =
            errors_at_1_and_10(grid, bc, &data, &|c, x, y, t| data.exact(c, x, y, t))?;
        rows.push(ConvergenceRow {
            case: bc_label(&bc),
            h: grid.h,
            err_t1,
            err_t10,
            phase_wrapped: err_t10 > 1.0,
        });
    }
    Ok(rows)
}

/// Convergence rows for the free surface wave (homogeneous forcing).
pub fn surface_wave_suite(
    beta: f64,
    omega0: f64,
    h_list: &[f64],
    courant: f64,
) -> Result<Vec<ConvergenceRow>, SolverError> {
    let mut rows = Vec::new();
    for &h in h_list {
        let grid = Grid2D::from_h(h, courant)?;
        let data = SurfaceWaveProblem::new(beta, omega0, &grid)?;
        let bc = BoundaryCoefficient::Imaginary(beta);
        let (err_t1, err_t10) =
            errors_at_1_and_10(grid, bc, &data, &|c, x, y, t| data.exact(c, x, y, t))?;
        rows.push(ConvergenceRow {
            case: format!("beta={beta}"),
            h: grid.h,
            err_t1,
            err_t10,
            phase_wrapped: err_t10 > 1.0,
        });
    }
    Ok(rows)
}

/// Least-squares convergence order from the `t = 1` column of a suite.
pub fn convergence_order(rows: &[ConvergenceRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.h.ln(), r.err_t1.ln())).collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Max-norm series of one growth or forcing run.
#[derive(Debug, Clone)]
pub struct MaxNormSeries {
    pub label: String,
    pub h: f64,
    pub samples: Vec<(f64, f64)>,
}

impl MaxNormSeries {
    pub fn peak(&self) -> f64 {
        self.samples.iter().map(|s| s.1).fold(0.0, f64::max)
    }

    pub fn value_at(&self, t: f64) -> f64 {
        self.samples
            .iter()
            .min_by(|a, b| (a.0 - t).abs().total_cmp(&(b.0 - t).abs()))
            .map(|s| s.1)
            .unwrap_or(0.0)
    }
}

fn series_from(label: String, h: f64, out: &RunOutput) -> MaxNormSeries {
    MaxNormSeries {
        label,
        h,
        samples: out.samples.iter().map(|s| (s.time, s.max_norm)).collect(),
    }
}

/// Gaussian-pulse run with real `b`, homogeneous forcing, sampled every
/// 0.25 time units per grid size.
pub fn growth_study(
    b: f64,
    h_list: &[f64],
    t_end: f64,
    courant: f64,
) -> Result<Vec<MaxNormSeries>, SolverError> {
    let mut series = Vec::new();
    for &h in h_list {
        let grid = Grid2D::from_h(h, courant)?;
        let bc = if b == 0.0 {
            BoundaryCoefficient::Zero
        } else {
            BoundaryCoefficient::Real(b)
        };
        let data = GaussianPulseProblem::new(1);
        let cadence = (0.25 / grid.dt).round().max(1.0) as usize;
        let out = run(grid, bc, &data, t_end, cadence, None)?;
        series.push(series_from(format!("b={b}"), grid.h, &out));
    }
    Ok(series)
}

/// Pure boundary-forcing runs (zero data, `F = 0`, `g₁ = 0`) per `β`,
/// sampled finely enough to resolve the response peak.
pub fn forcing_family_study(
    beta_list: &[f64],
    variant: ForcingVariant,
    h: f64,
    omega0: f64,
    t_end: f64,
    courant: f64,
) -> Result<Vec<MaxNormSeries>, SolverError> {
    let mut series = Vec::new();
    for &beta in beta_list {
        let grid = Grid2D::from_h(h, courant)?;
        let data = BoundaryForcingProblem::new(beta, omega0, variant)?;
        let cadence = (0.01 / grid.dt).round().max(1.0) as usize;
        let out = run(
            grid,
            BoundaryCoefficient::Imaginary(beta),
            &data,
            t_end,
            cadence,
            None,
        )?;
        series.push(series_from(
            format!("beta={beta} variant={}", variant.label()),
            grid.h,
            &out,
        ));
    }
    Ok(series)
}

/// CSV for convergence tables: `case,h,err_t1,err_t10`.
pub fn rows_to_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("case,h,err_t1,err_t10\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:.17e},{:.17e},{:.17e}\n",
            r.case, r.h, r.err_t1, r.err_t10
        ));
    }
    out
}

/// CSV for max-norm series: `label,h,time,maxnorm`.
pub fn series_to_csv(series: &[MaxNormSeries]) -> String {
    let mut out = String::from("label,h,time,maxnorm\n");
    for s in series {
        for (t, v) in &s.samples {
            out.push_str(&format!("{},{:.17e},{:.17e},{:.17e}\n", s.label, s.h, t, v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Fourth-order central differences, the independent differentiation
    /// oracle for the manufactured identities.
    fn d2(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
            / (12.0 * h * h)
    }

    #[test]
    fn traveling_wave_satisfies_forced_pde() {
        let p = TravelingWaveProblem::new(BoundaryCoefficient::Imaginary(0.5));
        let h = 1e-3;
        for (x, y, t) in [(0.3, 0.7, 0.45), (0.05, 0.2, 1.7), (0.9, 0.9, 3.21)] {
            for c in 0..2 {
                let utt = d2(&|s| p.exact(c, x, y, s), t, h);
                let uxx = d2(&|s| p.exact(c, s, y, t), x, h);
                let uyy = d2(&|s| p.exact(c, x, s, t), y, h);
                let f = p.forcing(c, x, y, t);
                assert!(
                    (utt - uxx - uyy - f).abs() < 1e-5,
                    "PDE residual via FD oracle too large"
                );
            }
        }
    }

    #[test]
    fn traveling_wave_forcing_is_4pi2_u() {
        let p = TravelingWaveProblem::new(BoundaryCoefficient::Zero);
        for (x, y, t) in [(0.1, 0.4, 0.0), (0.8, 0.35, 2.2)] {
            let want = (2.0 * PI) * (2.0 * PI) * p.exact(0, x, y, t);
            assert!((p.forcing(0, x, y, t) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn traveling_wave_boundary_forcings_are_analytic_derivatives() {
        let p = TravelingWaveProblem::new(BoundaryCoefficient::Real(0.5));
        let h = 1e-6;
        let (y, t) = (0.37, 1.12);
        let ux = (p.exact(0, h, y, t) - p.exact(0, -h, y, t)) / (2.0 * h);
        let uy = (p.exact(0, 0.0, y + h, t) - p.exact(0, 0.0, y - h, t)) / (2.0 * h);
        assert!((p.g0(0, y, t) - (ux - 0.5 * uy)).abs() < 1e-8);
        let ux1 = (p.exact(0, 1.0 + h, y, t) - p.exact(0, 1.0 - h, y, t)) / (2.0 * h);
        assert!((p.g1(0, y, t) - ux1).abs() < 1e-8);
    }

    #[test]
    fn surface_wave_is_exact_and_boundary_homogeneous() {
        let grid = Grid2D::new(16, 0.5).unwrap();
        let p = SurfaceWaveProblem::new(0.5, DEFAULT_OMEGA0, &grid).unwrap();
        let h = 1e-5;
        for (x, y, t) in [(0.2, 0.3, 0.7), (0.6, 0.81, 2.9)] {
            for c in 0..2 {
                let utt = d2(&|s| p.exact(c, x, y, s), t, h);
                let uxx = d2(&|s| p.exact(c, s, y, t), x, h);
                let uyy = d2(&|s| p.exact(c, x, s, t), y, h);
                assert!((utt - uxx - uyy).abs() < 1e-2 * DEFAULT_OMEGA0.powi(2));
            }
        }
        // Analytic boundary identity u_x − iβ u_y = 0 at x = 0, split into
        // the two real components.
        let beta = 0.5;
        let (y, t) = (0.43, 1.3);
        let om = DEFAULT_OMEGA0;
        let c0 = p.speed();
        let phase = om * (y - c0 * t);
        // u1_x + β u2_y and u2_x − β u1_y, both exactly zero.
        let u1x = -beta * om * phase.cos();
        let u2y = om * phase.cos();
        let u2x = -beta * om * phase.sin();
        let u1y = -om * phase.sin();
        assert!((u1x + beta * u2y).abs() < 1e-12 * om);
        assert!((u2x - beta * u1y).abs() < 1e-12 * om);
    }

    #[test]
    fn surface_wave_rejects_bad_parameters() {
        let grid = Grid2D::new(16, 0.5).unwrap();
        assert!(SurfaceWaveProblem::new(-0.5, DEFAULT_OMEGA0, &grid).is_err());
        assert!(SurfaceWaveProblem::new(1.5, DEFAULT_OMEGA0, &grid).is_err());
    }

    #[test]
    fn forcing_pulse_starts_negligible() {
        let p = BoundaryForcingProblem::new(0.9, DEFAULT_OMEGA0, ForcingVariant::G).unwrap();
        let (re, im) = p.value(0.3, 0.0);
        assert!(re.hypot(im) < 1e-20);
    }

    #[test]
    fn forcing_derivatives_match_fd_oracle() {
        let base = BoundaryForcingProblem::new(0.9, DEFAULT_OMEGA0, ForcingVariant::G).unwrap();
        let gt = BoundaryForcingProblem::new(0.9, DEFAULT_OMEGA0, ForcingVariant::Gt).unwrap();
        let gtt = BoundaryForcingProblem::new(0.9, DEFAULT_OMEGA0, ForcingVariant::Gtt).unwrap();
        let h = 1e-5;
        let (y, t) = (0.27, 1.42);
        for c in 0..2 {
            let pick = |v: (f64, f64)| if c == 0 { v.0 } else { v.1 };
            let d1 = (pick(base.value(y, t + h)) - pick(base.value(y, t - h))) / (2.0 * h);
            assert!((pick(gt.value(y, t)) - d1).abs() < 1e-4 * (1.0 + d1.abs()));
            let d2v = (pick(base.value(y, t + h)) - 2.0 * pick(base.value(y, t))
                + pick(base.value(y, t - h)))
                / (h * h);
            assert!((pick(gtt.value(y, t)) - d2v).abs() < 1e-2 * (1.0 + d2v.abs()));
        }
    }

    #[test]
    fn gaussian_pulse_peaks_at_center() {
        let grid = Grid2D::new(51, 0.5).unwrap();
        let data = GaussianPulseProblem::new(1);
        let fields = crate::solver::initialize(&grid, &BoundaryCoefficient::Zero, &data).unwrap();
        let mut best = (0.0, 0usize, 0usize);
        for j in 1..=grid.n {
            for k in 0..grid.n {
                let v = fields.current[0].at(j, k);
                if v > best.0 {
                    best = (v, j, k);
                }
            }
        }
        assert!((best.0 - 1.0).abs() < 1e-12, "peak {best:?}");
        assert!((grid.x(best.1) - 0.5).abs() <= grid.h / 2.0 + 1e-12);
        assert!((grid.y(best.2) - 0.5).abs() <= grid.h / 2.0 + 1e-12);
    }

    #[test]
    fn max_norm_error_trivial_cases() {
        let grid = Grid2D::new(21, 0.5).unwrap();
        let data = TravelingWaveOnGrid::new(BoundaryCoefficient::Zero, &grid);
        let sim = Simulation::new(grid, BoundaryCoefficient::Zero, &data).unwrap();
        let zero_err = sim.max_error(&|c, x, y, t| data.exact(c, x, y, t));
        assert!(zero_err < 1e-15);
        let off = sim.max_error(&|c, x, y, t| data.exact(c, x, y, t) + 1e-3);
        assert!((off - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn coarse_table_row_matches_reference() {
        // The h = 1e-2 Neumann row of the convergence table: errors
        // (7.09e-4, 4.69e-4) at t = 1, 10.
        let rows = traveling_wave_suite(BoundaryCoefficient::Zero, &[1e-2], 0.5).unwrap();
        let r = &rows[0];
        assert!(
            (r.err_t1 - 7.09e-4).abs() < 0.1 * 7.09e-4,
            "t=1 error {:.3e}",
            r.err_t1
        );
        assert!(
            (r.err_t10 - 4.69e-4).abs() < 0.1 * 4.69e-4,
            "t=10 error {:.3e}",
            r.err_t10
        );
    }

    #[test]
    fn studies_are_reproducible_bitwise() {
        let a = forcing_family_study(&[0.9], ForcingVariant::G, 1.0 / 50.0, DEFAULT_OMEGA0, 2.0, 0.5)
            .unwrap();
        let b = forcing_family_study(&[0.9], ForcingVariant::G, 1.0 / 50.0, DEFAULT_OMEGA0, 2.0, 0.5)
            .unwrap();
        assert_eq!(a[0].samples.len(), b[0].samples.len());
        for (x, y) in a[0].samples.iter().zip(&b[0].samples) {
            assert_eq!(x.1.to_bits(), y.1.to_bits());
        }
    }
}
