//! Leapfrog scheme for `u_tt = u_xx + u_yy + F` on the unit strip
//! `0 ≤ x ≤ 1` with `y` periodic (period 1).
//!
//! Grid: `x_j = (j−1)h` for `j = 0..N+1` (`j = 0` and `j = N+1` are ghost
//! columns), `y_k = kh` for `k = 0..N`, `h = 1/(N−1)`. Rows `k = 0` and
//! `k = N` are periodic copies of rows `N−1` and `1`.
//!
//! Boundary conditions: `D₀x v − b D₀y v = g₀` at `x = 0` (with `b` zero,
//! real, or purely imaginary — the imaginary case runs two real components
//! in lock-step with cross-coupled closures) and `D₀x v = g₁` at `x = 1`,
//! both realized by solving the centered condition for the ghost value.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("solution diverged at step {step} (t = {time:.6}): max norm {max_norm:.3e}")]
    Diverged { step: usize, time: f64, max_norm: f64 },
}

/// Hard ceiling on the Courant factor; the 2D stability limit is `1/√2`.
pub const MAX_COURANT: f64 = 0.99 * std::f64::consts::FRAC_1_SQRT_2;
/// Max-norm threshold beyond which a run is declared diverged.
pub const DIVERGENCE_THRESHOLD: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub n: usize,
    pub h: f64,
    pub dt: f64,
}

impl Grid2D {
    pub fn new(n: usize, courant: f64) -> Result<Self, SolverError> {
        if n < 8 {
            return Err(SolverError::InvalidGrid(format!("N must be >= 8, got {n}")));
        }
        if !(courant > 0.0) || courant > MAX_COURANT {
            return Err(SolverError::InvalidGrid(format!(
                "Courant factor must lie in (0, {MAX_COURANT:.4}], got {courant}"
            )));
        }
        let h = 1.0 / (n - 1) as f64;
        Ok(Self { n, h, dt: courant * h })
    }

    /// Grid with `h` close to the requested value (`N = round(1/h) + 1`).
    pub fn from_h(h: f64, courant: f64) -> Result<Self, SolverError> {
        if !(h > 0.0 && h < 0.5) {
            return Err(SolverError::InvalidGrid(format!("bad grid size h = {h}")));
        }
        Self::new((1.0 / h).round() as usize + 1, courant)
    }

    pub fn x(&self, j: usize) -> f64 {
        (j as f64 - 1.0) * self.h
    }

    pub fn y(&self, k: usize) -> f64 {
        k as f64 * self.h
    }

    /// Number of x-indices including ghosts.
    pub fn nx(&self) -> usize {
        self.n + 2
    }

    /// Number of y-indices including the duplicate periodic rows.
    pub fn ny(&self) -> usize {
        self.n + 1
    }
}

/// One time level of one solution component, stored row-major in `j` with
/// the `k` direction contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub n: usize,
    data: Vec<f64>,
}

impl Field {
    pub fn zeros(grid: &Grid2D) -> Self {
        Self {
            n: grid.n,
            data: vec![0.0; grid.nx() * grid.ny()],
        }
    }

    #[inline]
    pub fn at(&self, j: usize, k: usize) -> f64 {
        self.data[j * (self.n + 1) + k]
    }

    #[inline]
    pub fn set(&mut self, j: usize, k: usize, v: f64) {
        self.data[j * (self.n + 1) + k] = v;
    }

    #[inline]
    pub fn row(&self, j: usize) -> &[f64] {
        let w = self.n + 1;
        &self.data[j * w..(j + 1) * w]
    }

    #[inline]
    pub fn row_mut(&mut self, j: usize) -> &mut [f64] {
        let w = self.n + 1;
        &mut self.data[j * w..(j + 1) * w]
    }
}

/// The boundary coefficient `b` in `D₀x v − b D₀y v = g₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCoefficient {
    Zero,
    Real(f64),
    Imaginary(f64),
}

impl BoundaryCoefficient {
    pub fn components(&self) -> usize {
        match self {
            BoundaryCoefficient::Imaginary(_) => 2,
            _ => 1,
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let v = match self {
            BoundaryCoefficient::Zero => 0.0,
            BoundaryCoefficient::Real(b) => *b,
            BoundaryCoefficient::Imaginary(beta) => *beta,
        };
        if v.is_finite() {
            Ok(())
        } else {
            Err(SolverError::InvalidGrid(format!(
                "boundary coefficient must be finite, got {v}"
            )))
        }
    }
}

/// Interior forcing shape, used to pick the cheapest update kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForcingKind {
    None,
    /// `F(x, y, t) = fx(x, t) · fy(y)`.
    Separable,
    General,
}

/// Problem data: interior forcing, boundary forcings, and the two initial
/// time levels (`f'₂` is the solution value at `t = −δt`).
pub trait ProblemData {
    fn components(&self) -> usize {
        1
    }
    fn f1(&self, component: usize, x: f64, y: f64) -> f64;
    fn f2_prev(&self, component: usize, x: f64, y: f64) -> f64;

    fn forcing_kind(&self) -> ForcingKind {
        ForcingKind::None
    }
    fn forcing(&self, _component: usize, _x: f64, _y: f64, _t: f64) -> f64 {
        0.0
    }
    /// For [`ForcingKind::Separable`]: fill `fx[j]` over `j = 1..=N` and
    /// `fy[k]` over `k = 0..=N` (slices are sized `N+2` and `N+1`).
    fn forcing_factors(
        &self,
        _component: usize,
        _t: f64,
        _grid: &Grid2D,
        _fx: &mut [f64],
        _fy: &mut [f64],
    ) {
    }

    fn has_g0(&self) -> bool {
        false
    }
    fn g0(&self, _component: usize, _y: f64, _t: f64) -> f64 {
        0.0
    }
    fn has_g1(&self) -> bool {
        false
    }
    fn g1(&self, _component: usize, _y: f64, _t: f64) -> f64 {
        0.0
    }
}

/// Two time levels per component.
#[derive(Debug, Clone)]
pub struct FieldPair {
    pub current: Vec<Field>,
    pub previous: Vec<Field>,
}

impl FieldPair {
    pub fn components(&self) -> usize {
        self.current.len()
    }
}

fn enforce_periodic_rows(field: &mut Field) {
    let n = field.n;
    for j in 0..n + 2 {
        let row = field.row_mut(j);
        row[0] = row[n - 1];
        row[n] = row[1];
    }
}

/// Sets the ghost columns `j = 0` and `j = N+1` of every component of
/// `level` so the centered boundary conditions hold at time `t`. The
/// interior columns and periodic rows of `level` must already be final.
pub fn apply_boundary_closure(
    level: &mut [Field],
    grid: &Grid2D,
    bc: &BoundaryCoefficient,
    data: &impl ProblemData,
    t: f64,
) {
    let n = grid.n;
    let h = grid.h;
    let two_h = 2.0 * h;
    let ncomp = level.len();

    // D₀y of column j = 1 per component, needed by the x = 0 closure.
    let mut d0y: Vec<Vec<f64>> = Vec::with_capacity(ncomp);
    for field in level.iter() {
        let row1 = field.row(1);
        let mut d = vec![0.0; n + 1];
        for k in 1..n {
            d[k] = (row1[k + 1] - row1[k - 1]) / two_h;
        }
        d0y.push(d);
    }

    for (c, field) in level.iter_mut().enumerate() {
        // x = 0: v0 = v2 − 2h (g0 + b_eff D₀y v_other).
        let row2 = field.row(2).to_vec();
        let (b_eff, coupled) = match bc {
            BoundaryCoefficient::Zero => (0.0, c),
            BoundaryCoefficient::Real(b) => (*b, c),
            // Component 1 couples to −β·D₀y of component 2 and vice versa.
            BoundaryCoefficient::Imaginary(beta) => {
                if c == 0 {
                    (-beta, 1)
                } else {
                    (*beta, 0)
                }
            }
        };
        let has_g0 = data.has_g0();
        {
            let dvec = &d0y[coupled];
            let row0 = field.row_mut(0);
            for k in 1..n {
                let g = if has_g0 { data.g0(c, grid.y(k), t) } else { 0.0 };
                row0[k] = row2[k] - two_h * (g + b_eff * dvec[k]);
            }
            row0[0] = row0[n - 1];
            row0[n] = row0[1];
        }

        // x = 1: v_{N+1} = v_{N−1} + 2h g1.
        let row_nm1 = field.row(n - 1).to_vec();
        let has_g1 = data.has_g1();
        let row_np1 = field.row_mut(n + 1);
        for k in 1..n {
            let g = if has_g1 { data.g1(c, grid.y(k), t) } else { 0.0 };
            row_np1[k] = row_nm1[k] + two_h * g;
        }
        row_np1[0] = row_np1[n - 1];
        row_np1[n] = row_np1[1];
    }
}

/// Samples the two initial levels, enforces periodicity, and fills the
/// ghost columns through the boundary closure at `t = 0` and `t = −δt`.
pub fn initialize(
    grid: &Grid2D,
    bc: &BoundaryCoefficient,
    data: &impl ProblemData,
) -> Result<FieldPair, SolverError> {
    bc.validate()?;
    let ncomp = data.components();
    assert_eq!(
        ncomp,
        bc.components(),
        "component count must match the boundary coefficient"
    );
    let mut current = vec![Field::zeros(grid); ncomp];
    let mut previous = vec![Field::zeros(grid); ncomp];
    let n = grid.n;
    for c in 0..ncomp {
        for j in 1..=n {
            let x = grid.x(j);
            for k in 1..n {
                let y = grid.y(k);
                current[c].set(j, k, data.f1(c, x, y));
                previous[c].set(j, k, data.f2_prev(c, x, y));
            }
        }
        enforce_periodic_rows(&mut current[c]);
        enforce_periodic_rows(&mut previous[c]);
    }
    apply_boundary_closure(&mut current, grid, bc, data, 0.0);
    apply_boundary_closure(&mut previous, grid, bc, data, -grid.dt);
    Ok(FieldPair { current, previous })
}

/// Scratch buffers reused across steps.
pub struct StepScratch {
    next: Vec<Field>,
    fx: Vec<f64>,
    fy: Vec<f64>,
    forcing: Option<Vec<Field>>,
}

impl StepScratch {
    pub fn new(grid: &Grid2D, ncomp: usize, kind: ForcingKind) -> Self {
        Self {
            next: vec![Field::zeros(grid); ncomp],
            fx: vec![0.0; grid.nx()],
            fy: vec![0.0; grid.ny()],
            forcing: match kind {
                ForcingKind::General => Some(vec![Field::zeros(grid); ncomp]),
                _ => None,
            },
        }
    }
}

/// Advances one leapfrog step from completed level `n` (`t = n·δt`).
/// Returns the max norm of the new level over the physical nodes.
#[allow(clippy::too_many_arguments)]
pub fn step(
    fields: &mut FieldPair,
    grid: &Grid2D,
    bc: &BoundaryCoefficient,
    data: &impl ProblemData,
    n_step: usize,
    scratch: &mut StepScratch,
) -> f64 {
    let n = grid.n;
    let t_n = n_step as f64 * grid.dt;
    let lam = (grid.dt / grid.h) * (grid.dt / grid.h);
    let dt2 = grid.dt * grid.dt;
    let kind = data.forcing_kind();
    let mut max_abs = 0.0f64;

    for c in 0..fields.components() {
        match kind {
            ForcingKind::Separable => {
                data.forcing_factors(c, t_n, grid, &mut scratch.fx, &mut scratch.fy)
            }
            ForcingKind::General => {
                let f = &mut scratch.forcing.as_mut().unwrap()[c];
                for j in 1..=n {
                    let x = grid.x(j);
                    let row = f.row_mut(j);
                    for (k, slot) in row.iter_mut().enumerate().take(n).skip(1) {
                        *slot = data.forcing(c, x, grid.y(k), t_n);
                    }
                }
            }
            ForcingKind::None => {}
        }
        let cur = &fields.current[c];
        let prev = &fields.previous[c];
        let next = &mut scratch.next[c];
        for j in 1..=n {
            let up = cur.row(j - 1);
            let mid = cur.row(j);
            let down = cur.row(j + 1);
            let prow = prev.row(j);
            let out = next.row_mut(j);
            let fxj = scratch.fx[j];
            let frow = scratch
                .forcing
                .as_ref()
                .map(|f| f[c].row(j));
            for k in 1..n {
                let lap = up[k] + down[k] + mid[k - 1] + mid[k + 1] - 4.0 * mid[k];
                let mut v = 2.0 * mid[k] - prow[k] + lam * lap;
                match kind {
                    ForcingKind::Separable => v += dt2 * fxj * scratch.fy[k],
                    ForcingKind::General => v += dt2 * frow.unwrap()[k],
                    ForcingKind::None => {}
                }
                out[k] = v;
                max_abs = max_abs.max(v.abs());
            }
        }
        enforce_periodic_rows(next);
    }
    // Commit: previous <- current, current <- next (reusing buffers).
    for c in 0..fields.components() {
        std::mem::swap(&mut fields.previous[c], &mut fields.current[c]);
        std::mem::swap(&mut fields.current[c], &mut scratch.next[c]);
    }
    apply_boundary_closure(
        &mut fields.current,
        grid,
        bc,
        data,
        (n_step + 1) as f64 * grid.dt,
    );
    max_abs
}

/// A stateful simulation wrapper around [`initialize`] and [`step`].
pub struct Simulation<'a, P: ProblemData> {
    pub grid: Grid2D,
    pub bc: BoundaryCoefficient,
    data: &'a P,
    pub fields: FieldPair,
    scratch: StepScratch,
    pub step_index: usize,
    pub last_max_norm: f64,
}

impl<'a, P: ProblemData> Simulation<'a, P> {
    pub fn new(grid: Grid2D, bc: BoundaryCoefficient, data: &'a P) -> Result<Self, SolverError> {
        let fields = initialize(&grid, &bc, data)?;
        let scratch = StepScratch::new(&grid, data.components(), data.forcing_kind());
        let mut sim = Self {
            grid,
            bc,
            data,
            fields,
            scratch,
            step_index: 0,
            last_max_norm: 0.0,
        };
        sim.last_max_norm = sim.max_norm();
        Ok(sim)
    }

    pub fn time(&self) -> f64 {
        self.step_index as f64 * self.grid.dt
    }

    /// Max norm over the physical nodes `j = 1..N`, `k = 0..N−1`, all
    /// components.
    pub fn max_norm(&self) -> f64 {
        let n = self.grid.n;
        let mut m = 0.0f64;
        for f in &self.fields.current {
            for j in 1..=n {
                let row = f.row(j);
                for &v in &row[0..n] {
                    m = m.max(v.abs());
                }
            }
        }
        m
    }

    /// Max-norm error against an exact solution `(component, x, y, t) → u`.
    pub fn max_error(&self, exact: &dyn Fn(usize, f64, f64, f64) -> f64) -> f64 {
        let n = self.grid.n;
        let t = self.time();
        let mut m = 0.0f64;
        for (c, f) in self.fields.current.iter().enumerate() {
            for j in 1..=n {
                let x = self.grid.x(j);
                let row = f.row(j);
                for (k, &v) in row.iter().enumerate().take(n) {
                    m = m.max((v - exact(c, x, self.grid.y(k), t)).abs());
                }
            }
        }
        m
    }

    pub fn advance(&mut self) -> Result<(), SolverError> {
        let m = step(
            &mut self.fields,
            &self.grid,
            &self.bc,
            self.data,
            self.step_index,
            &mut self.scratch,
        );
        self.step_index += 1;
        self.last_max_norm = m;
        if !(m < DIVERGENCE_THRESHOLD) {
            return Err(SolverError::Diverged {
                step: self.step_index,
                time: self.time(),
                max_norm: m,
            });
        }
        Ok(())
    }

    /// Advances until `time >= t_target` (number of steps rounds up).
    pub fn advance_to(&mut self, t_target: f64) -> Result<(), SolverError> {
        let total = (t_target / self.grid.dt - 1e-9).ceil().max(0.0) as usize;
        while self.step_index < total {
            self.advance()?;
        }
        Ok(())
    }
}

/// One monitor record of a [`run`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonitorSample {
    pub step: usize,
    pub time: f64,
    pub max_norm: f64,
    pub max_error: Option<f64>,
}

pub struct RunOutput {
    pub samples: Vec<MonitorSample>,
    pub steps: usize,
    pub final_time: f64,
    pub fields: FieldPair,
}

/// Runs `⌈t_end/δt⌉` steps, recording the max norm (and the error against
/// `exact`, when given) every `cadence` steps and at the final step.
pub fn run<P: ProblemData>(
    grid: Grid2D,
    bc: BoundaryCoefficient,
    data: &P,
    t_end: f64,
    cadence: usize,
    exact: Option<&dyn Fn(usize, f64, f64, f64) -> f64>,
) -> Result<RunOutput, SolverError> {
    if t_end < 0.0 {
        return Err(SolverError::InvalidGrid("t_end must be nonnegative".to_string()));
    }
    let cadence = cadence.max(1);
    let mut sim = Simulation::new(grid, bc, data)?;
    let total = (t_end / grid.dt - 1e-9).ceil().max(0.0) as usize;
    let mut samples = Vec::with_capacity(total / cadence + 2);
    let record = |sim: &Simulation<P>, samples: &mut Vec<MonitorSample>| {
        samples.push(MonitorSample {
            step: sim.step_index,
            time: sim.time(),
            max_norm: sim.max_norm(),
            max_error: exact.map(|e| sim.max_error(e)),
        });
    };
    record(&sim, &mut samples);
    while sim.step_index < total {
        sim.advance()?;
        if sim.step_index % cadence == 0 || sim.step_index == total {
            record(&sim, &mut samples);
        }
    }
    Ok(RunOutput {
        samples,
        steps: sim.step_index,
        final_time: sim.time(),
        fields: sim.fields,
    })
}

/// Discrete leapfrog energy
/// `E = ‖(v^n − v^{n−1})/δt‖²_w + a(v^n, v^{n−1})`, where the weighted
/// norm uses half weights at `j = 1, N` and
/// `a(u, v) = h²[Σ_k Σ_{j<N} D₊x u D₊x v + Σ_j w_j Σ_k D₊y u D₊y v]`
/// over the unique periodic rows `k = 1..N−1`. Exactly conserved by the
/// homogeneous `b = 0` scheme under the Courant restriction.
pub fn discrete_energy(fields: &FieldPair, grid: &Grid2D) -> f64 {
    let n = grid.n;
    let h2 = grid.h * grid.h;
    let mut energy = 0.0;
    for c in 0..fields.components() {
        let cur = &fields.current[c];
        let prev = &fields.previous[c];
        let mut kinetic = 0.0;
        let mut potential = 0.0;
        for j in 1..=n {
            let w = if j == 1 || j == n { 0.5 } else { 1.0 };
            let cr = cur.row(j);
            let pr = prev.row(j);
            for k in 1..n {
                let dv = (cr[k] - pr[k]) / grid.dt;
                kinetic += w * dv * dv;
                // y-edges (k, k+1), weight w_j.
                potential += w * (cr[k + 1] - cr[k]) * (pr[k + 1] - pr[k]) / h2;
            }
        }
        // x-edges (j, j+1) for j = 1..N−1, weight 1.
        for j in 1..n {
            let cr0 = cur.row(j);
            let cr1 = cur.row(j + 1);
            let pr0 = prev.row(j);
            let pr1 = prev.row(j + 1);
            for k in 1..n {
                potential += (cr1[k] - cr0[k]) * (pr1[k] - pr0[k]) / h2;
            }
        }
        energy += h2 * (kinetic + potential);
    }
    energy
}

#[cfg(test)]
mod tests {
    use super::*;

    struct ZeroData {
        ncomp: usize,
    }
    impl ProblemData for ZeroData {
        fn components(&self) -> usize {
            self.ncomp
        }
        fn f1(&self, _: usize, _: f64, _: f64) -> f64 {
            0.0
        }
        fn f2_prev(&self, _: usize, _: f64, _: f64) -> f64 {
            0.0
        }
    }

    struct PulseData;
    impl ProblemData for PulseData {
        fn f1(&self, _: usize, x: f64, y: f64) -> f64 {
            let l = 0.03;
            (-((x - 0.5).powi(2) + (y - 0.5).powi(2)) / (l * l)).exp()
        }
        fn f2_prev(&self, c: usize, x: f64, y: f64) -> f64 {
            self.f1(c, x, y)
        }
    }

    struct HugeData;
    impl ProblemData for HugeData {
        fn f1(&self, _: usize, _: f64, _: f64) -> f64 {
            2e12
        }
        fn f2_prev(&self, _: usize, _: f64, _: f64) -> f64 {
            2e12
        }
    }

    /// 1D data: y-dependent only, so the solution must stay x-independent.
    struct OneDData;
    impl ProblemData for OneDData {
        fn f1(&self, _: usize, _: f64, y: f64) -> f64 {
            (2.0 * std::f64::consts::PI * y).sin()
        }
        fn f2_prev(&self, c: usize, x: f64, y: f64) -> f64 {
            self.f1(c, x, y)
        }
    }

    #[test]
    fn grid_construction() {
        let g = Grid2D::new(101, 0.5).unwrap();
        assert_eq!(g.h, 0.01);
        assert_eq!(g.dt, 0.005);
        assert!((g.x(1), g.y(0)) == (0.0, 0.0));
        assert!((g.x(g.n) - 1.0).abs() < 1e-15);
        assert!(Grid2D::new(4, 0.5).is_err());
        assert!(Grid2D::new(101, 0.8).is_err());
        assert_eq!(Grid2D::from_h(1e-2, 0.5).unwrap().n, 101);
    }

    #[test]
    fn zero_data_stays_zero() {
        let grid = Grid2D::new(16, 0.5).unwrap();
        let data = ZeroData { ncomp: 1 };
        let out = run(grid, BoundaryCoefficient::Zero, &data, 1.0, 10, None).unwrap();
        assert!(out.samples.iter().all(|s| s.max_norm == 0.0));
    }

    #[test]
    fn t_end_zero_returns_initial_monitor_only() {
        let grid = Grid2D::new(16, 0.5).unwrap();
        let data = PulseData;
        let out = run(grid, BoundaryCoefficient::Zero, &data, 0.0, 1, None).unwrap();
        assert_eq!(out.samples.len(), 1);
        assert_eq!(out.steps, 0);
    }

    #[test]
    fn ghost_is_mirror_for_pure_neumann() {
        let grid = Grid2D::new(16, 0.5).unwrap();
        let data = PulseData;
        let fields = initialize(&grid, &BoundaryCoefficient::Zero, &data).unwrap();
        let f = &fields.current[0];
        for k in 0..grid.ny() {
            assert_eq!(f.at(0, k), f.at(2, k));
            assert_eq!(f.at(grid.n + 1, k), f.at(grid.n - 1, k));
        }
    }

    #[test]
    fn ghost_closure_algebra_with_g1() {
        struct G1Data;
        impl ProblemData for G1Data {
            fn f1(&self, _: usize, _: f64, _: f64) -> f64 {
                0.0
            }
            fn f2_prev(&self, _: usize, _: f64, _: f64) -> f64 {
                0.0
            }
            fn has_g1(&self) -> bool {
                true
            }
            fn g1(&self, _: usize, _: f64, _: f64) -> f64 {
                1.0
            }
        }
        let grid = Grid2D::new(16, 0.5).unwrap();
        let fields = initialize(&grid, &BoundaryCoefficient::Zero, &G1Data).unwrap();
        let f = &fields.current[0];
        for k in 1..grid.n {
            assert!((f.at(grid.n + 1, k) - 2.0 * grid.h).abs() < 1e-15);
        }
    }

    #[test]
    fn periodicity_is_bitwise() {
        let grid = Grid2D::new(24, 0.5).unwrap();
        let data = PulseData;
        let mut sim = Simulation::new(grid, BoundaryCoefficient::Real(0.5), &data).unwrap();
        for _ in 0..50 {
            sim.advance().unwrap();
        }
        let n = grid.n;
        for f in &sim.fields.current {
            for j in 0..grid.nx() {
                assert_eq!(f.at(j, 0).to_bits(), f.at(j, n - 1).to_bits());
                assert_eq!(f.at(j, n).to_bits(), f.at(j, 1).to_bits());
            }
        }
    }

    #[test]
    fn one_dimensional_sanity() {
        // x-independent data stays x-independent and matches a 1D leapfrog
        // oracle on the periodic y-line.
        let grid = Grid2D::new(32, 0.5).unwrap();
        let data = OneDData;
        let mut sim = Simulation::new(grid, BoundaryCoefficient::Zero, &data).unwrap();
        let steps = 64;
        for _ in 0..steps {
            sim.advance().unwrap();
        }

        // 1D oracle: w'' = w_yy, same leapfrog, unknowns k = 1..N−1 periodic.
        let n = grid.n;
        let lam = (grid.dt / grid.h) * (grid.dt / grid.h);
        let sample = |k: usize| (2.0 * std::f64::consts::PI * grid.y(k)).sin();
        let mut cur: Vec<f64> = (0..=n).map(sample).collect();
        let mut prev = cur.clone();
        cur[0] = cur[n - 1];
        cur[n] = cur[1];
        prev.copy_from_slice(&cur);
        for _ in 0..steps {
            let mut next = vec![0.0; n + 1];
            for k in 1..n {
                next[k] = 2.0 * cur[k] - prev[k] + lam * (cur[k + 1] - 2.0 * cur[k] + cur[k - 1]);
            }
            next[0] = next[n - 1];
            next[n] = next[1];
            prev = cur;
            cur = next;
        }
        for j in 1..=n {
            for k in 0..n {
                let v = sim.fields.current[0].at(j, k);
                assert!(
                    (v - cur[k]).abs() < 1e-12,
                    "x-dependence leaked at j={j}, k={k}: {v} vs {}",
                    cur[k]
                );
            }
        }
    }

    #[test]
    fn y_translation_equivariance() {
        struct Shifted {
            rows: usize,
        }
        impl ProblemData for Shifted {
            fn f1(&self, _: usize, x: f64, y: f64) -> f64 {
                let yy = y - self.rows as f64 / 31.0;
                let l = 0.05;
                (-((x - 0.5).powi(2) + (yy - 0.4).powi(2)) / (l * l)).exp()
                    + (2.0 * std::f64::consts::PI * yy).cos()
            }
            fn f2_prev(&self, c: usize, x: f64, y: f64) -> f64 {
                self.f1(c, x, y)
            }
        }
        // Grid with N = 32 has period N−1 = 31 rows; shifting the data by
        // one row must shift the solution by one row exactly.
        let grid = Grid2D::new(32, 0.5).unwrap();
        let base = Shifted { rows: 0 };
        let shifted = Shifted { rows: 1 };
        let mut sim0 = Simulation::new(grid, BoundaryCoefficient::Real(0.3), &base).unwrap();
        let mut sim1 = Simulation::new(grid, BoundaryCoefficient::Real(0.3), &shifted).unwrap();
        for _ in 0..40 {
            sim0.advance().unwrap();
            sim1.advance().unwrap();
        }
        let n = grid.n;
        for j in 1..=n {
            for k in 1..n {
                // Row k of the shifted run equals row (k−1 mod period) of
                // the base run shifted forward by one.
                let k_base = if k == 1 { n - 1 } else { k - 1 };
                let a = sim1.fields.current[0].at(j, k);
                let b = sim0.fields.current[0].at(j, k_base);
                assert!(
                    (a - b).abs() < 1e-11,
                    "translation mismatch at j={j}, k={k}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn divergence_is_reported_with_step_index() {
        let grid = Grid2D::new(16, 0.5).unwrap();
        let mut sim = Simulation::new(grid, BoundaryCoefficient::Zero, &HugeData).unwrap();
        let err = loop {
            match sim.advance() {
                Ok(()) => continue,
                Err(e) => break e,
            }
        };
        match err {
            SolverError::Diverged { step, .. } => assert_eq!(step, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn energy_is_conserved_for_neumann_pulse() {
        let grid = Grid2D::new(64, 0.5).unwrap();
        let data = PulseData;
        let mut sim = Simulation::new(grid, BoundaryCoefficient::Zero, &data).unwrap();
        sim.advance().unwrap();
        let e0 = discrete_energy(&sim.fields, &grid);
        assert!(e0 > 0.0);
        for _ in 0..300 {
            sim.advance().unwrap();
        }
        let e1 = discrete_energy(&sim.fields, &grid);
        assert!(
            ((e1 - e0) / e0).abs() < 1e-10,
            "energy drifted from {e0} to {e1}"
        );
        assert_eq!(discrete_energy(
            &initialize(&grid, &BoundaryCoefficient::Zero, &ZeroData { ncomp: 1 }).unwrap(),
            &grid
        ), 0.0);
    }

    #[test]
    fn energy_grows_in_the_unstable_case() {
        let grid = Grid2D::new(64, 0.5).unwrap();
        let data = PulseData;
        let mut sim = Simulation::new(grid, BoundaryCoefficient::Real(0.5), &data).unwrap();
        sim.advance().unwrap();
        let e0 = discrete_energy(&sim.fields, &grid);
        for _ in 0..2000 {
            sim.advance().unwrap();
        }
        let e1 = discrete_energy(&sim.fields, &grid);
        assert!(e1 > e0, "expected growth, got {e0} -> {e1}");
    }

    #[test]
    fn determinism_bitwise() {
        let grid = Grid2D::new(32, 0.5).unwrap();
        let data = PulseData;
        let out1 = run(grid, BoundaryCoefficient::Real(0.5), &data, 2.0, 7, None).unwrap();
        let out2 = run(grid, BoundaryCoefficient::Real(0.5), &data, 2.0, 7, None).unwrap();
        assert_eq!(out1.samples.len(), out2.samples.len());
        for (a, b) in out1.samples.iter().zip(&out2.samples) {
            assert_eq!(a.max_norm.to_bits(), b.max_norm.to_bits());
        }
    }

    #[test]
    fn imaginary_closure_is_second_order_consistent() {
        // Residual of the centered x=0 closure on exact surface-wave samples
        // drops by ~4x when h halves.
        let beta = 0.5_f64;
        let omega0 = 8.0 * std::f64::consts::PI;
        let c = (1.0 - beta * beta).sqrt();
        let u1 = move |x: f64, y: f64, t: f64| {
            (-beta * omega0 * x).exp() * (omega0 * (y - c * t)).cos()
        };
        let u2 = move |x: f64, y: f64, t: f64| {
            (-beta * omega0 * x).exp() * (omega0 * (y - c * t)).sin()
        };
        let residual = |n: usize| -> f64 {
            let grid = Grid2D::new(n, 0.5).unwrap();
            let h = grid.h;
            let mut worst = 0.0f64;
            for k in 1..n {
                let y = grid.y(k);
                // D0x u1 − beta (−D0y u2) style closure residual, component 1:
                // u1_x + beta u2_y = 0 at x = 0.
                let d0x = (u1(h, y, 0.0) - u1(-h, y, 0.0)) / (2.0 * h);
                let d0y = (u2(0.0, y + h, 0.0) - u2(0.0, y - h, 0.0)) / (2.0 * h);
                worst = worst.max((d0x + beta * d0y).abs());
            }
            worst
        };
        let r1 = residual(65);
        let r2 = residual(129);
        let ratio = r1 / r2;
        assert!((ratio - 4.0).abs() < 0.7, "ratio {ratio}");
    }
}
