//! C ABI over the wavebc library: branch-correct `κ = √(s² + ω²)`,
//! boundary-condition classification, reflection-cascade roots, and an
//! opaque handle running the manufactured-solution leapfrog solver.
//!
//! Every function returns a `WavebcStatus`; outputs go through pointers.
//! The generated header lives at `include/wavebc.h`.

use std::os::raw::c_int;
use wavebc::analysis::{
    classify_coupled, classify_scalar, reflection_roots, CoupledBC, ReflectionCase, ScalarBC,
    StabilityClass,
};
use wavebc::branch::{kappa, DualPoint};
use wavebc::experiments::TravelingWaveOnGrid;
use wavebc::solver::{run, BoundaryCoefficient, Grid2D, SolverError};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavebcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Diverged = 3,
    AnalysisFailure = 4,
}

/// Stability classes, matching the library's five-way classification.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavebcClass {
    IllPosed = 0,
    StronglyBoundaryStable = 1,
    BoundaryStable = 2,
    Stable = 3,
    Unstable = 4,
}

impl From<StabilityClass> for WavebcClass {
    fn from(c: StabilityClass) -> Self {
        match c {
            StabilityClass::IllPosed => WavebcClass::IllPosed,
            StabilityClass::StronglyBoundaryStable => WavebcClass::StronglyBoundaryStable,
            StabilityClass::BoundaryStable => WavebcClass::BoundaryStable,
            StabilityClass::Stable => WavebcClass::Stable,
            StabilityClass::Unstable => WavebcClass::Unstable,
        }
    }
}

/// Evaluates `κ = √(s² + ω²)` on the branch `−π < arg(s² + ω²) ≤ π`,
/// `arg κ = ½ arg(s² + ω²)`. Fails on `s = 0, ω = 0`.
///
/// # Safety
/// `out_re` and `out_im` must be valid writable pointers.
#[no_mangle]
pub unsafe extern "C" fn wavebc_kappa(
    s_re: f64,
    s_im: f64,
    omega: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> WavebcStatus {
    if out_re.is_null() || out_im.is_null() {
        return WavebcStatus::NullPointer;
    }
    let p = match DualPoint::new(num_complex::Complex64::new(s_re, s_im), omega) {
        Ok(p) => p,
        Err(_) => return WavebcStatus::InvalidArgument,
    };
    let k = kappa(&p);
    *out_re = k.value.re;
    *out_im = k.value.im;
    WavebcStatus::Ok
}

fn scalar_bc_from(bc_type: c_int, a: f64, b: f64) -> Option<ScalarBC> {
    Some(match bc_type {
        1 => ScalarBC::Type1 { a, b },
        2 => ScalarBC::Type2 { b },
        3 => ScalarBC::Type3,
        4 => ScalarBC::Type4 { b },
        _ => return None,
    })
}

/// Classifies a scalar boundary condition.
/// `bc_type` selects the family (1–4); `a` is only used by type 1 and `b`
/// is ignored by type 3.
///
/// # Safety
/// `out_class` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wavebc_classify_scalar(
    bc_type: c_int,
    a: f64,
    b: f64,
    out_class: *mut WavebcClass,
) -> WavebcStatus {
    if out_class.is_null() {
        return WavebcStatus::NullPointer;
    }
    let Some(bc) = scalar_bc_from(bc_type, a, b) else {
        return WavebcStatus::InvalidArgument;
    };
    match classify_scalar(&bc) {
        Ok(report) => {
            *out_class = report.classification.into();
            WavebcStatus::Ok
        }
        Err(_) => WavebcStatus::AnalysisFailure,
    }
}

/// Classifies the coupled two-component boundary condition with
/// coefficients `b1`, `b2`; only the product `b1·b2` determines the class.
///
/// # Safety
/// `out_class` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wavebc_classify_coupled(
    b1: f64,
    b2: f64,
    out_class: *mut WavebcClass,
) -> WavebcStatus {
    if out_class.is_null() {
        return WavebcStatus::NullPointer;
    }
    if !b1.is_finite() || !b2.is_finite() {
        return WavebcStatus::InvalidArgument;
    }
    let report = classify_coupled(&CoupledBC { b1, b2 });
    *out_class = report.classification.into();
    WavebcStatus::Ok
}

/// Computes the first `n` roots of the reflection-cascade characteristic
/// equation. `which` is 0 for the loss case `e^{2λ} + λ² = 0`, 1 for the
/// gain case `e^{2λ} + λ⁻² = 0`. Each output array must hold `n` doubles;
/// `residual` may be null.
///
/// # Safety
/// `re` and `im` must point to at least `n` writable doubles;
/// `residual` must be null or do the same.
#[no_mangle]
pub unsafe extern "C" fn wavebc_reflection_roots(
    which: c_int,
    n: usize,
    re: *mut f64,
    im: *mut f64,
    residual: *mut f64,
) -> WavebcStatus {
    if re.is_null() || im.is_null() {
        return WavebcStatus::NullPointer;
    }
    let case = match which {
        0 => ReflectionCase::Loss,
        1 => ReflectionCase::Gain,
        _ => return WavebcStatus::InvalidArgument,
    };
    if n == 0 {
        return WavebcStatus::InvalidArgument;
    }
    match reflection_roots(case, n) {
        Ok(roots) => {
            for (i, r) in roots.iter().enumerate() {
                *re.add(i) = r.lambda.re;
                *im.add(i) = r.lambda.im;
                if !residual.is_null() {
                    *residual.add(i) = r.residual;
                }
            }
            WavebcStatus::Ok
        }
        Err(_) => WavebcStatus::AnalysisFailure,
    }
}

/// Opaque solver handle: a traveling-wave manufactured problem on a strip
/// grid with the selected boundary coefficient.
pub struct WavebcSolver {
    grid: Grid2D,
    bc: BoundaryCoefficient,
    data: TravelingWaveOnGrid,
}

/// Creates a solver for grid size `h` and Courant number `courant`.
/// `b_kind` selects the x = 0 boundary coefficient: 0 for `b = 0`,
/// 1 for real `b = b_value`, 2 for imaginary `b = i·b_value`.
///
/// # Safety
/// `out` must be a valid writable pointer; the returned handle must be
/// released with `wavebc_solver_free`.
#[no_mangle]
pub unsafe extern "C" fn wavebc_solver_new(
    h: f64,
    courant: f64,
    b_kind: c_int,
    b_value: f64,
    out: *mut *mut WavebcSolver,
) -> WavebcStatus {
    if out.is_null() {
        return WavebcStatus::NullPointer;
    }
    *out = std::ptr::null_mut();
    let bc = match b_kind {
        0 => BoundaryCoefficient::Zero,
        1 => BoundaryCoefficient::Real(b_value),
        2 => BoundaryCoefficient::Imaginary(b_value),
        _ => return WavebcStatus::InvalidArgument,
    };
    if bc.validate().is_err() {
        return WavebcStatus::InvalidArgument;
    }
    let grid = match Grid2D::from_h(h, courant) {
        Ok(g) => g,
        Err(_) => return WavebcStatus::InvalidArgument,
    };
    let data = TravelingWaveOnGrid::new(bc, &grid);
    *out = Box::into_raw(Box::new(WavebcSolver { grid, bc, data }));
    WavebcStatus::Ok
}

/// Runs the solver to time `t_end` and reports the final max-norm error
/// against the exact traveling wave. `out_max_error` may be null.
///
/// # Safety
/// `solver` must come from `wavebc_solver_new` and not have been freed;
/// `out_max_error` must be null or a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wavebc_solver_run(
    solver: *mut WavebcSolver,
    t_end: f64,
    out_max_error: *mut f64,
) -> WavebcStatus {
    if solver.is_null() {
        return WavebcStatus::NullPointer;
    }
    let s = &*solver;
    let cadence = usize::MAX; // only the final sample is needed
    match run(
        s.grid,
        s.bc,
        &s.data,
        t_end,
        cadence,
        Some(&|c, x, y, t| s.data.exact(c, x, y, t)),
    ) {
        Ok(outp) => {
            if !out_max_error.is_null() {
                *out_max_error = outp
                    .samples
                    .last()
                    .and_then(|m| m.max_error)
                    .unwrap_or(f64::NAN);
            }
            WavebcStatus::Ok
        }
        Err(SolverError::Diverged { .. }) => WavebcStatus::Diverged,
        Err(_) => WavebcStatus::InvalidArgument,
    }
}

/// Releases a solver handle. A null pointer is ignored.
///
/// # Safety
/// `solver` must be null or a live handle from `wavebc_solver_new`.
#[no_mangle]
pub unsafe extern "C" fn wavebc_solver_free(solver: *mut WavebcSolver) {
    if !solver.is_null() {
        drop(Box::from_raw(solver));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_matches_direct_evaluation() {
        let mut re = 0.0;
        let mut im = 0.0;
        let st = unsafe { wavebc_kappa(1.0, 2.0, 3.0, &mut re, &mut im) };
        assert_eq!(st, WavebcStatus::Ok);
        let z = num_complex::Complex64::new(1.0, 2.0);
        let expect = kappa(&DualPoint::new(z, 3.0).unwrap()).value;
        assert_eq!((re, im), (expect.re, expect.im));
        // The origin is rejected.
        let st = unsafe { wavebc_kappa(0.0, 0.0, 0.0, &mut re, &mut im) };
        assert_eq!(st, WavebcStatus::InvalidArgument);
    }

    #[test]
    fn scalar_classification_codes() {
        let mut class = WavebcClass::IllPosed;
        unsafe {
            assert_eq!(
                wavebc_classify_scalar(1, 1.0, 0.5, &mut class),
                WavebcStatus::Ok
            );
            assert_eq!(class, WavebcClass::StronglyBoundaryStable);
            assert_eq!(
                wavebc_classify_scalar(4, 0.0, 1.0, &mut class),
                WavebcStatus::Ok
            );
            assert_eq!(class, WavebcClass::Unstable);
            assert_eq!(
                wavebc_classify_scalar(3, 0.0, 0.0, &mut class),
                WavebcStatus::Ok
            );
            assert_eq!(class, WavebcClass::Stable);
            // Illegal coefficient |b| >= 1 for type 2.
            assert_eq!(
                wavebc_classify_scalar(2, 0.0, 1.5, &mut class),
                WavebcStatus::AnalysisFailure
            );
            assert_eq!(
                wavebc_classify_scalar(9, 0.0, 0.0, &mut class),
                WavebcStatus::InvalidArgument
            );
            assert_eq!(
                wavebc_classify_scalar(2, 0.0, 0.5, std::ptr::null_mut()),
                WavebcStatus::NullPointer
            );
        }
    }

    #[test]
    fn coupled_classification_codes() {
        let mut class = WavebcClass::IllPosed;
        unsafe {
            assert_eq!(
                wavebc_classify_coupled(0.5, -0.5, &mut class),
                WavebcStatus::Ok
            );
            assert_eq!(class, WavebcClass::Stable);
            assert_eq!(
                wavebc_classify_coupled(1.0, 1.0, &mut class),
                WavebcStatus::Ok
            );
            assert_eq!(class, WavebcClass::Unstable);
            assert_eq!(
                wavebc_classify_coupled(2.0, -1.0, &mut class),
                WavebcStatus::Ok
            );
            assert_eq!(class, WavebcClass::IllPosed);
        }
    }

    #[test]
    fn reflection_roots_through_ffi() {
        let n = 10;
        let mut re = vec![0.0; n];
        let mut im = vec![0.0; n];
        let mut res = vec![0.0; n];
        let st = unsafe {
            wavebc_reflection_roots(0, n, re.as_mut_ptr(), im.as_mut_ptr(), res.as_mut_ptr())
        };
        assert_eq!(st, WavebcStatus::Ok);
        for i in 0..n {
            assert!(res[i] < 1e-10);
            assert!(im[i] > 0.0);
        }
        assert_eq!(
            unsafe { wavebc_reflection_roots(5, n, re.as_mut_ptr(), im.as_mut_ptr(), res.as_mut_ptr()) },
            WavebcStatus::InvalidArgument
        );
    }

    #[test]
    fn solver_handle_lifecycle() {
        let mut handle: *mut WavebcSolver = std::ptr::null_mut();
        let st = unsafe { wavebc_solver_new(0.05, 0.5, 0, 0.0, &mut handle) };
        assert_eq!(st, WavebcStatus::Ok);
        assert!(!handle.is_null());
        let mut err = f64::NAN;
        let st = unsafe { wavebc_solver_run(handle, 0.5, &mut err) };
        assert_eq!(st, WavebcStatus::Ok);
        assert!(err.is_finite() && err < 0.1, "error {err}");
        unsafe { wavebc_solver_free(handle) };

        // Invalid Courant number is reported, not panicked on.
        let st = unsafe { wavebc_solver_new(0.05, 1.2, 0, 0.0, &mut handle) };
        assert_eq!(st, WavebcStatus::InvalidArgument);
        assert!(handle.is_null());
    }
}
