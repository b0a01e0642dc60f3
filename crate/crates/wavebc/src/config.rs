//! Run configuration, flat `key = value` (de)serialization, and command
//! dispatch shared by the CLI binary and the integration tests.
//!
//! Precedence: command-line flags override config-file values override the
//! built-in defaults (which match the experimental setup: `δt = 0.5h`,
//! `ω₀ = 8π`, `L = 0.03`, `t₀ = 0.2`).

use crate::analysis::{
    classify_coupled, classify_scalar, reflection_roots, CoupledBC, ReflectionCase, ScalarBC,
};
use crate::experiments::{
    forcing_family_study, growth_study, rows_to_csv, series_to_csv, surface_wave_suite,
    traveling_wave_suite, ForcingVariant, TravelingWaveOnGrid, DEFAULT_OMEGA0,
};
use crate::solver::{self, BoundaryCoefficient, Grid2D, SolverError};
use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown configuration key '{0}'")]
    UnknownFlag(String),
    #[error("invalid value '{value}' for '{key}': {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("conflicting configuration: {0}")]
    Conflict(String),
}

#[derive(Debug, Error)]
pub enum DispatchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("analysis failed: {0}")]
    Analysis(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl DispatchError {
    /// Process exit code contract: 2 invalid configuration, 3 diverged run,
    /// 4 analysis failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            DispatchError::Config(_) => 2,
            DispatchError::Solver(SolverError::InvalidGrid(_)) => 2,
            DispatchError::Solver(SolverError::Diverged { .. }) => 3,
            DispatchError::Analysis(_) => 4,
            DispatchError::Io { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Solve,
    Table1,
    Table2,
    Growth,
    Forcing,
    Roots,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Solve => "solve",
            Command::Table1 => "table1",
            Command::Table2 => "table2",
            Command::Growth => "growth",
            Command::Forcing => "forcing",
            Command::Roots => "roots",
        }
    }

    pub fn from_str(s: &str) -> Result<Self, ConfigError> {
        Ok(match s {
            "analyze" => Command::Analyze,
            "solve" => Command::Solve,
            "table1" => Command::Table1,
            "table2" => Command::Table2,
            "growth" => Command::Growth,
            "forcing" => Command::Forcing,
            "roots" => Command::Roots,
            other => {
                return Err(ConfigError::InvalidValue {
                    key: "command".to_string(),
                    value: other.to_string(),
                    reason: "expected analyze|solve|table1|table2|growth|forcing|roots"
                        .to_string(),
                })
            }
        })
    }
}

/// The fully resolved configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Boundary condition selector for `analyze`:
    /// `type1|type2|type3|type4|coupled`.
    pub bc: String,
    pub a: f64,
    /// Boundary coefficient: `0`, a real number, or `i<number>`.
    pub b: String,
    pub b1: f64,
    pub b2: f64,
    pub beta: f64,
    pub beta_list: Vec<f64>,
    pub omega0: f64,
    pub variant: String,
    pub h_list: Vec<f64>,
    pub courant: f64,
    pub t_end: f64,
    /// Monitor cadence in steps; 0 selects a per-command default.
    pub cadence: usize,
    pub case: String,
    pub n_roots: usize,
    pub out_dir: String,
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        let (h_list, t_end): (Vec<f64>, f64) = match command {
            Command::Table1 | Command::Table2 => (vec![1e-2, 5e-3, 2.5e-3], 10.0),
            Command::Growth => (vec![1e-2, 5e-3], 20.0),
            Command::Forcing => (vec![2.5e-3], 4.0),
            _ => (vec![1e-2], 1.0),
        };
        Self {
            command,
            bc: "type2".to_string(),
            a: 1.0,
            b: match command {
                Command::Growth => "0.5".to_string(),
                _ => "0".to_string(),
            },
            b1: 0.5,
            b2: -0.5,
            beta: 0.5,
            beta_list: vec![0.5, 0.9, 0.99],
            omega0: DEFAULT_OMEGA0,
            variant: "g".to_string(),
            h_list,
            courant: 0.5,
            t_end,
            cadence: 0,
            case: "loss".to_string(),
            n_roots: 5,
            out_dir: "out".to_string(),
        }
    }

    /// Applies one `key = value` assignment.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn num(key: &str, value: &str) -> Result<f64, ConfigError> {
            value.trim().parse().map_err(|_| ConfigError::InvalidValue {
                key: key.to_string(),
                value: value.to_string(),
                reason: "not a number".to_string(),
            })
        }
        fn list(key: &str, value: &str) -> Result<Vec<f64>, ConfigError> {
            value
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| num(key, p))
                .collect()
        }
        let value = value.trim();
        match key {
            "command" => self.command = Command::from_str(value)?,
            "bc" => self.bc = value.to_string(),
            "a" => self.a = num(key, value)?,
            "b" => self.b = value.to_string(),
            "b1" => self.b1 = num(key, value)?,
            "b2" => self.b2 = num(key, value)?,
            "beta" => self.beta = num(key, value)?,
            "beta_list" => self.beta_list = list(key, value)?,
            "omega0" => self.omega0 = num(key, value)?,
            "variant" => self.variant = value.to_string(),
            "h" | "h_list" => self.h_list = list(key, value)?,
            "courant" => self.courant = num(key, value)?,
            "t_end" => self.t_end = num(key, value)?,
            "cadence" => {
                self.cadence = value.parse().map_err(|_| ConfigError::InvalidValue {
                    key: key.to_string(),
                    value: value.to_string(),
                    reason: "not an integer".to_string(),
                })?
            }
            "case" => self.case = value.to_string(),
            "n_roots" => {
                self.n_roots = value.parse().map_err(|_| ConfigError::InvalidValue {
                    key: key.to_string(),
                    value: value.to_string(),
                    reason: "not an integer".to_string(),
                })?
            }
            "out_dir" => self.out_dir = value.to_string(),
            other => return Err(ConfigError::UnknownFlag(other.to_string())),
        }
        Ok(())
    }

    /// Flat `key = value` document; `parse_serialized` inverts it.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        let fmt_list = |xs: &[f64]| {
            xs.iter()
                .map(|x| format!("{x:.17e}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        put("command", self.command.as_str().to_string());
        put("bc", self.bc.clone());
        put("a", format!("{:.17e}", self.a));
        put("b", self.b.clone());
        put("b1", format!("{:.17e}", self.b1));
        put("b2", format!("{:.17e}", self.b2));
        put("beta", format!("{:.17e}", self.beta));
        put("beta_list", fmt_list(&self.beta_list));
        put("omega0", format!("{:.17e}", self.omega0));
        put("variant", self.variant.clone());
        put("h_list", fmt_list(&self.h_list));
        put("courant", format!("{:.17e}", self.courant));
        put("t_end", format!("{:.17e}", self.t_end));
        put("cadence", self.cadence.to_string());
        put("case", self.case.clone());
        put("n_roots", self.n_roots.to_string());
        put("out_dir", self.out_dir.clone());
        s
    }

    pub fn parse_serialized(text: &str) -> Result<Self, ConfigError> {
        let mut command = None;
        let mut pairs = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                ConfigError::InvalidValue {
                    key: line.to_string(),
                    value: String::new(),
                    reason: "expected key = value".to_string(),
                }
            })?;
            let (k, v) = (k.trim(), v.trim());
            if k == "command" {
                command = Some(Command::from_str(v)?);
            }
            pairs.push((k.to_string(), v.to_string()));
        }
        let command = command.ok_or_else(|| ConfigError::Conflict(
            "config document must set 'command'".to_string(),
        ))?;
        let mut cfg = Self::defaults(command);
        for (k, v) in pairs {
            cfg.apply(&k, &v)?;
        }
        Ok(cfg)
    }

    pub fn boundary_coefficient(&self) -> Result<BoundaryCoefficient, ConfigError> {
        parse_b("b", &self.b)
    }

    pub fn forcing_variant(&self) -> Result<ForcingVariant, ConfigError> {
        Ok(match self.variant.as_str() {
            "g" => ForcingVariant::G,
            "gt" => ForcingVariant::Gt,
            "gtt" => ForcingVariant::Gtt,
            other => {
                return Err(ConfigError::InvalidValue {
                    key: "variant".to_string(),
                    value: other.to_string(),
                    reason: "expected g|gt|gtt".to_string(),
                })
            }
        })
    }

    pub fn reflection_case(&self) -> Result<ReflectionCase, ConfigError> {
        Ok(match self.case.as_str() {
            "loss" => ReflectionCase::Loss,
            "gain" => ReflectionCase::Gain,
            other => {
                return Err(ConfigError::InvalidValue {
                    key: "case".to_string(),
                    value: other.to_string(),
                    reason: "expected loss|gain".to_string(),
                })
            }
        })
    }

    /// Cross-field checks performed before any work is dispatched.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.courant > 0.0) || self.courant > solver::MAX_COURANT {
            return Err(ConfigError::InvalidValue {
                key: "courant".to_string(),
                value: format!("{}", self.courant),
                reason: format!(
                    "must lie in (0, {:.4}] (2D leapfrog stability bound)",
                    solver::MAX_COURANT
                ),
            });
        }
        if self.h_list.is_empty() {
            return Err(ConfigError::InvalidValue {
                key: "h_list".to_string(),
                value: String::new(),
                reason: "need at least one grid size".to_string(),
            });
        }
        match self.command {
            Command::Analyze => {
                match self.bc.as_str() {
                    "type1" | "type2" | "type3" | "type4" | "coupled" => {}
                    other => {
                        return Err(ConfigError::InvalidValue {
                            key: "bc".to_string(),
                            value: other.to_string(),
                            reason: "expected type1|type2|type3|type4|coupled".to_string(),
                        })
                    }
                }
                if self.bc != "coupled" {
                    // A scalar spec must not also carry the coupled pair.
                    let d = Self::defaults(self.command);
                    if (self.b1, self.b2) != (d.b1, d.b2) {
                        return Err(ConfigError::Conflict(
                            "b1/b2 are only meaningful with bc=coupled".to_string(),
                        ));
                    }
                }
            }
            Command::Solve | Command::Table1 => {
                self.boundary_coefficient()?;
            }
            Command::Forcing => {
                self.forcing_variant()?;
            }
            Command::Roots => {
                self.reflection_case()?;
                if self.n_roots == 0 {
                    return Err(ConfigError::InvalidValue {
                        key: "n_roots".to_string(),
                        value: "0".to_string(),
                        reason: "must be at least 1".to_string(),
                    });
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Stable hex digest of the serialized configuration, used to keep
    /// artifact names collision-free across sweeps.
    pub fn hash(&self) -> String {
        let mut hasher = DefaultHasher::new();
        self.serialize().hash(&mut hasher);
        format!("{:016x}", hasher.finish())
    }
}

/// Parses the boundary-coefficient syntax: `0` (or `0.0`) is the Neumann
/// case, `i<number>` is imaginary, anything else parses as a real number.
pub fn parse_b(key: &str, raw: &str) -> Result<BoundaryCoefficient, ConfigError> {
    let bad = |reason: &str| ConfigError::InvalidValue {
        key: key.to_string(),
        value: raw.to_string(),
        reason: reason.to_string(),
    };
    let raw = raw.trim();
    if let Some(im) = raw.strip_prefix('i') {
        let beta: f64 = im.parse().map_err(|_| bad("not a number after 'i'"))?;
        if !beta.is_finite() {
            return Err(bad("must be finite"));
        }
        return Ok(BoundaryCoefficient::Imaginary(beta));
    }
    let b: f64 = raw.parse().map_err(|_| bad("expected 0, a real, or i<real>"))?;
    if !b.is_finite() {
        return Err(bad("must be finite"));
    }
    Ok(if b == 0.0 {
        BoundaryCoefficient::Zero
    } else {
        BoundaryCoefficient::Real(b)
    })
}

/// Artifacts and summary of one dispatched run.
#[derive(Debug)]
pub struct DispatchReport {
    pub artifacts: Vec<PathBuf>,
    pub summary: String,
}

fn write_artifact(dir: &Path, name: &str, content: &str) -> Result<PathBuf, DispatchError> {
    std::fs::create_dir_all(dir).map_err(|source| DispatchError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(name);
    std::fs::write(&path, content).map_err(|source| DispatchError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// Runs the configured command, writing `<command>-<hash>.<ext>` plus
/// `manifest.txt` into the output directory.
pub fn dispatch(cfg: &RunConfig) -> Result<DispatchReport, DispatchError> {
    cfg.validate()?;
    let dir = PathBuf::from(&cfg.out_dir);
    let hash = cfg.hash();
    let mut artifacts = Vec::new();
    let summary;

    match cfg.command {
        Command::Analyze => {
            let report = if cfg.bc == "coupled" {
                classify_coupled(&CoupledBC {
                    b1: cfg.b1,
                    b2: cfg.b2,
                })
            } else {
                let b_real = match parse_b("b", &cfg.b)? {
                    BoundaryCoefficient::Zero => 0.0,
                    BoundaryCoefficient::Real(b) => b,
                    BoundaryCoefficient::Imaginary(_) => {
                        return Err(ConfigError::InvalidValue {
                            key: "b".to_string(),
                            value: cfg.b.clone(),
                            reason: "scalar analysis takes a real coefficient".to_string(),
                        }
                        .into())
                    }
                };
                let bc = match cfg.bc.as_str() {
                    "type1" => ScalarBC::Type1 { a: cfg.a, b: b_real },
                    "type2" => ScalarBC::Type2 { b: b_real },
                    "type3" => ScalarBC::Type3,
                    _ => ScalarBC::Type4 { b: b_real },
                };
                classify_scalar(&bc).map_err(|e| DispatchError::Analysis(e.to_string()))?
            };
            summary = format!("classification = {}", report.classification);
            artifacts.push(write_artifact(
                &dir,
                &format!("analyze-{hash}.txt"),
                &report.to_string(),
            )?);
        }
        Command::Solve => {
            let bc = cfg.boundary_coefficient()?;
            let grid = Grid2D::from_h(cfg.h_list[0], cfg.courant)?;
            let data = TravelingWaveOnGrid::new(bc, &grid);
            let cadence = if cfg.cadence == 0 {
                (0.05 / grid.dt).round().max(1.0) as usize
            } else {
                cfg.cadence
            };
            let out = solver::run(
                grid,
                bc,
                &data,
                cfg.t_end,
                cadence,
                Some(&|c, x, y, t| data.exact(c, x, y, t)),
            )?;
            let mut csv = String::from("step,time,maxnorm,maxerror\n");
            for s in &out.samples {
                let _ = writeln!(
                    csv,
                    "{},{:.17e},{:.17e},{:.17e}",
                    s.step,
                    s.time,
                    s.max_norm,
                    s.max_error.unwrap_or(f64::NAN)
                );
            }
            summary = format!(
                "steps = {}, final max error = {:.3e}",
                out.steps,
                out.samples.last().and_then(|s| s.max_error).unwrap_or(0.0)
            );
            artifacts.push(write_artifact(&dir, &format!("solve-{hash}.csv"), &csv)?);
        }
        Command::Table1 => {
            let bc = cfg.boundary_coefficient()?;
            let rows = traveling_wave_suite(bc, &cfg.h_list, cfg.courant)?;
            summary = format!("{} convergence rows", rows.len());
            artifacts.push(write_artifact(
                &dir,
                &format!("table1-{hash}.csv"),
                &rows_to_csv(&rows),
            )?);
        }
        Command::Table2 => {
            let rows = surface_wave_suite(cfg.beta, cfg.omega0, &cfg.h_list, cfg.courant)?;
            summary = format!("{} convergence rows", rows.len());
            artifacts.push(write_artifact(
                &dir,
                &format!("table2-{hash}.csv"),
                &rows_to_csv(&rows),
            )?);
        }
        Command::Growth => {
            let b = match cfg.boundary_coefficient()? {
                BoundaryCoefficient::Zero => 0.0,
                BoundaryCoefficient::Real(b) => b,
                BoundaryCoefficient::Imaginary(_) => {
                    return Err(ConfigError::InvalidValue {
                        key: "b".to_string(),
                        value: cfg.b.clone(),
                        reason: "the growth study takes a real coefficient".to_string(),
                    }
                    .into())
                }
            };
            let series = growth_study(b, &cfg.h_list, cfg.t_end, cfg.courant)?;
            summary = format!(
                "peaks: {}",
                series
                    .iter()
                    .map(|s| format!("h={:.3e} -> {:.6e}", s.h, s.peak()))
                    .collect::<Vec<_>>()
                    .join("; ")
            );
            artifacts.push(write_artifact(
                &dir,
                &format!("growth-{hash}.csv"),
                &series_to_csv(&series),
            )?);
        }
        Command::Forcing => {
            let variant = cfg.forcing_variant()?;
            let series = forcing_family_study(
                &cfg.beta_list,
                variant,
                cfg.h_list[0],
                cfg.omega0,
                cfg.t_end,
                cfg.courant,
            )?;
            summary = format!(
                "peaks: {}",
                series
                    .iter()
                    .map(|s| format!("{} -> {:.6e}", s.label, s.peak()))
                    .collect::<Vec<_>>()
                    .join("; ")
            );
            artifacts.push(write_artifact(
                &dir,
                &format!("forcing-{hash}.csv"),
                &series_to_csv(&series),
            )?);
        }
        Command::Roots => {
            let case = cfg.reflection_case()?;
            let roots = reflection_roots(case, cfg.n_roots)
                .map_err(|e| DispatchError::Analysis(e.to_string()))?;
            let mut csv = String::from("n,re,im,residual\n");
            for r in &roots {
                let _ = writeln!(
                    csv,
                    "{},{:.17e},{:.17e},{:.17e}",
                    r.n, r.lambda.re, r.lambda.im, r.residual
                );
            }
            summary = format!("{} residual-verified roots", roots.len());
            artifacts.push(write_artifact(&dir, &format!("roots-{hash}.csv"), &csv)?);
        }
    }

    // The manifest echoes every resolved parameter plus the artifact list.
    let mut manifest = cfg.serialize();
    for a in &artifacts {
        let _ = writeln!(manifest, "artifact = {}", a.display());
    }
    artifacts.push(write_artifact(&dir, "manifest.txt", &manifest)?);
    Ok(DispatchReport { artifacts, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_all_commands() {
        for cmd in [
            Command::Analyze,
            Command::Solve,
            Command::Table1,
            Command::Table2,
            Command::Growth,
            Command::Forcing,
            Command::Roots,
        ] {
            let mut cfg = RunConfig::defaults(cmd);
            cfg.b = "i0.5".to_string();
            cfg.h_list = vec![1e-2, 5e-3];
            cfg.t_end = 2.5;
            let back = RunConfig::parse_serialized(&cfg.serialize()).unwrap();
            assert_eq!(back, cfg);
        }
    }

    #[test]
    fn precedence_file_then_flags() {
        let mut cfg = RunConfig::defaults(Command::Table1);
        // "File" layer.
        cfg.apply("b", "0.5").unwrap();
        cfg.apply("t_end", "5").unwrap();
        // "Flag" layer wins.
        cfg.apply("b", "i0.5").unwrap();
        assert_eq!(cfg.b, "i0.5");
        assert_eq!(cfg.t_end, 5.0);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let mut cfg = RunConfig::defaults(Command::Solve);
        assert!(matches!(
            cfg.apply("bogus", "1"),
            Err(ConfigError::UnknownFlag(_))
        ));
    }

    #[test]
    fn courant_guard() {
        let mut cfg = RunConfig::defaults(Command::Solve);
        cfg.apply("courant", "1.2").unwrap();
        assert!(matches!(
            cfg.validate(),
            Err(ConfigError::InvalidValue { ref key, .. }) if key == "courant"
        ));
    }

    #[test]
    fn b_syntax() {
        assert_eq!(parse_b("b", "0").unwrap(), BoundaryCoefficient::Zero);
        assert_eq!(parse_b("b", "0.5").unwrap(), BoundaryCoefficient::Real(0.5));
        assert_eq!(
            parse_b("b", "i0.5").unwrap(),
            BoundaryCoefficient::Imaginary(0.5)
        );
        assert!(parse_b("b", "x").is_err());
    }

    #[test]
    fn conflicting_bc_spec_rejected() {
        let mut cfg = RunConfig::defaults(Command::Analyze);
        cfg.apply("bc", "type2").unwrap();
        cfg.apply("b1", "0.7").unwrap();
        assert!(matches!(cfg.validate(), Err(ConfigError::Conflict(_))));
    }

    #[test]
    fn hashes_differ_across_configs() {
        let a = RunConfig::defaults(Command::Table1);
        let mut b = a.clone();
        b.apply("b", "0.5").unwrap();
        assert_ne!(a.hash(), b.hash());
    }
}
