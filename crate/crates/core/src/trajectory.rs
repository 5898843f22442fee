//! Shared trajectory bookkeeping and the on-disk trajectory directory
//! format: one field snapshot file per output time plus a plain-text
//! manifest recording times, scheme, dt, grid and mode.

use std::path::Path;

use crate::error::Error;
use crate::fields::{DimMode, Grid, ScalarField};
use crate::real::Real;
use crate::Result;

/// Outcome of a time integration.
#[derive(Clone, Debug, PartialEq)]
pub enum RunStatus<T> {
    Completed,
    /// Numerical breakdown: the run stopped early; `last_good` is the
    /// latest time with a valid state (the measured analogue of the
    /// breakdown time the theory rules out for small ε).
    Truncated { last_good: T, reason: String },
}

impl<T: Real> RunStatus<T> {
    pub fn completed(&self) -> bool {
        matches!(self, RunStatus::Completed)
    }
}

/// Integration metadata attached to every trajectory.
#[derive(Clone, Debug)]
pub struct RunMeta<T> {
    pub scheme: String,
    pub dt: T,
    pub n: usize,
    pub dim_mode: DimMode,
    /// Free-form description of the system/mode (coefficients, ε, gas law).
    pub mode: String,
    pub warnings: Vec<String>,
}

/// Per-step energy bookkeeping of the limit solver, used by the discrete
/// energy-law checks.
#[derive(Clone, Copy, Debug)]
pub struct EnergySample<T> {
    pub time: T,
    /// `½(c‖vel‖² + ‖mag‖²)` with `c = 1` (viscous) or `r0` (ideal).
    pub energy: T,
    /// `μ‖∇vel‖² + ν‖∇mag‖²` (zero in ideal mode).
    pub dissipation: T,
}

/// Per-snapshot diagnostics of a compressible run.
#[derive(Clone, Copy, Debug)]
pub struct DiagnosticsRow<T> {
    pub time: T,
    /// `∫ q dx`.
    pub mass: T,
    pub div_h: T,
    pub max_q: T,
    pub max_u: T,
    pub max_h: T,
    pub max_phi: T,
    pub h0: T,
    pub h2: T,
    pub h4: T,
}

impl<T: Real> DiagnosticsRow<T> {
    pub const CSV_HEADER: &'static str = "time,mass,divH,maxq,maxu,maxH,maxphi,h0,h2,h4";

    pub fn csv_row(&self) -> String {
        format!(
            "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
            self.time.to64(),
            self.mass.to64(),
            self.div_h.to64(),
            self.max_q.to64(),
            self.max_u.to64(),
            self.max_h.to64(),
            self.max_phi.to64(),
            self.h0.to64(),
            self.h2.to64(),
            self.h4.to64()
        )
    }
}

/// Validate a requested output-time list against `[0, t_final]`.
pub fn validate_out_times<T: Real>(out_times: &[T], t_final: T) -> Result<()> {
    if out_times.is_empty() {
        return Err(Error::usage("out_times must not be empty"));
    }
    if out_times[0] != T::zero() {
        return Err(Error::usage("out_times must start at 0"));
    }
    if *out_times.last().unwrap() != t_final {
        return Err(Error::usage("out_times must end at the final time"));
    }
    if out_times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::usage("out_times must be strictly increasing"));
    }
    Ok(())
}

/// Evenly spaced output times over `[0, t_final]` with `count ≥ 2` entries,
/// endpoints exact.
pub fn linspace_times<T: Real>(t_final: T, count: usize) -> Vec<T> {
    assert!(count >= 2, "need at least the two endpoint snapshots");
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let f = T::of(i as f64) / T::of((count - 1) as f64);
        out.push(f * t_final);
    }
    out[0] = T::zero();
    let last = out.len() - 1;
    out[last] = t_final;
    out
}

/// Write a trajectory directory: `manifest.txt` plus `snap_XXXX.mlfd`.
pub fn write_trajectory_dir<T: Real>(
    dir: &Path,
    meta: &RunMeta<T>,
    status: &RunStatus<T>,
    times: &[T],
    component_names: &[&str],
    snapshot_components: impl Fn(usize) -> Vec<ScalarField<T>>,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut manifest = String::new();
    manifest.push_str("format = lowmach-trajectory v1\n");
    manifest.push_str(&format!("scheme = {}\n", meta.scheme));
    manifest.push_str(&format!("dt = {:.12e}\n", meta.dt.to64()));
    manifest.push_str(&format!("n = {}\n", meta.n));
    manifest.push_str(&format!(
        "dim_mode = {}\n",
        match meta.dim_mode {
            DimMode::Slab2p5D => "slab",
            DimMode::Full3D => "3d",
        }
    ));
    manifest.push_str(&format!("mode = {}\n", meta.mode));
    manifest.push_str(&format!("components = {}\n", component_names.join(",")));
    manifest.push_str(&format!(
        "status = {}\n",
        match status {
            RunStatus::Completed => "completed".to_string(),
            RunStatus::Truncated { last_good, reason } => {
                format!("truncated at t = {:.6e}: {}", last_good.to64(), reason)
            }
        }
    ));
    for w in &meta.warnings {
        manifest.push_str(&format!("warning = {w}\n"));
    }
    manifest.push_str(&format!(
        "times = {}\n",
        times
            .iter()
            .map(|t| format!("{:.12e}", t.to64()))
            .collect::<Vec<_>>()
            .join(",")
    ));
    std::fs::write(dir.join("manifest.txt"), manifest)?;

    for (i, _) in times.iter().enumerate() {
        let comps = snapshot_components(i);
        let refs: Vec<&ScalarField<T>> = comps.iter().collect();
        crate::fields::write_snapshot(&dir.join(format!("snap_{i:04}.mlfd")), &refs)?;
    }
    Ok(())
}

/// Read back the snapshot files of a trajectory directory.
pub fn read_trajectory_snapshots<T: Real>(
    dir: &Path,
    grid: &std::sync::Arc<Grid<T>>,
) -> Result<Vec<Vec<ScalarField<T>>>> {
    let mut out = Vec::new();
    for i in 0.. {
        let path = dir.join(format!("snap_{i:04}.mlfd"));
        if !path.exists() {
            break;
        }
        out.push(crate::fields::read_snapshot(&path, grid)?);
    }
    if out.is_empty() {
        return Err(Error::Format(format!(
            "no snapshots found in {}",
            dir.display()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_endpoints() {
        let t = linspace_times::<f64>(0.5, 6);
        assert_eq!(t.len(), 6);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[5], 0.5);
        assert!(validate_out_times(&t, 0.5).is_ok());
    }

    #[test]
    fn out_time_validation() {
        assert!(validate_out_times(&[0.0, 0.5], 0.5).is_ok());
        assert!(validate_out_times(&[0.1, 0.5], 0.5).is_err());
        assert!(validate_out_times(&[0.0, 0.4], 0.5).is_err());
        assert!(validate_out_times(&[0.0, 0.3, 0.2, 0.5], 0.5).is_err());
    }
}
