//! Incompressible limit systems: viscous MHD and its ideal counterpart,
//! with pressure recovered as a mean-zero diagnostic.

mod presets;
mod pressure;
mod solve;
mod stepper;

pub use presets::{orszag_tang_like, taylor_green, InitialData};
pub use pressure::{material_dt_pressure, pressure_time_derivative, recover_pressure};
pub use solve::{solve_limit, LimitSnapshot, LimitTrajectory};
pub use stepper::{advective_dt_bound, full_tendency, step_limit, step_limit_forced};

use crate::fields::{div, leray_project, ScalarField, VectorField3};
use crate::real::Real;
use crate::Result;

/// Which limit system a state belongs to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LimitMode<T> {
    /// Viscous incompressible MHD with shear viscosity `μ` and magnetic
    /// diffusivity `ν`.
    Viscous { mu: T, nu: T },
    /// Ideal incompressible MHD with constant limit density `r0 = r(S̲, 0)`.
    Ideal { r0: T },
}

impl<T: Real> LimitMode<T> {
    pub fn describe(&self) -> String {
        match self {
            LimitMode::Viscous { mu, nu } => {
                format!("viscous(mu = {:.6e}, nu = {:.6e})", mu.to64(), nu.to64())
            }
            LimitMode::Ideal { r0 } => format!("ideal(r0 = {:.6e})", r0.to64()),
        }
    }

    /// Density weight multiplying the velocity part of the energy.
    pub fn density(&self) -> T {
        match self {
            LimitMode::Viscous { .. } => T::one(),
            LimitMode::Ideal { r0 } => *r0,
        }
    }
}

/// Incompressible state: divergence-free velocity and magnetic field plus
/// the recovered mean-zero pressure.
#[derive(Clone, Debug)]
pub struct LimitState<T: Real> {
    pub vel: VectorField3<T>,
    pub mag: VectorField3<T>,
    pub pressure: ScalarField<T>,
    pub mode: LimitMode<T>,
}

impl<T: Real> LimitState<T> {
    /// Project the fields divergence-free and recover a consistent pressure.
    pub fn prepared(vel: VectorField3<T>, mag: VectorField3<T>, mode: LimitMode<T>) -> Result<Self> {
        if let LimitMode::Ideal { r0 } = mode {
            assert!(r0 > T::zero(), "ideal limit density must be positive");
        }
        let vel = leray_project(&vel.masked());
        let mag = leray_project(&mag.masked());
        let pressure = recover_pressure(&vel, &mag, &mode)?;
        Ok(LimitState {
            vel,
            mag,
            pressure,
            mode,
        })
    }

    pub fn grid(&self) -> &std::sync::Arc<crate::fields::Grid<T>> {
        self.vel.grid()
    }

    pub fn div_norms(&self) -> (T, T) {
        (div(&self.vel).l2_norm(), div(&self.mag).l2_norm())
    }

    /// `½(c‖vel‖² + ‖mag‖²)` with the mode's density weight.
    pub fn energy(&self) -> T {
        let c = self.mode.density();
        let v = self.vel.l2_norm();
        let m = self.mag.l2_norm();
        T::of(0.5) * (c * v * v + m * m)
    }

    pub fn is_finite(&self) -> bool {
        self.vel.is_finite() && self.mag.is_finite() && self.pressure.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Grid;

    #[test]
    fn prepared_state_satisfies_invariants() {
        let g = Grid::<f64>::slab(32);
        let (vel, mag) = orszag_tang_like(&g);
        let state = LimitState::prepared(vel, mag, LimitMode::Viscous { mu: 0.05, nu: 0.05 })
            .unwrap();
        let (dv, dm) = state.div_norms();
        assert!(dv < 1e-11 && dm < 1e-11);
        assert!(state.pressure.mean().abs() < 1e-14);
    }
}
