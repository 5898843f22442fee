//! Pressure recovery and its material time derivative.
//!
//! The pressure is a diagnostic fixed by the mean-zero gauge: taking the
//! divergence of the momentum equation on the torus gives
//! `Δ(π + ½|B|²) = div(B·∇B − c v·∇v)`, where `c = 1` for the viscous
//! system and `c = r0` for the ideal one (its advection carries the
//! constant limit density).

use crate::fields::{
    advect_scalar, advect_vector, div, dot, poisson_solve_mean_zero, product, ScalarField,
    VectorField3,
};
use crate::real::Real;
use crate::Result;

use super::{full_tendency, LimitMode, LimitState};

/// Recover the mean-zero pressure of a divergence-free `(vel, mag)` pair.
pub fn recover_pressure<T: Real>(
    vel: &VectorField3<T>,
    mag: &VectorField3<T>,
    mode: &LimitMode<T>,
) -> Result<ScalarField<T>> {
    let c = mode.density();
    let adv_v = advect_vector(vel, vel);
    let adv_b = advect_vector(mag, mag);
    let rhs = div(&adv_b.axpy(-c, &adv_v));
    let chi = poisson_solve_mean_zero(&rhs)?;
    // χ = π + ½|mag|²; subtract and re-zero the mean.
    let half_b2 = dot(mag, mag).scaled(T::of(0.5));
    let pi = &chi - &half_b2;
    let mean = pi.mean();
    Ok(pi.axpy(-mean, &ScalarField::constant(vel.grid(), T::one())))
}

/// Analytic `π_t`: solve the time-differentiated pressure Poisson equation
/// using the limit-system tendencies (never time differencing).
pub fn pressure_time_derivative<T: Real>(state: &LimitState<T>) -> Result<ScalarField<T>> {
    let (vel_t, mag_t) = full_tendency(state);
    let c = state.mode.density();
    let v = &state.vel;
    let b = &state.mag;
    // Δ(π_t + (|B|²)_t/2) = div(B_t·∇B + B·∇B_t − c(v_t·∇v + v·∇v_t)).
    let rhs_vec = advect_vector(&mag_t, b)
        .axpy(T::one(), &advect_vector(b, &mag_t))
        .axpy(-c, &advect_vector(&vel_t, v))
        .axpy(-c, &advect_vector(v, &vel_t));
    let chi = poisson_solve_mean_zero(&div(&rhs_vec))?;
    // (|B|²)_t/2 = B·B_t.
    let b_dot_bt = dot(b, &mag_t);
    let pi_t = &chi - &b_dot_bt;
    let mean = pi_t.mean();
    Ok(pi_t.axpy(-mean, &ScalarField::constant(v.grid(), T::one())))
}

/// Material derivative `π_t + vel·∇π` of the recovered pressure.
pub fn material_dt_pressure<T: Real>(state: &LimitState<T>) -> Result<ScalarField<T>> {
    let pi_t = pressure_time_derivative(state)?;
    Ok(&pi_t + &advect_scalar(&state.vel, &state.pressure))
}

/// `(|B|²)_t/2` helper shared with the energy diagnostics.
#[allow(dead_code)]
pub(crate) fn half_mag_squared_rate<T: Real>(
    mag: &VectorField3<T>,
    mag_t: &VectorField3<T>,
) -> ScalarField<T> {
    let mut acc = product(mag.comp(0), mag_t.comp(0));
    for i in 1..3 {
        acc = acc.axpy(T::one(), &product(mag.comp(i), mag_t.comp(i)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Grid;
    use crate::incompressible::taylor_green;

    #[test]
    fn zero_state_zero_pressure() {
        let g = Grid::<f64>::slab(16);
        let z = VectorField3::zeros(&g);
        let mode = LimitMode::Viscous { mu: 0.1, nu: 0.1 };
        let pi = recover_pressure(&z, &z, &mode).unwrap();
        assert!(pi.l2_norm() == 0.0);
    }

    #[test]
    fn taylor_green_pressure() {
        // π = −¼(cos 2x1 + cos 2x2) at t = 0.
        let g = Grid::<f64>::slab(32);
        let (vel, _) = taylor_green(&g);
        let mode = LimitMode::Viscous { mu: 0.1, nu: 0.1 };
        let pi = recover_pressure(&vel, &VectorField3::zeros(&g), &mode).unwrap();
        let want = ScalarField::from_fn(&g, |x, y, _| {
            -0.25 * ((2.0 * x).cos() + (2.0 * y).cos())
        });
        assert!((&pi - &want).l2_norm() < 1e-12);
    }

    #[test]
    fn steady_state_material_derivative_is_advective() {
        // Taylor-Green with μ = 0 is steady: π_t = 0 so mdt = w·∇π.
        let g = Grid::<f64>::slab(32);
        let (vel, mag) = taylor_green(&g);
        let state =
            LimitState::prepared(vel, mag, LimitMode::Viscous { mu: 0.0, nu: 0.0 }).unwrap();
        let pi_t = pressure_time_derivative(&state).unwrap();
        assert!(pi_t.l2_norm() < 1e-11, "pi_t = {:e}", pi_t.l2_norm());
        let mdt = material_dt_pressure(&state).unwrap();
        let advective = advect_scalar(&state.vel, &state.pressure);
        assert!((&mdt - &advective).l2_norm() < 1e-11);
    }
}
