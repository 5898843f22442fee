//! Time stepping for the limit systems: classical four-stage Runge–Kutta on
//! the Leray-projected nonlinearity with the diffusion handled exactly by
//! per-mode integrating factors.

use num_complex::Complex;

use crate::error::Error;
use crate::fields::{advect_vector, laplacian_vector, leray_project, ScalarField, VectorField3};
use crate::real::Real;
use crate::Result;

use super::{recover_pressure, LimitMode, LimitState};

/// Projected nonlinear tendency `(N_vel, N_mag)` without diffusion.
fn nonlinear_tendency<T: Real>(
    vel: &VectorField3<T>,
    mag: &VectorField3<T>,
    mode: &LimitMode<T>,
) -> (VectorField3<T>, VectorField3<T>) {
    let c = T::one() / mode.density();
    let n_vel = leray_project(
        &advect_vector(mag, mag)
            .scaled(c)
            .axpy(-T::one(), &advect_vector(vel, vel)),
    );
    let n_mag = advect_vector(mag, vel).axpy(-T::one(), &advect_vector(vel, mag));
    (n_vel, n_mag)
}

/// Full analytic tendency `(vel_t, mag_t)` including diffusion; this is what
/// the pressure and residual layers differentiate against.
pub fn full_tendency<T: Real>(state: &LimitState<T>) -> (VectorField3<T>, VectorField3<T>) {
    let (n_vel, n_mag) = nonlinear_tendency(&state.vel, &state.mag, &state.mode);
    match state.mode {
        LimitMode::Viscous { mu, nu } => (
            n_vel.axpy(mu, &laplacian_vector(&state.vel)),
            n_mag.axpy(nu, &laplacian_vector(&state.mag)),
        ),
        LimitMode::Ideal { .. } => (n_vel, n_mag),
    }
}

fn integrating_factor<T: Real>(f: &ScalarField<T>, coeff: T, delta: T) -> ScalarField<T> {
    if coeff == T::zero() {
        return f.clone();
    }
    f.map_spec(|idx, c| {
        let k2 = T::of(f.grid().k2(idx) as f64);
        let e = (-coeff * k2 * delta).exp();
        Complex::new(c.re * e, c.im * e)
    })
}

fn apply_factor<T: Real>(v: &VectorField3<T>, coeff: T, delta: T) -> VectorField3<T> {
    v.map(|c| integrating_factor(c, coeff, delta))
}

/// Advective CFL bound `h / (max|vel| + max|mag|/√ρ)` used as an advisory.
pub fn advective_dt_bound<T: Real>(state: &LimitState<T>) -> T {
    let h = state.grid().spacing();
    let alfven = state.mag.max_norm() / state.mode.density().sqrt();
    let speed = state.vel.max_norm() + alfven;
    if speed > T::zero() {
        h / speed
    } else {
        T::infinity()
    }
}

/// One integrating-factor RK4 step; errors (without stepping) when `dt`
/// exceeds the advective CFL bound. Use [`step_limit_forced`] to override.
pub fn step_limit<T: Real>(state: &LimitState<T>, dt: T) -> Result<LimitState<T>> {
    let bound = advective_dt_bound(state);
    if dt > bound {
        return Err(Error::CflExceeded {
            dt: dt.to64(),
            bound: bound.to64(),
        });
    }
    step_limit_forced(state, dt)
}

/// One integrating-factor RK4 step, unconditionally.
///
/// Diffusion is integrated exactly per mode; the divergence-free invariants
/// are restored by projection at every stage and the pressure is refreshed
/// at the step end.
pub fn step_limit_forced<T: Real>(state: &LimitState<T>, dt: T) -> Result<LimitState<T>> {
    let (mu, nu) = match state.mode {
        LimitMode::Viscous { mu, nu } => (mu, nu),
        LimitMode::Ideal { .. } => (T::zero(), T::zero()),
    };
    let half = T::of(0.5) * dt;
    let sixth = dt / T::of(6.0);
    let mode = &state.mode;

    let project_pair = |v: VectorField3<T>, b: VectorField3<T>| {
        (leray_project(&v), leray_project(&b))
    };

    let (v0, b0) = (&state.vel, &state.mag);
    let (g1v, g1b) = nonlinear_tendency(v0, b0, mode);

    // a = E(dt/2)(u_n + dt/2 g1)
    let av = apply_factor(&v0.axpy(half, &g1v), mu, half);
    let ab = apply_factor(&b0.axpy(half, &g1b), nu, half);
    let (av, ab) = project_pair(av, ab);
    let (nav, nab) = nonlinear_tendency(&av, &ab, mode);

    // b = E(dt/2)u_n + dt/2 N(a)
    let bv = apply_factor(v0, mu, half).axpy(half, &nav);
    let bb = apply_factor(b0, nu, half).axpy(half, &nab);
    let (bv, bb) = project_pair(bv, bb);
    let (nbv, nbb) = nonlinear_tendency(&bv, &bb, mode);

    // c = E(dt)u_n + dt E(dt/2) N(b)
    let cv = apply_factor(v0, mu, dt).axpy(dt, &apply_factor(&nbv, mu, half));
    let cb = apply_factor(b0, nu, dt).axpy(dt, &apply_factor(&nbb, nu, half));
    let (cv, cb) = project_pair(cv, cb);
    let (ncv, ncb) = nonlinear_tendency(&cv, &cb, mode);

    // u_{n+1} = E(dt)u_n + dt/6 [E(dt)g1 + 2E(dt/2)(N(a)+N(b)) + N(c)]
    let sum_v = apply_factor(&g1v, mu, dt)
        .axpy(T::of(2.0), &apply_factor(&nav.axpy(T::one(), &nbv), mu, half))
        .axpy(T::one(), &ncv);
    let sum_b = apply_factor(&g1b, nu, dt)
        .axpy(T::of(2.0), &apply_factor(&nab.axpy(T::one(), &nbb), nu, half))
        .axpy(T::one(), &ncb);
    let vel = leray_project(&apply_factor(v0, mu, dt).axpy(sixth, &sum_v));
    let mag = leray_project(&apply_factor(b0, nu, dt).axpy(sixth, &sum_b));

    let pressure = recover_pressure(&vel, &mag, mode)?;
    Ok(LimitState {
        vel,
        mag,
        pressure,
        mode: *mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Grid;
    use crate::incompressible::{orszag_tang_like, taylor_green};

    #[test]
    fn zero_state_is_fixed_point() {
        let g = Grid::<f64>::slab(16);
        let z = LimitState::prepared(
            VectorField3::zeros(&g),
            VectorField3::zeros(&g),
            LimitMode::Viscous { mu: 0.1, nu: 0.1 },
        )
        .unwrap();
        let stepped = step_limit(&z, 0.01).unwrap();
        assert!(stepped.vel.l2_norm() == 0.0 && stepped.mag.l2_norm() == 0.0);
    }

    #[test]
    fn taylor_green_decay_one_step() {
        let g = Grid::<f64>::slab(32);
        let (vel, mag) = taylor_green(&g);
        let mu = 0.1;
        let state = LimitState::prepared(vel, mag, LimitMode::Viscous { mu, nu: 0.1 }).unwrap();
        let dt = 0.05;
        let next = step_limit(&state, dt).unwrap();
        // Nonlinearity projects to zero for Taylor-Green: exact decay e^{-2 mu dt}.
        let want = state.vel.scaled((-2.0 * mu * dt).exp());
        assert!((&next.vel - &want).l2_norm() < 1e-13);
    }

    #[test]
    fn cfl_advisory_rejects_large_steps() {
        let g = Grid::<f64>::slab(16);
        let (vel, mag) = orszag_tang_like(&g);
        let state =
            LimitState::prepared(vel, mag, LimitMode::Viscous { mu: 0.05, nu: 0.05 }).unwrap();
        let bound = advective_dt_bound(&state);
        assert!(matches!(
            step_limit(&state, bound * 2.0),
            Err(Error::CflExceeded { .. })
        ));
        // Forced stepping still works.
        assert!(step_limit_forced(&state, bound * 2.0).is_ok());
    }

    #[test]
    fn divergence_free_preserved() {
        let g = Grid::<f64>::slab(32);
        let (vel, mag) = orszag_tang_like(&g);
        let mut state =
            LimitState::prepared(vel, mag, LimitMode::Viscous { mu: 0.02, nu: 0.02 }).unwrap();
        for _ in 0..5 {
            state = step_limit(&state, 0.02).unwrap();
        }
        let (dv, dm) = state.div_norms();
        assert!(dv < 1e-11 && dm < 1e-11);
    }
}
