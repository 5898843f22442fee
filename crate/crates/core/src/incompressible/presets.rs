//! Named initial-data recipes, divergence-free by construction.

use std::sync::Arc;

use crate::fields::{Grid, VectorField3};
use crate::real::Real;

pub type InitialData<T> = (VectorField3<T>, VectorField3<T>);

/// Orszag–Tang-like vortex: `w0 = (−sin x2, sin x1, 0)`,
/// `B0 = β(−sin x2, sin 2x1, 0)` with `β = 1/2`.
pub fn orszag_tang_like<T: Real>(grid: &Arc<Grid<T>>) -> InitialData<T> {
    let vel = VectorField3::from_fns(
        grid,
        |_, y, _| -y.sin(),
        |x, _, _| x.sin(),
        |_, _, _| T::zero(),
    );
    let beta = T::of(0.5);
    let mag = VectorField3::from_fns(
        grid,
        move |_, y, _| -beta * y.sin(),
        move |x, _, _| beta * (T::of(2.0) * x).sin(),
        |_, _, _| T::zero(),
    );
    (vel, mag)
}

/// Taylor–Green vortex `w0 = (−cos x1 sin x2, sin x1 cos x2, 0)` with no
/// magnetic field; under pure viscosity it decays as `e^{−2μt}` exactly.
pub fn taylor_green<T: Real>(grid: &Arc<Grid<T>>) -> InitialData<T> {
    let vel = VectorField3::from_fns(
        grid,
        |x, y, _| -x.cos() * y.sin(),
        |x, y, _| x.sin() * y.cos(),
        |_, _, _| T::zero(),
    );
    (vel, VectorField3::zeros(grid))
}
