//! Multi-dimensional transforms built from 1D line FFTs.

use num_complex::Complex;

use super::Grid;
use crate::real::Real;

/// Forward transform in place; normalizes so coefficients are Fourier
/// coefficients of the trigonometric interpolant (`f = Σ f̂_k e^{ik·x}`).
pub(crate) fn forward<T: Real>(grid: &Grid<T>, data: &mut [Complex<T>]) {
    for axis in 0..3 {
        if grid.shape()[axis] > 1 {
            transform_axis(grid, data, axis, false);
        }
    }
    let scale = T::one() / T::of(grid.len() as f64);
    for c in data.iter_mut() {
        *c = c.scale(scale);
    }
}

/// Inverse transform in place (plain synthesis, no normalization).
pub(crate) fn inverse<T: Real>(grid: &Grid<T>, data: &mut [Complex<T>]) {
    for axis in 0..3 {
        if grid.shape()[axis] > 1 {
            transform_axis(grid, data, axis, true);
        }
    }
}

fn transform_axis<T: Real>(grid: &Grid<T>, data: &mut [Complex<T>], axis: usize, inv: bool) {
    let shape = grid.shape();
    let m = shape[axis];
    let plan = if inv {
        grid.inverse_plan().clone()
    } else {
        grid.forward_plan().clone()
    };
    let mut line = vec![Complex::new(T::zero(), T::zero()); m];
    let mut scratch = vec![Complex::new(T::zero(), T::zero()); plan.get_inplace_scratch_len()];

    let stride = match axis {
        0 => shape[1] * shape[2],
        1 => shape[2],
        _ => 1,
    };
    // Walk every line orthogonal to `axis`.
    let (outer, inner) = match axis {
        0 => (shape[1], shape[2]),
        1 => (shape[0], shape[2]),
        _ => (shape[0], shape[1]),
    };
    for a in 0..outer {
        for b in 0..inner {
            let base = match axis {
                0 => a * shape[2] + b,
                1 => a * shape[1] * shape[2] + b,
                _ => (a * shape[1] + b) * shape[2],
            };
            if stride == 1 {
                plan.process_with_scratch(&mut data[base..base + m], &mut scratch);
            } else {
                for (j, c) in line.iter_mut().enumerate() {
                    *c = data[base + j * stride];
                }
                plan.process_with_scratch(&mut line, &mut scratch);
                for (j, c) in line.iter().enumerate() {
                    data[base + j * stride] = *c;
                }
            }
        }
    }
}
