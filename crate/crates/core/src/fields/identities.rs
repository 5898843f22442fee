//! Vector-calculus identities evaluated as numerical residuals.
//!
//! Each identity mixes quadratic and cubic products of the inputs; the cubic
//! ones are not alias-free on the native grid even for dealiased inputs, so
//! everything is evaluated on a 2x zero-padded grid where products up to
//! third order are exact for inputs inside the dealias band.

use super::ops::{advect_vector_raw, cross_raw, dot_raw, scale_vector_raw};
use super::{curl, div, grad, laplacian_vector, pad_spectrum, Grid, ScalarField, VectorField3};
use crate::real::Real;

pub const IDENTITY_NAMES: [&str; 5] = [
    "div(H x curl H) = |curl H|^2 - (curl curl H).H",
    "div((u x H) x H) = ((curl H) x H).u + (curl(u x H)).H",
    "grad|H|^2 = 2 H.grad H + 2 H x curl H",
    "curl(u x H) = u div H - H div u + H.grad u - u.grad H",
    "curl curl H = grad div H - lap H",
];

/// L² residuals of the five identities.
#[derive(Clone, Debug)]
pub struct IdentityReport<T> {
    pub residuals: [T; 5],
}

impl<T: Real> IdentityReport<T> {
    pub fn max(&self) -> T {
        self.residuals.iter().fold(T::zero(), |m, &r| m.max(r))
    }
}

fn pad_vector<T: Real>(
    v: &VectorField3<T>,
    big: &std::sync::Arc<Grid<T>>,
) -> VectorField3<T> {
    v.map(|c| ScalarField::from_spec(big, pad_spectrum(c.grid(), c.spectral(), big)))
}

/// Evaluate the residuals for two vector fields sharing a grid. Inputs
/// should be band-limited to the dealiased range; residuals are then at
/// rounding level (≤ 1e-10 with `f64`).
pub fn check_identities<T: Real>(
    u: &VectorField3<T>,
    h: &VectorField3<T>,
) -> IdentityReport<T> {
    assert!(
        Grid::same_grid(u.grid(), h.grid()),
        "identity check: fields on different grids"
    );
    let big = Grid::new(u.grid().dim_mode(), 2 * u.grid().n());
    let u = pad_vector(u, &big);
    let h = pad_vector(h, &big);

    let curl_h = curl(&h);
    let curl_curl_h = curl(&curl_h);

    // div(H x curl H) = |curl H|^2 - (curl curl H).H
    let lhs1 = div(&cross_raw(&h, &curl_h));
    let rhs1 = &dot_raw(&curl_h, &curl_h) - &dot_raw(&curl_curl_h, &h);
    let r1 = (&lhs1 - &rhs1).l2_norm();

    // div((u x H) x H) = ((curl H) x H).u + (curl(u x H)).H
    let uxh = cross_raw(&u, &h);
    let lhs2 = div(&cross_raw(&uxh, &h));
    let rhs2 = dot_raw(&cross_raw(&curl_h, &h), &u).axpy(T::one(), &dot_raw(&curl(&uxh), &h));
    let r2 = (&lhs2 - &rhs2).l2_norm();

    // grad|H|^2 = 2 H.grad H + 2 H x curl H
    let lhs3 = grad(&dot_raw(&h, &h));
    let rhs3 = advect_vector_raw(&h, &h).axpy(T::one(), &cross_raw(&h, &curl_h)).scaled(T::of(2.0));
    let r3 = (&lhs3 - &rhs3).l2_norm();

    // curl(u x H) = u div H - H div u + H.grad u - u.grad H
    let lhs4 = curl(&uxh);
    let rhs4 = &(&scale_vector_raw(&div(&h), &u) - &scale_vector_raw(&div(&u), &h))
        + &(&advect_vector_raw(&h, &u) - &advect_vector_raw(&u, &h));
    let r4 = (&lhs4 - &rhs4).l2_norm();

    // curl curl H = grad div H - lap H
    let rhs5 = &grad(&div(&h)) - &laplacian_vector(&h);
    let r5 = (&curl_curl_h - &rhs5).l2_norm();

    IdentityReport {
        residuals: [r1, r2, r3, r4, r5],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::DimMode;

    #[test]
    fn zero_fields_give_zero_residuals() {
        let g = Grid::<f64>::new(DimMode::Slab2p5D, 16);
        let z = VectorField3::zeros(&g);
        let rep = check_identities(&z, &z);
        assert!(rep.max() == 0.0);
    }

    #[test]
    fn single_mode_pair() {
        let g = Grid::<f64>::new(DimMode::Slab2p5D, 16);
        let h = VectorField3::from_fns(&g, |_, _, _| 0.0, |x, _, _| x.sin(), |_, _, _| 0.0);
        let u = VectorField3::from_fns(&g, |_, y, _| y.cos(), |_, _, _| 0.0, |_, _, _| 0.0);
        let rep = check_identities(&u, &h);
        assert!(rep.max() <= 1e-10, "residuals {:?}", rep.residuals);
    }
}
