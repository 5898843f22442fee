//! The transformed ideal system: unknown `(q, u, H, Θ)` with scaled
//! log-pressure `q` and entropy perturbation `Θ`.

use crate::fields::{
    advect_scalar, advect_vector, div, dot, grad, scale_vector, ScalarField, VectorField3,
};
use crate::real::Real;
use crate::Result;

use super::{gas_coeffs, GasLaw, State8};

/// Ideal-MHD unknown `(q, u, H, Θ)` of the entropy formulation.
#[derive(Clone, Debug)]
pub struct IdealState<T: Real> {
    pub q: ScalarField<T>,
    pub u: VectorField3<T>,
    pub h: VectorField3<T>,
    pub theta: ScalarField<T>,
}

impl<T: Real> IdealState<T> {
    pub fn new(
        q: ScalarField<T>,
        u: VectorField3<T>,
        h: VectorField3<T>,
        theta: ScalarField<T>,
    ) -> Self {
        assert!(
            crate::fields::Grid::same_grid(q.grid(), u.grid())
                && crate::fields::Grid::same_grid(q.grid(), h.grid())
                && crate::fields::Grid::same_grid(q.grid(), theta.grid()),
            "state components on different grids"
        );
        IdealState { q, u, h, theta }
    }

    pub fn zeros(grid: &std::sync::Arc<crate::fields::Grid<T>>) -> Self {
        IdealState {
            q: ScalarField::zeros(grid),
            u: VectorField3::zeros(grid),
            h: VectorField3::zeros(grid),
            theta: ScalarField::zeros(grid),
        }
    }

    pub fn div_h_norm(&self) -> T {
        div(&self.h).l2_norm()
    }
}

impl<T: Real> State8<T> for IdealState<T> {
    fn scalar1(&self) -> &ScalarField<T> {
        &self.q
    }
    fn vec1(&self) -> &VectorField3<T> {
        &self.u
    }
    fn vec2(&self) -> &VectorField3<T> {
        &self.h
    }
    fn scalar2(&self) -> &ScalarField<T> {
        &self.theta
    }
    fn scalar2_name() -> &'static str {
        "Theta"
    }
    fn build(q: ScalarField<T>, u: VectorField3<T>, h: VectorField3<T>, theta: ScalarField<T>) -> Self {
        IdealState::new(q, u, h, theta)
    }
}

/// Time derivative of the transformed ideal system:
///
/// `∂_t q = −u·∇q − (εa)⁻¹ div u`
/// `∂_t u = −u·∇u − (εr)⁻¹ ∇q + r⁻¹ (H·∇H − ½∇|H|²)`
/// `∂_t H = −u·∇H − (div u) H + H·∇u`
/// `∂_t Θ = −u·∇Θ`
///
/// with the coefficient fields `a, r` from [`gas_coeffs`]. Errors propagate
/// an invalid gas law at the sampled range.
pub fn rhs_ideal<T: Real>(state: &IdealState<T>, law: &GasLaw<T>, eps: T) -> Result<IdealState<T>> {
    assert!(eps > T::zero(), "rhs_ideal requires eps > 0");
    let IdealState { q, u, h, theta } = state;
    let grid = q.grid().clone();
    let (a, r) = gas_coeffs(law, theta, q, eps)?;
    let inv_eps = T::one() / eps;

    let divide = |f: &ScalarField<T>, by: &ScalarField<T>| {
        let vals = f
            .values()
            .iter()
            .zip(by.values().iter())
            .map(|(&x, &c)| x / c)
            .collect();
        ScalarField::from_values(&grid, vals).masked()
    };

    let div_u = div(u);
    let dq = advect_scalar(u, q)
        .axpy(inv_eps, &divide(&div_u, &a))
        .scaled(-T::one());

    let h_grad_h = advect_vector(h, h);
    let grad_h2 = grad(&dot(h, h));
    let lorentz_over_r = h_grad_h.axpy(-T::of(0.5), &grad_h2).map(|c| divide(c, &r));
    let grad_q_over_r = grad(q).map(|c| divide(c, &r));
    let du = advect_vector(u, u)
        .axpy(inv_eps, &grad_q_over_r)
        .scaled(-T::one())
        .axpy(T::one(), &lorentz_over_r);

    let dh = advect_vector(u, h)
        .axpy(T::one(), &scale_vector(&div_u, h))
        .axpy(-T::one(), &advect_vector(h, u))
        .scaled(-T::one());

    let dtheta = advect_scalar(u, theta).scaled(-T::one());

    Ok(IdealState::new(dq, du, dh, dtheta))
}
