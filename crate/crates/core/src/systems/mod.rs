//! State types, coefficient laws, and right-hand sides of the ε-scaled
//! compressible full and ideal MHD systems, plus the quasilinear matrix
//! assembly with its symmetrizers and the canonical energy.

mod full;
mod gas;
mod ideal;
mod matrices;

pub use full::{rhs_full, source_terms, FullState, SourceTerms};
pub use gas::{gas_coeffs, GasLaw};
pub use ideal::{rhs_ideal, IdealState};
pub use matrices::{
    assemble_matrices, canonical_energy, canonical_energy_ideal, quasilinear_defect, symmetrizers,
    Mat8, PointState,
};

use crate::error::Error;
use crate::fields::ScalarField;
use crate::real::Real;
use crate::Result;

/// Scaled transport coefficients and the Mach number ε.
#[derive(Clone, Copy, Debug)]
pub struct PhysicalParams<T> {
    pub mu: T,
    pub lambda: T,
    pub nu: T,
    pub kappa: T,
    pub gamma: T,
    pub eps: T,
}

impl<T: Real> PhysicalParams<T> {
    /// Validating constructor. Viscous runs need `μ > 0` and `2μ + 3λ > 0`;
    /// the ideal regime is all four transport coefficients exactly zero.
    pub fn new(mu: T, lambda: T, nu: T, kappa: T, gamma: T, eps: T) -> Result<Self> {
        if !(gamma > T::one()) {
            return Err(Error::usage(format!("gamma must exceed 1, got {gamma}")));
        }
        if !(eps > T::zero()) {
            return Err(Error::usage(format!("eps must be positive, got {eps}")));
        }
        let zero = T::zero();
        let all_zero = mu == zero && lambda == zero && nu == zero && kappa == zero;
        if !all_zero {
            if mu < zero || nu < zero || kappa < zero {
                return Err(Error::usage("transport coefficients must be nonnegative"));
            }
            if !(mu > zero && T::of(2.0) * mu + T::of(3.0) * lambda > zero) {
                return Err(Error::usage(
                    "viscous runs require mu > 0 and 2 mu + 3 lambda > 0",
                ));
            }
        }
        Ok(PhysicalParams {
            mu,
            lambda,
            nu,
            kappa,
            gamma,
            eps,
        })
    }

    pub fn inviscid(gamma: T, eps: T) -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero(), gamma, eps)
            .expect("inviscid params with gamma > 1, eps > 0")
    }

    pub fn with_eps(mut self, eps: T) -> Self {
        assert!(eps > T::zero(), "eps must be positive");
        self.eps = eps;
        self
    }
}

/// Compact box of admissible pointwise values, strictly inside the state
/// space of the quasilinear form.
#[derive(Clone, Copy, Debug)]
pub struct StateSpaceBox<T> {
    pub q_max: T,
    /// Bound on |φ| (full system) or |Θ| (ideal system).
    pub temp_max: T,
    pub u_max: T,
    pub h_max: T,
}

impl<T: Real> Default for StateSpaceBox<T> {
    fn default() -> Self {
        StateSpaceBox {
            q_max: T::of(2.0),
            temp_max: T::of(2.0),
            u_max: T::of(10.0),
            h_max: T::of(10.0),
        }
    }
}

impl<T: Real> StateSpaceBox<T> {
    /// Largest ε keeping `1 + εq`, `1 + εφ` bounded away from zero on the box.
    pub fn eps_limit(&self) -> T {
        T::of(0.9) / self.q_max.max(self.temp_max)
    }
}

/// One line of a box-containment report.
#[derive(Clone, Copy, Debug)]
pub struct BoxEntry<T> {
    pub name: &'static str,
    pub max_abs: T,
    pub bound: T,
    pub ok: bool,
}

/// Pointwise extrema of a state against a [`StateSpaceBox`].
#[derive(Clone, Debug)]
pub struct BoxReport<T> {
    pub entries: [BoxEntry<T>; 4],
}

impl<T: Real> BoxReport<T> {
    /// Strict interior containment (a value exactly on the boundary fails).
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }

    pub fn failures(&self) -> Vec<&BoxEntry<T>> {
        self.entries.iter().filter(|e| !e.ok).collect()
    }

    pub(crate) fn from_extrema(
        names: [&'static str; 4],
        maxima: [T; 4],
        bounds: [T; 4],
    ) -> Self {
        let mk = |i: usize| BoxEntry {
            name: names[i],
            max_abs: maxima[i],
            bound: bounds[i],
            ok: maxima[i] < bounds[i],
        };
        BoxReport {
            entries: [mk(0), mk(1), mk(2), mk(3)],
        }
    }
}

/// Shared shape of the two compressible unknowns: a scalar, two vectors, a
/// scalar, in the component order `(q, u, H, φ/Θ)`.
pub trait State8<T: Real>: Clone {
    fn scalar1(&self) -> &ScalarField<T>;
    fn vec1(&self) -> &crate::fields::VectorField3<T>;
    fn vec2(&self) -> &crate::fields::VectorField3<T>;
    fn scalar2(&self) -> &ScalarField<T>;
    fn scalar2_name() -> &'static str;

    fn build(
        scalar1: ScalarField<T>,
        vec1: crate::fields::VectorField3<T>,
        vec2: crate::fields::VectorField3<T>,
        scalar2: ScalarField<T>,
    ) -> Self;

    fn components(&self) -> [&ScalarField<T>; 8] {
        [
            self.scalar1(),
            self.vec1().comp(0),
            self.vec1().comp(1),
            self.vec1().comp(2),
            self.vec2().comp(0),
            self.vec2().comp(1),
            self.vec2().comp(2),
            self.scalar2(),
        ]
    }

    fn grid(&self) -> &std::sync::Arc<crate::fields::Grid<T>> {
        self.scalar1().grid()
    }

    /// Componentwise `self + a·other`.
    fn axpy(&self, a: T, other: &Self) -> Self {
        Self::build(
            self.scalar1().axpy(a, other.scalar1()),
            self.vec1().axpy(a, other.vec1()),
            self.vec2().axpy(a, other.vec2()),
            self.scalar2().axpy(a, other.scalar2()),
        )
    }

    fn scaled(&self, a: T) -> Self {
        Self::build(
            self.scalar1().scaled(a),
            self.vec1().scaled(a),
            self.vec2().scaled(a),
            self.scalar2().scaled(a),
        )
    }

    fn is_finite(&self) -> bool {
        self.scalar1().is_finite()
            && self.vec1().is_finite()
            && self.vec2().is_finite()
            && self.scalar2().is_finite()
    }

    /// Combined Sobolev norm over the eight components (in quadrature).
    fn sobolev_norm(&self, s: T) -> T {
        let sq = |x: T| x * x;
        (sq(self.scalar1().sobolev_norm(s))
            + sq(self.vec1().sobolev_norm(s))
            + sq(self.vec2().sobolev_norm(s))
            + sq(self.scalar2().sobolev_norm(s)))
        .sqrt()
    }

    fn box_report(&self, bounds: &StateSpaceBox<T>) -> BoxReport<T> {
        BoxReport::from_extrema(
            ["q", "u", "H", Self::scalar2_name()],
            [
                self.scalar1().max_abs(),
                self.vec1().max_norm(),
                self.vec2().max_norm(),
                self.scalar2().max_abs(),
            ],
            [bounds.q_max, bounds.u_max, bounds.h_max, bounds.temp_max],
        )
    }
}

/// Pointwise extrema of a state against the box; failures list which bound
/// broke. Works for [`FullState`] and [`IdealState`].
pub fn in_state_space<T: Real, S: State8<T>>(state: &S, bounds: &StateSpaceBox<T>) -> BoxReport<T> {
    state.box_report(bounds)
}
