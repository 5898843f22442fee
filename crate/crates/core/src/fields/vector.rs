//! Three-component vector field; components share one grid.

use std::sync::Arc;

use super::{Grid, ScalarField};
use crate::real::Real;

#[derive(Clone, Debug)]
pub struct VectorField3<T: Real> {
    comps: [ScalarField<T>; 3],
}

impl<T: Real> VectorField3<T> {
    pub fn new(c1: ScalarField<T>, c2: ScalarField<T>, c3: ScalarField<T>) -> Self {
        assert!(
            Grid::same_grid(c1.grid(), c2.grid()) && Grid::same_grid(c1.grid(), c3.grid()),
            "vector components on different grids"
        );
        VectorField3 {
            comps: [c1, c2, c3],
        }
    }

    pub fn zeros(grid: &Arc<Grid<T>>) -> Self {
        VectorField3 {
            comps: [
                ScalarField::zeros(grid),
                ScalarField::zeros(grid),
                ScalarField::zeros(grid),
            ],
        }
    }

    pub fn from_fns(
        grid: &Arc<Grid<T>>,
        f1: impl Fn(T, T, T) -> T,
        f2: impl Fn(T, T, T) -> T,
        f3: impl Fn(T, T, T) -> T,
    ) -> Self {
        VectorField3 {
            comps: [
                ScalarField::from_fn(grid, f1),
                ScalarField::from_fn(grid, f2),
                ScalarField::from_fn(grid, f3),
            ],
        }
    }

    pub fn grid(&self) -> &Arc<Grid<T>> {
        self.comps[0].grid()
    }

    pub fn comp(&self, i: usize) -> &ScalarField<T> {
        &self.comps[i]
    }

    pub fn comps(&self) -> &[ScalarField<T>; 3] {
        &self.comps
    }

    pub fn map(&self, f: impl Fn(&ScalarField<T>) -> ScalarField<T>) -> Self {
        VectorField3 {
            comps: [f(&self.comps[0]), f(&self.comps[1]), f(&self.comps[2])],
        }
    }

    pub fn masked(&self) -> Self {
        self.map(|c| c.masked())
    }

    pub fn scaled(&self, a: T) -> Self {
        self.map(|c| c.scaled(a))
    }

    pub fn axpy(&self, a: T, other: &Self) -> Self {
        VectorField3 {
            comps: [
                self.comps[0].axpy(a, &other.comps[0]),
                self.comps[1].axpy(a, &other.comps[1]),
                self.comps[2].axpy(a, &other.comps[2]),
            ],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(|c| c.is_finite())
    }

    /// Pointwise Euclidean magnitude maximum.
    pub fn max_norm(&self) -> T {
        let a = self.comps[0].values();
        let b = self.comps[1].values();
        let c = self.comps[2].values();
        let mut m = T::zero();
        for i in 0..a.len() {
            let s = a[i] * a[i] + b[i] * b[i] + c[i] * c[i];
            m = m.max(s);
        }
        m.sqrt()
    }

    /// Component norms summed in quadrature.
    pub fn sobolev_norm(&self, s: T) -> T {
        self.comps
            .iter()
            .map(|c| {
                let n = c.sobolev_norm(s);
                n * n
            })
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn l2_norm(&self) -> T {
        self.sobolev_norm(T::zero())
    }

    pub fn l2_inner(&self, other: &Self) -> T {
        self.comps
            .iter()
            .zip(other.comps.iter())
            .map(|(a, b)| a.l2_inner(b))
            .fold(T::zero(), |a, b| a + b)
    }
}

impl<T: Real> std::ops::Add for &VectorField3<T> {
    type Output = VectorField3<T>;
    fn add(self, rhs: Self) -> VectorField3<T> {
        self.axpy(T::one(), rhs)
    }
}

impl<T: Real> std::ops::Sub for &VectorField3<T> {
    type Output = VectorField3<T>;
    fn sub(self, rhs: Self) -> VectorField3<T> {
        self.axpy(-T::one(), rhs)
    }
}
