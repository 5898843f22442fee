//! Spectral differential operators, dealiased products, projections.
//!
//! Linear operators act exactly on the band-limited interpolant and never
//! dealias; quadratic terms are evaluated pointwise in physical space and
//! truncated by the 2/3 mask afterwards.

use num_complex::Complex;

use super::{Grid, ScalarField, VectorField3};
use crate::error::Error;
use crate::real::Real;
use crate::Result;

/// Gradient of a scalar.
pub fn grad<T: Real>(f: &ScalarField<T>) -> VectorField3<T> {
    let comp = |axis: usize| {
        f.map_spec(|idx, c| {
            let kd = f.grid().kvec_deriv(idx)[axis];
            Complex::new(-kd * c.im, kd * c.re)
        })
    };
    VectorField3::new(comp(0), comp(1), comp(2))
}

/// Divergence of a vector.
pub fn div<T: Real>(v: &VectorField3<T>) -> ScalarField<T> {
    let grid = v.grid().clone();
    let mut spec = vec![Complex::new(T::zero(), T::zero()); grid.len()];
    for axis in 0..3 {
        for (idx, out) in spec.iter_mut().enumerate() {
            let kd = grid.kvec_deriv(idx)[axis];
            let c = v.comp(axis).spectral()[idx];
            *out += Complex::new(-kd * c.im, kd * c.re);
        }
    }
    ScalarField::from_spec(&grid, spec)
}

/// Curl of a vector.
pub fn curl<T: Real>(v: &VectorField3<T>) -> VectorField3<T> {
    let d = |a: usize, f: &ScalarField<T>| partial(f, a);
    VectorField3::new(
        &d(1, v.comp(2)) - &d(2, v.comp(1)),
        &d(2, v.comp(0)) - &d(0, v.comp(2)),
        &d(0, v.comp(1)) - &d(1, v.comp(0)),
    )
}

/// Partial derivative along one axis.
pub fn partial<T: Real>(f: &ScalarField<T>, axis: usize) -> ScalarField<T> {
    assert!(axis < 3, "axis out of range");
    f.map_spec(|idx, c| {
        let kd = f.grid().kvec_deriv(idx)[axis];
        Complex::new(-kd * c.im, kd * c.re)
    })
}

pub fn partial_vector<T: Real>(v: &VectorField3<T>, axis: usize) -> VectorField3<T> {
    v.map(|c| partial(c, axis))
}

/// Scalar Laplacian (uses the true `|k|²` multiplier).
pub fn laplacian_scalar<T: Real>(f: &ScalarField<T>) -> ScalarField<T> {
    f.map_spec(|idx, c| c.scale(-T::of(f.grid().k2(idx) as f64)))
}

pub fn laplacian_vector<T: Real>(v: &VectorField3<T>) -> VectorField3<T> {
    v.map(laplacian_scalar)
}

/// Leray projection `v − ∇Δ⁻¹ div v`; the `k = 0` mode passes through.
///
/// Idempotent and L²-self-adjoint; the output is divergence-free at
/// spectral accuracy.
pub fn leray_project<T: Real>(v: &VectorField3<T>) -> VectorField3<T> {
    let grid = v.grid().clone();
    let mut out = [
        Vec::with_capacity(grid.len()),
        Vec::with_capacity(grid.len()),
        Vec::with_capacity(grid.len()),
    ];
    for idx in 0..grid.len() {
        let kv = grid.kvec(idx);
        let k2 = grid.k2(idx);
        let c = [
            v.comp(0).spectral()[idx],
            v.comp(1).spectral()[idx],
            v.comp(2).spectral()[idx],
        ];
        if k2 == 0 {
            for axis in 0..3 {
                out[axis].push(c[axis]);
            }
            continue;
        }
        let k = [
            T::of(kv[0] as f64),
            T::of(kv[1] as f64),
            T::of(kv[2] as f64),
        ];
        let kdotc = c[0].scale(k[0]) + c[1].scale(k[1]) + c[2].scale(k[2]);
        let inv_k2 = T::one() / T::of(k2 as f64);
        for axis in 0..3 {
            out[axis].push(c[axis] - kdotc.scale(k[axis] * inv_k2));
        }
    }
    let [o1, o2, o3] = out;
    VectorField3::new(
        ScalarField::from_spec(&grid, o1),
        ScalarField::from_spec(&grid, o2),
        ScalarField::from_spec(&grid, o3),
    )
}

/// Unique mean-zero solution of `Δf = rhs` on the torus.
///
/// Rejects right-hand sides whose mean exceeds `1e-10` in magnitude.
pub fn poisson_solve_mean_zero<T: Real>(rhs: &ScalarField<T>) -> Result<ScalarField<T>> {
    let mean = rhs.mean().to64();
    const MEAN_TOL: f64 = 1e-10;
    if mean.abs() > MEAN_TOL {
        return Err(Error::IncompatibleRhs {
            mean,
            limit: MEAN_TOL,
        });
    }
    Ok(rhs.map_spec(|idx, c| {
        let k2 = rhs.grid().k2(idx);
        if k2 == 0 {
            Complex::new(T::zero(), T::zero())
        } else {
            c.scale(-T::one() / T::of(k2 as f64))
        }
    }))
}

fn assert_same_grid<T: Real>(a: &Grid<T>, b: &Grid<T>) {
    assert!(
        a.dim_mode() == b.dim_mode() && a.n() == b.n(),
        "fields live on different grids"
    );
}

fn physical_product_spec<T: Real>(
    grid: &std::sync::Arc<Grid<T>>,
    terms: &[(&ScalarField<T>, &ScalarField<T>)],
) -> Vec<T> {
    let mut out = vec![T::zero(); grid.len()];
    for (a, b) in terms {
        let av = a.values();
        let bv = b.values();
        for (o, (&x, &y)) in out.iter_mut().zip(av.iter().zip(bv.iter())) {
            *o += x * y;
        }
    }
    out
}

/// Dealiased pointwise product of two scalars.
pub fn product<T: Real>(a: &ScalarField<T>, b: &ScalarField<T>) -> ScalarField<T> {
    assert_same_grid(a.grid(), b.grid());
    let vals = physical_product_spec(a.grid(), &[(a, b)]);
    ScalarField::from_values(a.grid(), vals).masked()
}

/// Raw pointwise product: no dealiasing. Exact only when the true product
/// is representable on the grid (used by the padded identity checks).
pub(crate) fn product_raw<T: Real>(a: &ScalarField<T>, b: &ScalarField<T>) -> ScalarField<T> {
    assert_same_grid(a.grid(), b.grid());
    let vals = physical_product_spec(a.grid(), &[(a, b)]);
    ScalarField::from_values(a.grid(), vals)
}

/// Dealiased dot product of two vectors.
pub fn dot<T: Real>(a: &VectorField3<T>, b: &VectorField3<T>) -> ScalarField<T> {
    assert_same_grid(a.grid(), b.grid());
    let vals = physical_product_spec(
        a.grid(),
        &[
            (a.comp(0), b.comp(0)),
            (a.comp(1), b.comp(1)),
            (a.comp(2), b.comp(2)),
        ],
    );
    ScalarField::from_values(a.grid(), vals).masked()
}

pub(crate) fn dot_raw<T: Real>(a: &VectorField3<T>, b: &VectorField3<T>) -> ScalarField<T> {
    let vals = physical_product_spec(
        a.grid(),
        &[
            (a.comp(0), b.comp(0)),
            (a.comp(1), b.comp(1)),
            (a.comp(2), b.comp(2)),
        ],
    );
    ScalarField::from_values(a.grid(), vals)
}

/// Dealiased scalar-times-vector product.
pub fn scale_vector<T: Real>(s: &ScalarField<T>, v: &VectorField3<T>) -> VectorField3<T> {
    v.map(|c| product(s, c))
}

pub(crate) fn scale_vector_raw<T: Real>(s: &ScalarField<T>, v: &VectorField3<T>) -> VectorField3<T> {
    v.map(|c| product_raw(s, c))
}

/// Pointwise cross product, dealiased.
pub fn cross<T: Real>(a: &VectorField3<T>, b: &VectorField3<T>) -> VectorField3<T> {
    assert_same_grid(a.grid(), b.grid());
    VectorField3::new(
        &product(a.comp(1), b.comp(2)) - &product(a.comp(2), b.comp(1)),
        &product(a.comp(2), b.comp(0)) - &product(a.comp(0), b.comp(2)),
        &product(a.comp(0), b.comp(1)) - &product(a.comp(1), b.comp(0)),
    )
}

pub(crate) fn cross_raw<T: Real>(a: &VectorField3<T>, b: &VectorField3<T>) -> VectorField3<T> {
    VectorField3::new(
        &product_raw(a.comp(1), b.comp(2)) - &product_raw(a.comp(2), b.comp(1)),
        &product_raw(a.comp(2), b.comp(0)) - &product_raw(a.comp(0), b.comp(2)),
        &product_raw(a.comp(0), b.comp(1)) - &product_raw(a.comp(1), b.comp(0)),
    )
}

/// Advective contraction `u·∇f`, dealiased.
pub fn advect_scalar<T: Real>(u: &VectorField3<T>, f: &ScalarField<T>) -> ScalarField<T> {
    assert_same_grid(u.grid(), f.grid());
    let g = grad(f);
    let vals = physical_product_spec(
        u.grid(),
        &[
            (u.comp(0), g.comp(0)),
            (u.comp(1), g.comp(1)),
            (u.comp(2), g.comp(2)),
        ],
    );
    ScalarField::from_values(u.grid(), vals).masked()
}

pub(crate) fn advect_scalar_raw<T: Real>(
    u: &VectorField3<T>,
    f: &ScalarField<T>,
) -> ScalarField<T> {
    let g = grad(f);
    let vals = physical_product_spec(
        u.grid(),
        &[
            (u.comp(0), g.comp(0)),
            (u.comp(1), g.comp(1)),
            (u.comp(2), g.comp(2)),
        ],
    );
    ScalarField::from_values(u.grid(), vals)
}

/// Componentwise advection `u·∇v`, dealiased.
pub fn advect_vector<T: Real>(u: &VectorField3<T>, v: &VectorField3<T>) -> VectorField3<T> {
    v.map(|c| advect_scalar(u, c))
}

pub(crate) fn advect_vector_raw<T: Real>(
    u: &VectorField3<T>,
    v: &VectorField3<T>,
) -> VectorField3<T> {
    v.map(|c| advect_scalar_raw(u, c))
}

/// A scalar or vector field, for the checked operator entry points.
#[derive(Clone, Debug)]
pub enum Field<T: Real> {
    Scalar(ScalarField<T>),
    Vector(VectorField3<T>),
}

impl<T: Real> Field<T> {
    pub fn grid(&self) -> &std::sync::Arc<Grid<T>> {
        match self {
            Field::Scalar(f) => f.grid(),
            Field::Vector(v) => v.grid(),
        }
    }

    pub fn sobolev_norm(&self, s: T) -> T {
        match self {
            Field::Scalar(f) => f.sobolev_norm(s),
            Field::Vector(v) => v.sobolev_norm(s),
        }
    }
}

/// Differential operator selector for [`diff_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffKind {
    Grad,
    Div,
    Curl,
    Laplacian,
    PartialJ(usize),
}

/// Checked operator dispatch; errors on arity mismatch between the operator
/// kind and the input.
pub fn diff_op<T: Real>(kind: DiffKind, input: &Field<T>) -> Result<Field<T>> {
    match (kind, input) {
        (DiffKind::Grad, Field::Scalar(f)) => Ok(Field::Vector(grad(f))),
        (DiffKind::Div, Field::Vector(v)) => Ok(Field::Scalar(div(v))),
        (DiffKind::Curl, Field::Vector(v)) => Ok(Field::Vector(curl(v))),
        (DiffKind::Laplacian, Field::Scalar(f)) => Ok(Field::Scalar(laplacian_scalar(f))),
        (DiffKind::Laplacian, Field::Vector(v)) => Ok(Field::Vector(laplacian_vector(v))),
        (DiffKind::PartialJ(axis), _) if axis >= 3 => {
            Err(Error::usage(format!("axis {axis} out of range")))
        }
        (DiffKind::PartialJ(axis), Field::Scalar(f)) => Ok(Field::Scalar(partial(f, axis))),
        (DiffKind::PartialJ(axis), Field::Vector(v)) => Ok(Field::Vector(partial_vector(v, axis))),
        (kind, _) => Err(Error::usage(format!(
            "operator {kind:?} incompatible with input arity"
        ))),
    }
}

/// Contraction selector for [`dealias_product`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contraction {
    /// Pointwise product (scalar·scalar or scalar·vector).
    Pointwise,
    /// Dot product of two vectors.
    Dot,
    /// Advective contraction `a·∇b` with `a` a vector.
    Advective,
}

/// Checked dealiased product; errors on grid mismatch or an arity the
/// contraction does not support.
pub fn dealias_product<T: Real>(
    a: &Field<T>,
    b: &Field<T>,
    contraction: Contraction,
) -> Result<Field<T>> {
    let (ga, gb) = (a.grid(), b.grid());
    if !(ga.dim_mode() == gb.dim_mode() && ga.n() == gb.n()) {
        return Err(Error::usage("dealias_product: grid mismatch"));
    }
    match (contraction, a, b) {
        (Contraction::Pointwise, Field::Scalar(x), Field::Scalar(y)) => {
            Ok(Field::Scalar(product(x, y)))
        }
        (Contraction::Pointwise, Field::Scalar(x), Field::Vector(y)) => {
            Ok(Field::Vector(scale_vector(x, y)))
        }
        (Contraction::Dot, Field::Vector(x), Field::Vector(y)) => Ok(Field::Scalar(dot(x, y))),
        (Contraction::Advective, Field::Vector(x), Field::Scalar(y)) => {
            Ok(Field::Scalar(advect_scalar(x, y)))
        }
        (Contraction::Advective, Field::Vector(x), Field::Vector(y)) => {
            Ok(Field::Vector(advect_vector(x, y)))
        }
        _ => Err(Error::usage(
            "dealias_product: contraction incompatible with input arity",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::DimMode;

    fn slab16() -> std::sync::Arc<Grid<f64>> {
        Grid::new(DimMode::Slab2p5D, 16)
    }

    #[test]
    fn grad_of_single_mode() {
        let g = slab16();
        let f = ScalarField::from_fn(&g, |x, _, _| x.sin());
        let gf = grad(&f);
        let want = ScalarField::from_fn(&g, |x, _, _| x.cos());
        assert!((&gf.comp(0).clone() - &want).l2_norm() < 1e-12);
        assert!(gf.comp(1).l2_norm() < 1e-13);
        assert!(gf.comp(2).l2_norm() < 1e-13);
    }

    #[test]
    fn curl_of_single_mode() {
        let g = slab16();
        let v = VectorField3::from_fns(&g, |_, y, _| y.sin(), |_, _, _| 0.0, |_, _, _| 0.0);
        let c = curl(&v);
        let want = ScalarField::from_fn(&g, |_, y, _| -y.cos());
        assert!(c.comp(0).l2_norm() < 1e-13);
        assert!(c.comp(1).l2_norm() < 1e-13);
        assert!((&c.comp(2).clone() - &want).l2_norm() < 1e-12);
    }

    #[test]
    fn laplacian_eigenfunction() {
        let g = slab16();
        let f = ScalarField::from_fn(&g, |x, y, _| x.sin() * y.cos());
        let lf = laplacian_scalar(&f);
        let want = f.scaled(-2.0);
        assert!((&lf - &want).l2_norm() < 1e-12);
    }

    #[test]
    fn div_curl_vanishes() {
        let g = slab16();
        let v = VectorField3::from_fns(
            &g,
            |x, y, _| (2.0 * x).sin() * y.cos(),
            |x, y, _| (x - 0.3).cos() * (3.0 * y).sin(),
            |x, _, _| x.sin(),
        )
        .masked();
        assert!(div(&curl(&v)).l2_norm() < 1e-12);
    }

    #[test]
    fn curl_grad_vanishes() {
        let g = slab16();
        let f = ScalarField::from_fn(&g, |x, y, _| (2.0 * x).cos() + x.sin() * y.sin());
        let c = curl(&grad(&f));
        assert!(c.sobolev_norm(0.0) < 1e-12);
    }

    #[test]
    fn product_identity_element() {
        let g = slab16();
        let one = ScalarField::constant(&g, 1.0);
        let b = ScalarField::from_fn(&g, |x, y, _| (5.0 * x).sin() + (7.0 * y).cos());
        let p = product(&one, &b);
        assert!((&p - &b.masked()).l2_norm() < 1e-13);
    }

    #[test]
    fn product_of_resolved_modes_is_exact() {
        let g = slab16();
        let a = ScalarField::from_fn(&g, |x, _, _| x.sin());
        let p = product(&a, &a);
        let want = ScalarField::from_fn(&g, |x, _, _| (1.0 - (2.0 * x).cos()) / 2.0);
        assert!((&p - &want).l2_norm() < 1e-13);
    }

    #[test]
    fn constant_advection() {
        let g = slab16();
        let w = VectorField3::from_fns(&g, |_, _, _| 1.0, |_, _, _| 0.0, |_, _, _| 0.0);
        let f = ScalarField::from_fn(&g, |x, _, _| x.sin());
        let a = advect_scalar(&w, &f);
        let want = ScalarField::from_fn(&g, |x, _, _| x.cos());
        assert!((&a - &want).l2_norm() < 1e-12);
    }

    #[test]
    fn leray_fixes_divergence_free_and_kills_gradients() {
        let g = slab16();
        let divfree = VectorField3::from_fns(&g, |_, y, _| y.sin(), |x, _, _| x.cos(), |_, _, _| 0.5);
        let p = leray_project(&divfree);
        assert!((&p.comp(0).clone() - divfree.comp(0)).l2_norm() < 1e-13);
        assert!((&p.comp(2).clone() - divfree.comp(2)).l2_norm() < 1e-13, "k=0 passthrough");

        let gradient = grad(&ScalarField::from_fn(&g, |x, y, _| x.sin() * y.sin()));
        assert!(leray_project(&gradient).l2_norm() < 1e-12);
    }

    #[test]
    fn poisson_eigenfunction_and_zero() {
        let g = slab16();
        let rhs = ScalarField::from_fn(&g, |x, y, _| -2.0 * x.sin() * y.sin());
        let f = poisson_solve_mean_zero(&rhs).unwrap();
        let want = ScalarField::from_fn(&g, |x, y, _| x.sin() * y.sin());
        assert!((&f - &want).l2_norm() < 1e-12);

        let zero = ScalarField::zeros(&g);
        assert!(poisson_solve_mean_zero(&zero).unwrap().l2_norm() == 0.0);
    }

    #[test]
    fn poisson_rejects_nonzero_mean() {
        let g = slab16();
        let rhs = ScalarField::constant(&g, 0.1);
        match poisson_solve_mean_zero(&rhs) {
            Err(Error::IncompatibleRhs { mean, .. }) => assert!((mean - 0.1).abs() < 1e-12),
            other => panic!("expected incompatible rhs, got {other:?}"),
        }
    }

    #[test]
    fn diff_op_arity_mismatch_is_usage_error() {
        let g = slab16();
        let f = Field::Scalar(ScalarField::constant(&g, 1.0));
        assert!(matches!(diff_op(DiffKind::Div, &f), Err(Error::Usage(_))));
        assert!(matches!(diff_op(DiffKind::Curl, &f), Err(Error::Usage(_))));
    }

    #[test]
    fn dealias_product_grid_mismatch() {
        let a = Field::Scalar(ScalarField::constant(&slab16(), 1.0));
        let b = Field::Scalar(ScalarField::constant(&Grid::new(DimMode::Slab2p5D, 32), 1.0));
        assert!(matches!(
            dealias_product(&a, &b, Contraction::Pointwise),
            Err(Error::Usage(_))
        ));
    }
}
