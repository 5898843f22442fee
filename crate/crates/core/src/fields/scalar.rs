//! Scalar field on a periodic grid with cached physical/spectral views.

use std::sync::{Arc, OnceLock};

use num_complex::Complex;

use super::{fft, Grid};
use crate::real::Real;

/// Real scalar field; the spectral coefficients are authoritative and the
/// physical samples are a lazily computed cache. Shared references stay
/// safe: the cache is guarded by a `OnceLock` and mutation always builds a
/// new field, so results are bitwise deterministic for a fixed grid.
pub struct ScalarField<T: Real> {
    grid: Arc<Grid<T>>,
    spec: Vec<Complex<T>>,
    phys: OnceLock<Vec<T>>,
}

impl<T: Real> Clone for ScalarField<T> {
    fn clone(&self) -> Self {
        ScalarField {
            grid: self.grid.clone(),
            spec: self.spec.clone(),
            phys: self.phys.clone(),
        }
    }
}

impl<T: Real> std::fmt::Debug for ScalarField<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("grid", &*self.grid)
            .finish()
    }
}

impl<T: Real> ScalarField<T> {
    pub fn zeros(grid: &Arc<Grid<T>>) -> Self {
        ScalarField {
            grid: grid.clone(),
            spec: vec![Complex::new(T::zero(), T::zero()); grid.len()],
            phys: OnceLock::new(),
        }
    }

    pub fn constant(grid: &Arc<Grid<T>>, c: T) -> Self {
        let mut f = Self::zeros(grid);
        f.spec[0] = Complex::new(c, T::zero());
        f
    }

    /// Build from physical samples (row-major). One forward transform.
    pub fn from_values(grid: &Arc<Grid<T>>, values: Vec<T>) -> Self {
        assert_eq!(values.len(), grid.len(), "sample count != grid size");
        let mut buf: Vec<Complex<T>> = values
            .iter()
            .map(|&v| Complex::new(v, T::zero()))
            .collect();
        fft::forward(grid, &mut buf);
        let phys = OnceLock::new();
        let _ = phys.set(values);
        ScalarField {
            grid: grid.clone(),
            spec: buf,
            phys,
        }
    }

    pub fn from_spec(grid: &Arc<Grid<T>>, spec: Vec<Complex<T>>) -> Self {
        assert_eq!(spec.len(), grid.len(), "mode count != grid size");
        ScalarField {
            grid: grid.clone(),
            spec,
            phys: OnceLock::new(),
        }
    }

    /// Sample a closure on the grid.
    pub fn from_fn(grid: &Arc<Grid<T>>, f: impl Fn(T, T, T) -> T) -> Self {
        let values = (0..grid.len())
            .map(|idx| {
                let [x, y, z] = grid.coords(idx);
                f(x, y, z)
            })
            .collect();
        Self::from_values(grid, values)
    }

    pub fn grid(&self) -> &Arc<Grid<T>> {
        &self.grid
    }

    pub fn spectral(&self) -> &[Complex<T>] {
        &self.spec
    }

    /// Physical samples; computed on first use and cached.
    pub fn values(&self) -> &[T] {
        self.phys.get_or_init(|| {
            let mut buf = self.spec.clone();
            fft::inverse(&self.grid, &mut buf);
            buf.into_iter().map(|c| c.re).collect()
        })
    }

    /// Mean over the torus (the `k = 0` coefficient).
    pub fn mean(&self) -> T {
        self.spec[0].re
    }

    pub fn max_abs(&self) -> T {
        self.values()
            .iter()
            .fold(T::zero(), |m, &v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.spec.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// New field with the dealiasing mask applied.
    pub fn masked(&self) -> Self {
        let spec = self
            .spec
            .iter()
            .zip(self.grid.mask().iter())
            .map(|(&c, &keep)| if keep { c } else { Complex::new(T::zero(), T::zero()) })
            .collect();
        Self::from_spec(&self.grid, spec)
    }

    /// Map every spectral coefficient given its flat index.
    pub fn map_spec(&self, f: impl Fn(usize, Complex<T>) -> Complex<T>) -> Self {
        let spec = self
            .spec
            .iter()
            .enumerate()
            .map(|(idx, &c)| f(idx, c))
            .collect();
        Self::from_spec(&self.grid, spec)
    }

    pub fn scaled(&self, a: T) -> Self {
        self.map_spec(|_, c| c.scale(a))
    }

    /// `self + a·other`.
    pub fn axpy(&self, a: T, other: &Self) -> Self {
        assert!(Grid::same_grid(&self.grid, &other.grid), "grid mismatch");
        let spec = self
            .spec
            .iter()
            .zip(other.spec.iter())
            .map(|(&x, &y)| x + y.scale(a))
            .collect();
        Self::from_spec(&self.grid, spec)
    }

    /// Sobolev norm `(Σ_k (1+|k|²)^s |f̂_k|² (2π)³)^{1/2}`.
    ///
    /// Parseval-normalized: `s = 0` is the continuum L² norm of the
    /// band-limited interpolant. Panics if `s < 0`.
    pub fn sobolev_norm(&self, s: T) -> T {
        assert!(s >= T::zero(), "Sobolev index must be nonnegative");
        let mut sum = T::zero();
        for (idx, c) in self.spec.iter().enumerate() {
            let k2 = T::of(self.grid.k2(idx) as f64);
            let w = (T::one() + k2).powf(s);
            sum += w * (c.re * c.re + c.im * c.im);
        }
        (sum * self.grid.measure()).sqrt()
    }

    pub fn l2_norm(&self) -> T {
        self.sobolev_norm(T::zero())
    }

    /// L² inner product `∫ f g dx` evaluated spectrally.
    pub fn l2_inner(&self, other: &Self) -> T {
        assert!(Grid::same_grid(&self.grid, &other.grid), "grid mismatch");
        let mut sum = T::zero();
        for (a, b) in self.spec.iter().zip(other.spec.iter()) {
            sum += a.re * b.re + a.im * b.im;
        }
        sum * self.grid.measure()
    }
}

impl<T: Real> std::ops::Add for &ScalarField<T> {
    type Output = ScalarField<T>;
    fn add(self, rhs: Self) -> ScalarField<T> {
        self.axpy(T::one(), rhs)
    }
}

impl<T: Real> std::ops::Sub for &ScalarField<T> {
    type Output = ScalarField<T>;
    fn sub(self, rhs: Self) -> ScalarField<T> {
        self.axpy(-T::one(), rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_physical_spectral_physical() {
        let g = Grid::<f64>::slab(16);
        let f = ScalarField::from_fn(&g, |x, y, _| (x.sin() + (2.0 * y).cos()) * 0.7 + 0.1);
        let back = ScalarField::from_spec(&g, f.spectral().to_vec());
        let max = f
            .values()
            .iter()
            .zip(back.values().iter())
            .fold(0.0f64, |m, (&a, &b)| m.max((a - b).abs()));
        let amp = f.max_abs();
        assert!(max <= 1e-13 * amp, "roundtrip error {max:e}");
    }

    #[test]
    fn conjugate_symmetry_of_real_samples() {
        let g = Grid::<f64>::full3d(8);
        let f = ScalarField::from_fn(&g, |x, y, z| x.sin() * y.cos() + (z - 1.0).cos());
        for idx in 0..g.len() {
            let kv = g.kvec(idx);
            if kv.iter().any(|&k| k == -4) {
                continue; // unpaired Nyquist
            }
            let j: Vec<usize> = kv
                .iter()
                .map(|&ki| if ki <= 0 { (-ki) as usize } else { 8 - ki as usize })
                .collect();
            let mirror = (j[0] * 8 + j[1]) * 8 + j[2];
            let a = f.spectral()[idx];
            let b = f.spectral()[mirror];
            assert!((a.re - b.re).abs() < 1e-14 && (a.im + b.im).abs() < 1e-14);
        }
    }

    #[test]
    fn constant_norm_carries_torus_measure() {
        let g = Grid::<f64>::full3d(8);
        let f = ScalarField::constant(&g, -3.0);
        let want = 3.0 * (2.0 * std::f64::consts::PI).powi(3).sqrt();
        for s in [0.0, 1.5, 4.0] {
            assert!((f.sobolev_norm(s) - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn sobolev_norm_single_mode() {
        // f = sin x1: s = 0 gives ((2π)³/2)^{1/2}; s = 2 doubles it.
        let g = Grid::<f64>::full3d(8);
        let f = ScalarField::from_fn(&g, |x, _, _| x.sin());
        let base = ((2.0 * std::f64::consts::PI).powi(3) / 2.0).sqrt();
        assert!((f.sobolev_norm(0.0) - base).abs() < 1e-12);
        assert!((f.sobolev_norm(2.0) - 2.0 * base).abs() < 1e-12);
    }

    #[test]
    fn sobolev_norm_nondecreasing_in_s() {
        let g = Grid::<f64>::slab(16);
        let f = ScalarField::from_fn(&g, |x, y, _| (3.0 * x).sin() * (2.0 * y).cos() + x.cos());
        let mut prev = 0.0;
        for i in 0..8 {
            let s = 0.5 * i as f64;
            let n = f.sobolev_norm(s);
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    #[should_panic(expected = "nonnegative")]
    fn negative_sobolev_index_panics() {
        let g = Grid::<f64>::slab(8);
        ScalarField::constant(&g, 1.0).sobolev_norm(-1.0);
    }
}
