//! Periodic-torus fields and spectral calculus.
//!
//! The domain is the torus `[0, 2π)^3` sampled on `n` points per axis, so
//! wavenumbers are plain integers. In slab (2.5D) mode fields keep three
//! vector components but depend on `x1, x2` only; the third axis collapses
//! to a single collocation point with `∂3 ≡ 0`.

mod fft;
mod identities;
mod ops;
mod scalar;
mod snapshot;
mod vector;

pub use identities::{check_identities, IdentityReport, IDENTITY_NAMES};
pub use ops::{
    advect_scalar, advect_vector, cross, curl, dealias_product, diff_op, div, dot, grad,
    laplacian_scalar, laplacian_vector, leray_project, partial, partial_vector, poisson_solve_mean_zero,
    product, scale_vector, Contraction, DiffKind, Field,
};
pub use scalar::ScalarField;
pub use snapshot::{read_snapshot, read_snapshot_header, write_snapshot, SnapshotHeader};
pub use vector::VectorField3;

use std::sync::Arc;

use num_complex::Complex;
use rustfft::Fft;

use crate::real::Real;

/// Grid flavor: full 3D box or the 2.5D invariant slab.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimMode {
    /// Three-component fields depending on `x1, x2` only.
    Slab2p5D,
    /// Fully three-dimensional fields.
    Full3D,
}

impl DimMode {
    pub fn tag(self) -> u8 {
        match self {
            DimMode::Slab2p5D => 0,
            DimMode::Full3D => 1,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(DimMode::Slab2p5D),
            1 => Some(DimMode::Full3D),
            _ => None,
        }
    }
}

/// Collocation grid plus spectral metadata shared by all fields living on it.
///
/// Holds the integer wavenumber lattice, the 2/3-rule dealiasing mask and the
/// FFT plans. Construction panics if `n` is not a power of two at least 8.
pub struct Grid<T: Real> {
    dim_mode: DimMode,
    n: usize,
    shape: [usize; 3],
    len: usize,
    /// Integer wavenumbers per axis in FFT storage order.
    k: [Vec<i64>; 3],
    /// Derivative wavenumbers: as `k` but with the unpaired Nyquist mode zeroed.
    kd: [Vec<T>; 3],
    /// 2/3-rule keep mask: false where any `|k_i| > n/3`.
    mask: Vec<bool>,
    fwd: Arc<dyn Fft<T>>,
    inv: Arc<dyn Fft<T>>,
}

impl<T: Real> std::fmt::Debug for Grid<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Grid")
            .field("dim_mode", &self.dim_mode)
            .field("n", &self.n)
            .finish()
    }
}

fn wavenumbers(m: usize) -> Vec<i64> {
    (0..m)
        .map(|j| {
            if j < m.div_ceil(2) {
                j as i64
            } else {
                j as i64 - m as i64
            }
        })
        .collect()
}

impl<T: Real> Grid<T> {
    /// Build a grid; `n` must be a power of two, `n ≥ 8`.
    pub fn new(dim_mode: DimMode, n: usize) -> Arc<Self> {
        assert!(
            n >= 8 && n.is_power_of_two(),
            "grid resolution must be a power of two >= 8, got {n}"
        );
        let shape = match dim_mode {
            DimMode::Slab2p5D => [n, n, 1],
            DimMode::Full3D => [n, n, n],
        };
        let len = shape[0] * shape[1] * shape[2];
        let k = [
            wavenumbers(shape[0]),
            wavenumbers(shape[1]),
            wavenumbers(shape[2]),
        ];
        let kd = [
            derivative_wavenumbers::<T>(&k[0], shape[0]),
            derivative_wavenumbers::<T>(&k[1], shape[1]),
            derivative_wavenumbers::<T>(&k[2], shape[2]),
        ];
        let mut mask = vec![true; len];
        for (idx, keep) in mask.iter_mut().enumerate() {
            let kv = kvec_at(&k, shape, idx);
            *keep = kv.iter().all(|&ki| 3 * ki.unsigned_abs() as usize <= n);
        }
        let mut planner = rustfft::FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Arc::new(Grid {
            dim_mode,
            n,
            shape,
            len,
            k,
            kd,
            mask,
            fwd,
            inv,
        })
    }

    pub fn slab(n: usize) -> Arc<Self> {
        Self::new(DimMode::Slab2p5D, n)
    }

    pub fn full3d(n: usize) -> Arc<Self> {
        Self::new(DimMode::Full3D, n)
    }

    pub fn dim_mode(&self) -> DimMode {
        self.dim_mode
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }

    /// Total number of collocation points (= number of spectral modes).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing `2π/n` of the active axes.
    pub fn spacing(&self) -> T {
        T::of(2.0) * T::PI() / T::of(self.n as f64)
    }

    /// Largest retained wavenumber after dealiasing, `floor(n/3)`.
    pub fn dealias_limit(&self) -> i64 {
        (self.n / 3) as i64
    }

    /// Integer wavevector of a flat spectral index.
    pub fn kvec(&self, idx: usize) -> [i64; 3] {
        kvec_at(&self.k, self.shape, idx)
    }

    /// Derivative wavevector (Nyquist zeroed) of a flat spectral index.
    pub fn kvec_deriv(&self, idx: usize) -> [T; 3] {
        let [i1, i2, i3] = self.unravel(idx);
        [self.kd[0][i1], self.kd[1][i2], self.kd[2][i3]]
    }

    /// `|k|²` with the true (signed) wavenumbers.
    pub fn k2(&self, idx: usize) -> i64 {
        let kv = self.kvec(idx);
        kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    fn unravel(&self, idx: usize) -> [usize; 3] {
        let n3 = self.shape[2];
        let n2 = self.shape[1];
        let i3 = idx % n3;
        let r = idx / n3;
        let i2 = r % n2;
        let i1 = r / n2;
        [i1, i2, i3]
    }

    /// Physical coordinates of a flat index.
    pub fn coords(&self, idx: usize) -> [T; 3] {
        let [i1, i2, i3] = self.unravel(idx);
        let h = T::of(2.0) * T::PI() / T::of(self.n as f64);
        // The collapsed slab axis sits at x3 = 0.
        [
            h * T::of(i1 as f64),
            h * T::of(i2 as f64),
            h * T::of(i3 as f64),
        ]
    }

    /// Measure of the torus, `(2π)³`. Slab fields are constant along `x3`,
    /// so the 3D measure applies in both modes.
    pub fn measure(&self) -> T {
        let two_pi = T::of(2.0) * T::PI();
        two_pi * two_pi * two_pi
    }

    /// Quadrature weight per collocation point: `measure / len`.
    pub fn point_weight(&self) -> T {
        self.measure() / T::of(self.len as f64)
    }

    pub fn same_grid(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || (a.dim_mode == b.dim_mode && a.n == b.n)
    }

    pub(crate) fn forward_plan(&self) -> &Arc<dyn Fft<T>> {
        &self.fwd
    }

    pub(crate) fn inverse_plan(&self) -> &Arc<dyn Fft<T>> {
        &self.inv
    }
}

fn derivative_wavenumbers<T: Real>(k: &[i64], m: usize) -> Vec<T> {
    k.iter()
        .map(|&ki| {
            if m % 2 == 0 && ki == -(m as i64) / 2 {
                T::zero()
            } else {
                T::of(ki as f64)
            }
        })
        .collect()
}

fn kvec_at(k: &[Vec<i64>; 3], shape: [usize; 3], idx: usize) -> [i64; 3] {
    let n3 = shape[2];
    let n2 = shape[1];
    let i3 = idx % n3;
    let r = idx / n3;
    let i2 = r % n2;
    let i1 = r / n2;
    [k[0][i1], k[1][i2], k[2][i3]]
}

/// Embed a field's spectrum into a finer grid of the same mode (zero padding).
pub(crate) fn pad_spectrum<T: Real>(
    src_grid: &Grid<T>,
    src: &[Complex<T>],
    dst_grid: &Grid<T>,
) -> Vec<Complex<T>> {
    assert_eq!(src_grid.dim_mode, dst_grid.dim_mode, "pad: mode mismatch");
    assert!(dst_grid.n >= src_grid.n, "pad: destination must be finer");
    let mut out = vec![Complex::new(T::zero(), T::zero()); dst_grid.len];
    let dst_shape = dst_grid.shape;
    for (idx, &c) in src.iter().enumerate() {
        let kv = src_grid.kvec(idx);
        // Skip the unpaired Nyquist modes; padded fields must stay conjugate-symmetric.
        if kv
            .iter()
            .zip(src_grid.shape.iter())
            .any(|(&ki, &m)| m % 2 == 0 && ki == -(m as i64) / 2)
        {
            continue;
        }
        let j: Vec<usize> = kv
            .iter()
            .zip(dst_shape.iter())
            .map(|(&ki, &m)| {
                if ki >= 0 {
                    ki as usize
                } else {
                    (m as i64 + ki) as usize
                }
            })
            .collect();
        out[(j[0] * dst_shape[1] + j[1]) * dst_shape[2] + j[2]] = c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavenumber_layout_matches_fft_order() {
        assert_eq!(wavenumbers(8), vec![0, 1, 2, 3, -4, -3, -2, -1]);
    }

    #[test]
    fn mask_drops_top_third() {
        let g = Grid::<f64>::slab(8);
        // n = 8: keep |k| <= 2.
        let kept: Vec<[i64; 3]> = (0..g.len())
            .filter(|&i| g.mask()[i])
            .map(|i| g.kvec(i))
            .collect();
        assert!(kept.iter().all(|kv| kv.iter().all(|k| k.abs() <= 2)));
        assert_eq!(kept.len(), 5 * 5);
    }

    #[test]
    #[should_panic(expected = "power of two")]
    fn rejects_non_power_of_two() {
        let _ = Grid::<f64>::slab(12);
    }

    #[test]
    #[should_panic(expected = "power of two")]
    fn rejects_small_grid() {
        let _ = Grid::<f64>::full3d(4);
    }

    #[test]
    fn slab_collapses_third_axis() {
        let g = Grid::<f64>::slab(16);
        assert_eq!(g.shape(), [16, 16, 1]);
        for idx in 0..g.len() {
            assert_eq!(g.kvec(idx)[2], 0);
        }
    }
}
