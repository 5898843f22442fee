//! Pointwise quasilinear form of the full system: the matrices `A_0..A_3`,
//! both symmetrizers, and the canonical energy.
//!
//! Component order throughout: `(q, u1, u2, u3, H1, H2, H3, φ)`.

use crate::error::Error;
use crate::fields::{laplacian_scalar, laplacian_vector, partial, partial_vector};
use crate::real::Real;
use crate::Result;

use super::{rhs_full, source_terms, FullState, GasLaw, IdealState, PhysicalParams, State8};

/// Dense 8×8 real matrix attached to one grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat8<T>(pub [[T; 8]; 8]);

impl<T: Real> Mat8<T> {
    pub fn zeros() -> Self {
        Mat8([[T::zero(); 8]; 8])
    }

    pub fn diag(d: [T; 8]) -> Self {
        let mut m = Self::zeros();
        for i in 0..8 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn mul_vec(&self, v: &[T; 8]) -> [T; 8] {
        let mut out = [T::zero(); 8];
        for i in 0..8 {
            let mut s = T::zero();
            for j in 0..8 {
                s += self.0[i][j] * v[j];
            }
            out[i] = s;
        }
        out
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..8 {
            for j in 0..8 {
                let mut s = T::zero();
                for k in 0..8 {
                    s += self.0[i][k] * other.0[k][j];
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    /// Scale row `i` by `d[i]` (left multiplication by a diagonal matrix).
    pub fn scale_rows(&self, d: &[T; 8]) -> Self {
        let mut out = *self;
        for i in 0..8 {
            for j in 0..8 {
                out.0[i][j] = out.0[i][j] * d[i];
            }
        }
        out
    }

    /// `max_{ij} |M_ij − M_ji|`.
    pub fn max_asymmetry(&self) -> T {
        let mut m = T::zero();
        for i in 0..8 {
            for j in (i + 1)..8 {
                m = m.max((self.0[i][j] - self.0[j][i]).abs());
            }
        }
        m
    }

    pub fn min_diag(&self) -> T {
        (0..8).map(|i| self.0[i][i]).fold(T::infinity(), |a, b| a.min(b))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }

    /// Row-major CSV dump, 8 columns.
    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| format!("{:.17e}", v.to64()))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// One grid point of a compressible state.
#[derive(Clone, Copy, Debug)]
pub struct PointState<T> {
    pub q: T,
    pub u: [T; 3],
    pub h: [T; 3],
    pub phi: T,
}

impl<T: Real> PointState<T> {
    pub fn sample<S: State8<T>>(state: &S, idx: usize) -> Self {
        let c = state.components();
        PointState {
            q: c[0].values()[idx],
            u: [c[1].values()[idx], c[2].values()[idx], c[3].values()[idx]],
            h: [c[4].values()[idx], c[5].values()[idx], c[6].values()[idx]],
            phi: c[7].values()[idx],
        }
    }
}

/// Assemble `(A_0, A_1, A_2, A_3)` at one point, including the `1/ε` entries.
/// Panics if `ε = 0` (the matrices are singular in ε by design).
pub fn assemble_matrices<T: Real>(
    point: &PointState<T>,
    params: &PhysicalParams<T>,
) -> [Mat8<T>; 4] {
    let eps = params.eps;
    assert!(eps != T::zero(), "assemble_matrices rejects eps = 0");
    let rho = T::one() + eps * point.q;
    let theta = T::one() + eps * point.phi;
    let rho_eps = rho / eps;
    let theta_eps = theta / eps;
    let gamma1 = params.gamma - T::one();
    let heat = gamma1 * rho * theta / eps;
    let [u1, u2, u3] = point.u;
    let [h1, h2, h3] = point.h;

    let a0 = Mat8::diag([T::one(), rho, rho, rho, T::one(), T::one(), T::one(), rho]);

    let mut a1 = Mat8::zeros();
    a1.0[0][0] = u1;
    a1.0[0][1] = rho_eps;
    a1.0[1][0] = theta_eps;
    a1.0[1][1] = u1 * rho;
    a1.0[1][5] = h2;
    a1.0[1][6] = h3;
    a1.0[1][7] = rho_eps;
    a1.0[2][2] = u1 * rho;
    a1.0[2][5] = -h1;
    a1.0[3][3] = u1 * rho;
    a1.0[3][6] = -h1;
    a1.0[4][4] = u1;
    a1.0[5][1] = h2;
    a1.0[5][2] = -h1;
    a1.0[5][5] = u1;
    a1.0[6][1] = h3;
    a1.0[6][3] = -h1;
    a1.0[6][6] = u1;
    a1.0[7][1] = heat;
    a1.0[7][7] = rho * u1;

    let mut a2 = Mat8::zeros();
    a2.0[0][0] = u2;
    a2.0[0][2] = rho_eps;
    a2.0[1][1] = u2 * rho;
    a2.0[1][4] = -h2;
    a2.0[2][0] = theta_eps;
    a2.0[2][2] = u2 * rho;
    a2.0[2][4] = h1;
    a2.0[2][6] = h3;
    a2.0[2][7] = rho_eps;
    a2.0[3][3] = u2 * rho;
    a2.0[3][6] = -h2;
    a2.0[4][1] = -h2;
    a2.0[4][2] = h1;
    a2.0[4][4] = u2;
    a2.0[5][5] = u2;
    a2.0[6][2] = h3;
    a2.0[6][3] = -h2;
    a2.0[6][6] = u2;
    a2.0[7][2] = heat;
    a2.0[7][7] = rho * u2;

    let mut a3 = Mat8::zeros();
    a3.0[0][0] = u3;
    a3.0[0][3] = rho_eps;
    a3.0[1][1] = u3 * rho;
    a3.0[1][4] = -h3;
    a3.0[2][2] = u3 * rho;
    a3.0[2][5] = -h3;
    a3.0[3][0] = theta_eps;
    a3.0[3][3] = u3 * rho;
    a3.0[3][4] = h1;
    a3.0[3][5] = h2;
    a3.0[3][7] = rho_eps;
    a3.0[4][1] = -h3;
    a3.0[4][3] = h1;
    a3.0[4][4] = u3;
    a3.0[5][2] = -h3;
    a3.0[5][3] = h2;
    a3.0[5][5] = u3;
    a3.0[6][6] = u3;
    a3.0[7][3] = heat;
    a3.0[7][7] = rho * u3;

    [a0, a1, a2, a3]
}

/// Diagonal of `A_0⁻¹` at a point.
pub fn a0_inverse_diag<T: Real>(point: &PointState<T>, params: &PhysicalParams<T>) -> [T; 8] {
    let rho_inv = T::one() / (T::one() + params.eps * point.q);
    [
        T::one(),
        rho_inv,
        rho_inv,
        rho_inv,
        T::one(),
        T::one(),
        T::one(),
        rho_inv,
    ]
}

/// Both diagonal symmetrizers at a point: `Â_0` (quasilinear form) and `Ã_0`
/// (energy form, making `Ã_0 A_0⁻¹ A_j` symmetric).
///
/// Errors with a state-space exit when `1 + εq` or `1 + εφ` is nonpositive.
pub fn symmetrizers<T: Real>(
    point: &PointState<T>,
    params: &PhysicalParams<T>,
) -> Result<(Mat8<T>, Mat8<T>)> {
    let eps = params.eps;
    let rho = T::one() + eps * point.q;
    let theta = T::one() + eps * point.phi;
    if !(rho > T::zero()) {
        return Err(Error::StateSpaceExit {
            field: "1 + eps*q",
            value: rho.to64(),
            limit: 0.0,
        });
    }
    if !(theta > T::zero()) {
        return Err(Error::StateSpaceExit {
            field: "1 + eps*phi",
            value: theta.to64(),
            limit: 0.0,
        });
    }
    let gamma1 = params.gamma - T::one();
    let one = T::one();
    let a_hat = Mat8::diag([
        theta / rho,
        one,
        one,
        one,
        one,
        one,
        one,
        one / (gamma1 * theta),
    ]);
    let rho_inv = one / rho;
    let a_tilde = Mat8::diag([
        theta / (rho * rho),
        one,
        one,
        one,
        rho_inv,
        rho_inv,
        rho_inv,
        one / (gamma1 * theta),
    ]);
    Ok((a_hat, a_tilde))
}

/// Canonical energy `‖E‖_e² = ∫⟨Ã_0(U)E, E⟩ dx`, quadrature in physical
/// space; returns the squared energy.
pub fn canonical_energy<T: Real>(
    e: &FullState<T>,
    u: &FullState<T>,
    params: &PhysicalParams<T>,
) -> T {
    assert!(
        crate::fields::Grid::same_grid(e.grid(), u.grid()),
        "canonical energy: grid mismatch"
    );
    let eps = params.eps;
    let gamma1 = params.gamma - T::one();
    let grid = e.grid().clone();
    let ec = e.components();
    let evals: Vec<&[T]> = ec.iter().map(|c| c.values()).collect();
    let qv = u.q.values();
    let pv = u.phi.values();
    let mut sum = T::zero();
    for i in 0..grid.len() {
        let rho = T::one() + eps * qv[i];
        let theta = T::one() + eps * pv[i];
        let rho_inv = T::one() / rho;
        let w = [
            theta / (rho * rho),
            T::one(),
            T::one(),
            T::one(),
            rho_inv,
            rho_inv,
            rho_inv,
            T::one() / (gamma1 * theta),
        ];
        for c in 0..8 {
            let v = evals[c][i];
            sum += w[c] * v * v;
        }
    }
    sum * grid.point_weight()
}

/// Canonical energy for the ideal system: the `A_0`-weighted quadratic form
/// `∫⟨diag(a, r, r, r, 1, 1, 1, 1) E, E⟩ dx` with `a, r` evaluated at the
/// compressible state. Returns the squared energy.
pub fn canonical_energy_ideal<T: Real>(
    e: &IdealState<T>,
    v: &IdealState<T>,
    law: &GasLaw<T>,
    eps: T,
) -> Result<T> {
    let grid = e.grid().clone();
    let (a, r) = super::gas_coeffs(law, &v.theta, &v.q, eps)?;
    let av = a.values();
    let rv = r.values();
    let ec = e.components();
    let evals: Vec<&[T]> = ec.iter().map(|c| c.values()).collect();
    let mut sum = T::zero();
    for i in 0..grid.len() {
        let w = [
            av[i],
            rv[i],
            rv[i],
            rv[i],
            T::one(),
            T::one(),
            T::one(),
            T::one(),
        ];
        for c in 0..8 {
            let v = evals[c][i];
            sum += w[c] * v * v;
        }
    }
    Ok(sum * grid.point_weight())
}

/// L² norm of `A_0 ∂_t U + Σ_j A_j ∂_j U − Q(U)` with `∂_t U` taken from
/// [`rhs_full`]: the two encodings of the same dynamics must agree.
pub fn quasilinear_defect<T: Real>(
    state: &FullState<T>,
    params: &PhysicalParams<T>,
) -> Result<T> {
    let grid = state.grid().clone();
    let tendency = rhs_full(state, params)?;
    let src = source_terms(&state.u, &state.h, params);
    let lap_h = laplacian_vector(&state.h);
    let lap_phi = laplacian_scalar(&state.phi);

    // Q(U) = (0, F(u), νΔH, κΔφ + ε(L + G)).
    let q_heat = lap_phi
        .scaled(params.kappa)
        .axpy(params.eps, &(&src.l + &src.g));

    let tend_fields = tendency.components();
    let tend_vals: Vec<&[T]> = tend_fields.iter().map(|f| f.values()).collect();

    let d1 = partial_derivative_components(state, 0);
    let d2 = partial_derivative_components(state, 1);
    let d3 = partial_derivative_components(state, 2);
    let d1v: Vec<&[T]> = d1.iter().map(|f| f.values()).collect();
    let d2v: Vec<&[T]> = d2.iter().map(|f| f.values()).collect();
    let d3v: Vec<&[T]> = d3.iter().map(|f| f.values()).collect();

    let q_fields: [&crate::fields::ScalarField<T>; 8] = [
        // row q has no source
        &tendency.q, // placeholder, weight zero below
        src.f.comp(0),
        src.f.comp(1),
        src.f.comp(2),
        lap_h.comp(0),
        lap_h.comp(1),
        lap_h.comp(2),
        &q_heat,
    ];
    let q_weights: [T; 8] = [
        T::zero(),
        T::one(),
        T::one(),
        T::one(),
        params.nu,
        params.nu,
        params.nu,
        T::one(),
    ];
    let q_vals: Vec<&[T]> = q_fields.iter().map(|f| f.values()).collect();

    let mut sum = T::zero();
    for idx in 0..grid.len() {
        let point = PointState::sample(state, idx);
        let [a0, a1, a2, a3] = assemble_matrices(&point, params);
        let gather = |vals: &Vec<&[T]>| -> [T; 8] {
            let mut v = [T::zero(); 8];
            for c in 0..8 {
                v[c] = vals[c][idx];
            }
            v
        };
        let t = a0.mul_vec(&gather(&tend_vals));
        let x1 = a1.mul_vec(&gather(&d1v));
        let x2 = a2.mul_vec(&gather(&d2v));
        let x3 = a3.mul_vec(&gather(&d3v));
        for c in 0..8 {
            let q_c = q_weights[c] * q_vals[c][idx];
            let r = t[c] + x1[c] + x2[c] + x3[c] - q_c;
            sum += r * r;
        }
    }
    Ok((sum * grid.point_weight()).sqrt())
}

fn partial_derivative_components<T: Real>(
    state: &FullState<T>,
    axis: usize,
) -> Vec<crate::fields::ScalarField<T>> {
    let du = partial_vector(&state.u, axis);
    let dh = partial_vector(&state.h, axis);
    let mut out = Vec::with_capacity(8);
    out.push(partial(&state.q, axis));
    for i in 0..3 {
        out.push(du.comp(i).clone());
    }
    for i in 0..3 {
        out.push(dh.comp(i).clone());
    }
    out.push(partial(&state.phi, axis));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_point() -> PointState<f64> {
        PointState {
            q: 0.4,
            u: [0.3, -0.7, 0.2],
            h: [0.5, -0.1, 0.8],
            phi: -0.6,
        }
    }

    #[test]
    fn a0_is_identity_at_rest() {
        let params = PhysicalParams::inviscid(5.0 / 3.0, 0.1);
        let point = PointState {
            q: 0.0,
            u: [0.0; 3],
            h: [0.0; 3],
            phi: 0.0,
        };
        let [a0, ..] = assemble_matrices(&point, &params);
        assert_eq!(a0, Mat8::diag([1.0; 8]));
    }

    #[test]
    fn a1_singular_entries() {
        let params = PhysicalParams::inviscid(5.0 / 3.0, 0.2);
        let p = sample_point();
        let [_, a1, _, _] = assemble_matrices(&p, &params);
        let rho = 1.0 + 0.2 * p.q;
        let theta = 1.0 + 0.2 * p.phi;
        assert_eq!(a1.0[0][1], rho / 0.2);
        assert_eq!(a1.0[1][0], theta / 0.2);
        assert_eq!(a1.0[7][1], (5.0 / 3.0 - 1.0) * rho * theta / 0.2);
    }

    #[test]
    #[should_panic(expected = "eps = 0")]
    fn zero_eps_rejected() {
        let params = PhysicalParams {
            mu: 0.0,
            lambda: 0.0,
            nu: 0.0,
            kappa: 0.0,
            gamma: 1.4,
            eps: 0.0,
        };
        assemble_matrices(&sample_point(), &params);
    }

    #[test]
    fn symmetrizers_at_rest() {
        let params = PhysicalParams::inviscid(5.0 / 3.0, 0.1);
        let point = PointState {
            q: 0.0,
            u: [0.0; 3],
            h: [0.0; 3],
            phi: 0.0,
        };
        let (a_hat, a_tilde) = symmetrizers(&point, &params).unwrap();
        let want = Mat8::diag([1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0 / (5.0 / 3.0 - 1.0)]);
        assert_eq!(a_hat, want);
        assert_eq!(a_tilde, want);
    }

    #[test]
    fn energy_symmetrizer_makes_script_a_symmetric() {
        let params = PhysicalParams::inviscid(5.0 / 3.0, 0.3);
        let p = sample_point();
        let [_, a1, a2, a3] = assemble_matrices(&p, &params);
        let inv = a0_inverse_diag(&p, &params);
        let (_, a_tilde) = symmetrizers(&p, &params).unwrap();
        for a in [a1, a2, a3] {
            let script = a.scale_rows(&inv);
            let weighted = a_tilde.mul_mat(&script);
            assert!(weighted.max_asymmetry() < 1e-13, "asym {:e}", weighted.max_asymmetry());
        }
    }

    #[test]
    fn symmetrizer_positivity_violation() {
        let params = PhysicalParams::inviscid(1.4, 1.0);
        let point = PointState {
            q: -1.5,
            u: [0.0; 3],
            h: [0.0; 3],
            phi: 0.0,
        };
        assert!(matches!(
            symmetrizers(&point, &params),
            Err(Error::StateSpaceExit { .. })
        ));
    }

    #[test]
    fn csv_dump_has_eight_columns() {
        let params = PhysicalParams::inviscid(1.4, 0.5);
        let [a0, ..] = assemble_matrices(&sample_point(), &params);
        let csv = a0.to_csv();
        assert_eq!(csv.lines().count(), 8);
        assert!(csv.lines().all(|l| l.split(',').count() == 8));
    }
}
