//! Equation of state for the ideal system: `ρ = R(S, p)` with `∂R/∂p > 0`,
//! and the derived coefficient fields of the transformed equations.

use std::sync::Arc;

use crate::error::Error;
use crate::fields::ScalarField;
use crate::real::Real;
use crate::Result;

type LawFn<T> = Arc<dyn Fn(T, T) -> T + Send + Sync>;

/// Gas law around the base point `(S̲, p̲)`.
///
/// The default perfect-gas law `R(S, p) = (p e^{−S})^{1/γ}` has the closed
/// forms `a ≡ 1/γ` and `r = p^{1/γ−1} e^{−S/γ}`; custom laws supply `R` and
/// `∂R/∂p` as closures and are checked for positivity at every evaluation.
#[derive(Clone)]
pub struct GasLaw<T: Real> {
    pub s_base: T,
    pub p_base: T,
    form: LawForm<T>,
}

#[derive(Clone)]
enum LawForm<T: Real> {
    Perfect { gamma: T },
    Custom { r: LawFn<T>, drdp: LawFn<T> },
}

impl<T: Real> std::fmt::Debug for GasLaw<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.form {
            LawForm::Perfect { .. } => "perfect",
            LawForm::Custom { .. } => "custom",
        };
        f.debug_struct("GasLaw")
            .field("form", &name)
            .field("s_base", &self.s_base.to64())
            .field("p_base", &self.p_base.to64())
            .finish()
    }
}

impl<T: Real> GasLaw<T> {
    /// Perfect-gas law with ratio of specific heats `γ > 1`.
    pub fn perfect(gamma: T, s_base: T, p_base: T) -> Self {
        assert!(gamma > T::one(), "gamma must exceed 1");
        assert!(p_base > T::zero(), "base pressure must be positive");
        GasLaw {
            s_base,
            p_base,
            form: LawForm::Perfect { gamma },
        }
    }

    /// Custom law: density `R(S, p)` and slope `∂R/∂p`, both positive on the
    /// sampled range (checked at evaluation sites).
    pub fn custom(
        s_base: T,
        p_base: T,
        r: impl Fn(T, T) -> T + Send + Sync + 'static,
        drdp: impl Fn(T, T) -> T + Send + Sync + 'static,
    ) -> Self {
        assert!(p_base > T::zero(), "base pressure must be positive");
        GasLaw {
            s_base,
            p_base,
            form: LawForm::Custom {
                r: Arc::new(r),
                drdp: Arc::new(drdp),
            },
        }
    }

    pub fn gamma(&self) -> Option<T> {
        match self.form {
            LawForm::Perfect { gamma } => Some(gamma),
            LawForm::Custom { .. } => None,
        }
    }

    fn density(&self, s: T, p: T) -> T {
        match &self.form {
            LawForm::Perfect { gamma } => (p * (-s).exp()).powf(T::one() / *gamma),
            LawForm::Custom { r, .. } => r(s, p),
        }
    }

    fn density_slope(&self, s: T, p: T) -> T {
        match &self.form {
            LawForm::Perfect { gamma } => self.density(s, p) / (*gamma * p),
            LawForm::Custom { drdp, .. } => drdp(s, p),
        }
    }

    /// `a(S, εq) = (p/R)·∂R/∂p` at a point.
    pub fn a_at(&self, s: T, eps_q: T) -> Result<T> {
        match &self.form {
            LawForm::Perfect { gamma } => Ok(T::one() / *gamma),
            LawForm::Custom { .. } => {
                let p = self.p_base * eps_q.exp();
                let (r, drdp) = self.checked_eval(s, p)?;
                Ok(p / r * drdp)
            }
        }
    }

    /// `r(S, εq) = R/p` at a point.
    pub fn r_at(&self, s: T, eps_q: T) -> Result<T> {
        let p = self.p_base * eps_q.exp();
        let (r, _) = self.checked_eval(s, p)?;
        Ok(r / p)
    }

    /// `r(S̲, 0)`, the constant density of the ideal incompressible limit.
    pub fn r_base(&self) -> T {
        self.r_at(self.s_base, T::zero())
            .expect("gas law must be valid at its base point")
    }

    fn checked_eval(&self, s: T, p: T) -> Result<(T, T)> {
        let r = self.density(s, p);
        let drdp = self.density_slope(s, p);
        if !(r > T::zero() && drdp > T::zero()) {
            return Err(Error::InvalidGasLaw {
                s: s.to64(),
                p: p.to64(),
                r: r.to64(),
                drdp: drdp.to64(),
            });
        }
        Ok((r, drdp))
    }
}

impl<T: Real> Default for GasLaw<T> {
    /// Perfect gas with `γ = 5/3` around `S̲ = 0`, `p̲ = 1` (so `r(S̲,0) = 1`).
    fn default() -> Self {
        GasLaw::perfect(T::of(5.0 / 3.0), T::zero(), T::one())
    }
}

/// Coefficient fields `a` and `r` of the transformed ideal system, evaluated
/// pointwise at `S = S̲ + εΘ`, `p = p̲ e^{εq}`.
pub fn gas_coeffs<T: Real>(
    law: &GasLaw<T>,
    theta: &ScalarField<T>,
    q: &ScalarField<T>,
    eps: T,
) -> Result<(ScalarField<T>, ScalarField<T>)> {
    assert!(
        crate::fields::Grid::same_grid(theta.grid(), q.grid()),
        "gas_coeffs: grid mismatch"
    );
    let grid = theta.grid().clone();
    let tv = theta.values();
    let qv = q.values();
    let mut a = Vec::with_capacity(grid.len());
    let mut r = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let s = law.s_base + eps * tv[i];
        let eq = eps * qv[i];
        a.push(law.a_at(s, eq)?);
        r.push(law.r_at(s, eq)?);
    }
    Ok((
        ScalarField::from_values(&grid, a),
        ScalarField::from_values(&grid, r),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Grid;

    #[test]
    fn perfect_law_a_is_inverse_gamma_exactly() {
        let g = Grid::<f64>::slab(8);
        let law = GasLaw::perfect(5.0 / 3.0, 0.3, 2.0);
        let theta = ScalarField::from_fn(&g, |x, _, _| 0.4 * x.sin());
        let q = ScalarField::from_fn(&g, |_, y, _| 0.7 * y.cos());
        let (a, _) = gas_coeffs(&law, &theta, &q, 0.2).unwrap();
        let want = 1.0 / (5.0 / 3.0);
        assert!(a.values().iter().all(|&v| v == want));
    }

    #[test]
    fn perfect_law_r_at_zero_eps() {
        // r = p̲^{1/γ−1} e^{−S̲/γ} at ε = 0.
        let g = Grid::<f64>::slab(8);
        let gamma = 1.4;
        let (sb, pb) = (0.5, 3.0);
        let law = GasLaw::perfect(gamma, sb, pb);
        let theta = ScalarField::from_fn(&g, |x, _, _| x.sin());
        let q = ScalarField::from_fn(&g, |_, y, _| y.cos());
        let (_, r) = gas_coeffs(&law, &theta, &q, 0.0).unwrap();
        let want = pb.powf(1.0 / gamma - 1.0) * (-sb / gamma).exp();
        assert!(r.values().iter().all(|&v| (v - want).abs() < 1e-14));
        assert!((law.r_base() - want).abs() < 1e-15);
    }

    #[test]
    fn default_law_base_density_is_one() {
        let law = GasLaw::<f64>::default();
        assert!((law.r_base() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_custom_law_rejected() {
        let g = Grid::<f64>::slab(8);
        let law = GasLaw::custom(0.0, 1.0, |_, _| -1.0, |_, _| 1.0);
        let z = ScalarField::zeros(&g);
        assert!(matches!(
            gas_coeffs(&law, &z, &z, 0.1),
            Err(Error::InvalidGasLaw { .. })
        ));
    }
}
