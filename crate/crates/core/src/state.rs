//! Thermal state of the dipolar-coupled spin-1/2 pair and its evolution
//! under the two-quantum Hamiltonian H = (D/2)(I⁺₁I⁺₂ + I⁻₁I⁻₂).
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ with |0⟩ the I_z = +1/2 eigenstate.
//! H couples only |00⟩ and |11⟩, so the closed-form evolution is a rotation
//! of that 2×2 block; a generic matrix-exponential propagator is kept as an
//! independent oracle.

use num_complex::Complex64 as C64;

use crate::error::{check_range, Error, Result};
use crate::matrix::{matrix_exp, DensityMatrix4, Mat4};

/// Geometry of the dipolar-coupled pair relative to the external field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipolarGeometry {
    /// Gyromagnetic ratio.
    pub gamma: f64,
    /// Inter-spin distance (must be positive).
    pub r12: f64,
    /// Angle between the inter-spin vector and the external field, radians.
    pub theta12: f64,
}

/// Dipolar coupling D = γ/r³ · (1 − 3cos²θ) in angular-frequency units
/// (ħ = 1 throughout).
pub fn dipolar_coupling(geom: &DipolarGeometry) -> Result<f64> {
    let separated = geom.r12.is_finite() && geom.r12 > 0.0;
    if !separated {
        return Err(Error::out_of_domain(
            "r12",
            geom.r12,
            f64::MIN_POSITIVE,
            f64::INFINITY,
        ));
    }
    let cos = geom.theta12.cos();
    Ok(geom.gamma / geom.r12.powi(3) * (1.0 - 3.0 * cos * cos))
}

/// Dimensionless parameter set for one experiment: inverse temperature β,
/// coupling D, preparation time τ, evolution-period constant Δ and
/// evolution time t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerParams {
    pub beta: f64,
    pub coupling_d: f64,
    pub tau: f64,
    pub delta: f64,
    pub t_evolution: f64,
}

impl DimerParams {
    pub fn new(beta: f64, coupling_d: f64, tau: f64, delta: f64, t_evolution: f64) -> Result<Self> {
        if beta.is_nan() || beta < 0.0 || !beta.is_finite() {
            return Err(Error::out_of_domain("beta", beta, 0.0, f64::MAX));
        }
        for (name, v) in [
            ("coupling_d", coupling_d),
            ("tau", tau),
            ("delta", delta),
            ("t_evolution", t_evolution),
        ] {
            if !v.is_finite() {
                return Err(Error::out_of_domain(name, v, f64::MIN, f64::MAX));
            }
        }
        Ok(Self {
            beta,
            coupling_d,
            tau,
            delta,
            t_evolution,
        })
    }

    /// Preparation-period phase D·τ.
    pub fn d_tau(&self) -> f64 {
        self.coupling_d * self.tau
    }

    /// ξ = |cos(D·τ)| ∈ [0, 1].
    pub fn xi(&self) -> f64 {
        self.d_tau().cos().abs()
    }
}

/// X-structured dimer state: four populations plus the single |00⟩⟨11|
/// coherence. All states reachable from thermal equilibrium under the
/// two-quantum Hamiltonian have this shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub r11: f64,
    pub r22: f64,
    pub r33: f64,
    pub r44: f64,
    pub r14: C64,
}

impl XState {
    pub fn new(r11: f64, r22: f64, r33: f64, r44: f64, r14: C64) -> Result<Self> {
        let s = Self {
            r11,
            r22,
            r33,
            r44,
            r14,
        };
        s.validate()?;
        Ok(s)
    }

    /// Unit trace to 1e−12 and positivity of the X block:
    /// |r14|² ≤ r11·r44 + 1e−12.
    pub fn validate(&self) -> Result<()> {
        let sum = self.r11 + self.r22 + self.r33 + self.r44;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "populations sum to {sum}, expected 1"
            )));
        }
        if self.r14.norm_sqr() > self.r11 * self.r44 + 1e-12 {
            return Err(Error::InvalidInput(format!(
                "|r14|² = {} exceeds r11·r44 = {}",
                self.r14.norm_sqr(),
                self.r11 * self.r44
            )));
        }
        Ok(())
    }

    pub fn to_density_matrix(&self) -> DensityMatrix4 {
        let mut m = Mat4::zeros();
        m[(0, 0)] = C64::new(self.r11, 0.0);
        m[(1, 1)] = C64::new(self.r22, 0.0);
        m[(2, 2)] = C64::new(self.r33, 0.0);
        m[(3, 3)] = C64::new(self.r44, 0.0);
        m[(0, 3)] = self.r14;
        m[(3, 0)] = self.r14.conj();
        DensityMatrix4::new(m)
    }
}

/// The two-quantum Hamiltonian (D/2)(I⁺₁I⁺₂ + I⁻₁I⁻₂) as a matrix: D/2 on
/// the |00⟩↔|11⟩ corner, zero elsewhere.
pub fn hamiltonian(coupling_d: f64) -> Mat4 {
    let mut h = Mat4::zeros();
    h[(0, 3)] = C64::new(0.5 * coupling_d, 0.0);
    h[(3, 0)] = C64::new(0.5 * coupling_d, 0.0);
    h
}

/// Thermal equilibrium state e^{βI_z}/Tr e^{βI_z} = diag(e^β, 1, 1, e^{−β})/Z.
///
/// Computed through x = e^{−β} so it stays exact for arbitrarily large β:
/// populations (1, x, x, x²)/(1+x)².
pub fn thermal_state(beta: f64) -> Result<XState> {
    if beta.is_nan() || beta < 0.0 || !beta.is_finite() {
        return Err(Error::out_of_domain("beta", beta, 0.0, f64::MAX));
    }
    let x = (-beta).exp();
    let z = (1.0 + x) * (1.0 + x);
    XState::new(1.0 / z, x / z, x / z, x * x / z, C64::new(0.0, 0.0))
}

/// Closed-form evolution of an X state over the preparation period:
/// the exact rotation of the {|00⟩,|11⟩} block by the angle D·τ.
///
/// For the thermal input this reproduces corner populations
/// (cosh β ± cos(Dτ) sinh β)/(2(1+cosh β)), central populations
/// 1/(2(1+cosh β)), and r14 = i·sin(Dτ)·sinh β/(2(1+cosh β)).
pub fn evolve(state0: &XState, params: &DimerParams) -> XState {
    let half = 0.5 * params.d_tau();
    let (c, s) = (half.cos(), half.sin());
    let (c2, s2, cs) = (c * c, s * s, c * s);
    let (re, im) = (state0.r14.re, state0.r14.im);
    XState {
        r11: c2 * state0.r11 + s2 * state0.r44 - 2.0 * cs * im,
        r22: state0.r22,
        r33: state0.r33,
        r44: s2 * state0.r11 + c2 * state0.r44 + 2.0 * cs * im,
        r14: C64::new(re, im * (c2 - s2) + cs * (state0.r11 - state0.r44)),
    }
}

/// The τ-evolved thermal state written directly in terms of (β, ξ) with the
/// canonical branch cos(Dτ) = +ξ, sin(Dτ) = +√(1−ξ²). All correlation
/// measures are invariant under the sign of cos(Dτ), so this representative
/// is sufficient for them. β = +∞ yields the pure-state limit.
pub fn evolved_state(beta: f64, xi: f64) -> Result<XState> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::out_of_domain("beta", beta, 0.0, f64::INFINITY));
    }
    check_range("xi", xi, 0.0, 1.0)?;
    let x = (-beta).exp();
    let z = (1.0 + x) * (1.0 + x);
    let half_sum = 0.5 * (1.0 + x * x) / z;
    let half_diff = 0.5 * (1.0 - x * x) / z;
    let sin = (1.0 - xi * xi).max(0.0).sqrt();
    XState::new(
        half_sum + half_diff * xi,
        x / z,
        x / z,
        half_sum - half_diff * xi,
        C64::new(0.0, half_diff * sin),
    )
}

/// Generic-propagator oracle: U = exp(−iHτ) computed by scaling-and-squaring
/// with no use of the Hamiltonian's block structure, then UρU†. Independent
/// check for [`evolve`].
pub fn evolve_unitary_oracle(rho: &DensityMatrix4, params: &DimerParams) -> DensityMatrix4 {
    let h = hamiltonian(params.coupling_d);
    let u = matrix_exp(&(h * C64::new(0.0, -params.tau)));
    DensityMatrix4::new(u * rho.matrix() * u.adjoint())
}

/// ρ^ht(τ) = e^{−iHτ} I_z e^{iHτ}, the evolved longitudinal-magnetization
/// operator entering the coherence intensities. Hermitian and traceless,
/// with spectrum {−1, 0, 0, +1} for every τ.
pub fn heat_operator(params: &DimerParams) -> DensityMatrix4 {
    let angle = params.d_tau();
    let (c, s) = (angle.cos(), angle.sin());
    let mut m = Mat4::zeros();
    m[(0, 0)] = C64::new(c, 0.0);
    m[(3, 3)] = C64::new(-c, 0.0);
    m[(0, 3)] = C64::new(0.0, s);
    m[(3, 0)] = C64::new(0.0, -s);
    DensityMatrix4::new(m)
}
