//! Multiple-quantum coherence structure of the dimer: decomposition of an
//! operator into coherence orders, the intensities G_k, the longitudinal
//! magnetization after the mixing period, and the inversion maps between
//! (β, ξ) and the measurable second-order intensity G.

use num_complex::Complex64 as C64;

use crate::discord::{check_beta, tanh_half};
use crate::error::{check_range, Error, Result};
use crate::matrix::{iz_phase_conjugate, DensityMatrix4, Mat4, IZ_DIAG};
use crate::state::{evolve, heat_operator, thermal_state, DimerParams};

/// Coherence orders the dimer actually populates.
pub const DIMER_ORDERS: [i32; 3] = [-2, 0, 2];

/// An operator split by coherence order k ∈ {−2, …, +2}: the k-part picks up
/// the phase e^{−ikΔt} under conjugation by e^{−iΔI_z t}. Dimer states only
/// populate k ∈ {−2, 0, +2}; the ±1 slots exist so arbitrary 4×4 operators
/// reassemble exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceParts {
    parts: [Mat4; 5],
}

impl CoherenceParts {
    /// The order-k part.
    pub fn part(&self, k: i32) -> Result<&Mat4> {
        if !(-2..=2).contains(&k) {
            return Err(Error::InvalidInput(format!(
                "coherence order k = {k} outside −2..=+2"
            )));
        }
        Ok(&self.parts[(k + 2) as usize])
    }

    /// Exact (bitwise) sum of all parts.
    pub fn reassemble(&self) -> Mat4 {
        let mut out = Mat4::zeros();
        for p in &self.parts {
            out += p;
        }
        out
    }
}

/// Splits a 4×4 operator by coherence order: element (i, j) belongs to
/// k = z_i − z_j where z = diag(I_z).
pub fn coherence_decompose(m: &DensityMatrix4) -> CoherenceParts {
    let mut parts = [Mat4::zeros(); 5];
    let src = m.matrix();
    for i in 0..4 {
        for j in 0..4 {
            let k = (IZ_DIAG[i] - IZ_DIAG[j]) as i32;
            parts[(k + 2) as usize][(i, j)] = src[(i, j)];
        }
    }
    CoherenceParts { parts }
}

/// G_k = Tr(ρ_k(τ) · ρ^ht_{−k}(τ)), the k-th order coherence intensity,
/// evaluated from the matrix decomposition. Only k ∈ {−2, 0, +2} occur for
/// the dimer.
pub fn intensity(k: i32, params: &DimerParams) -> Result<f64> {
    if !DIMER_ORDERS.contains(&k) {
        return Err(Error::InvalidInput(format!(
            "coherence order k = {k}; the dimer only generates k ∈ {{−2, 0, +2}}"
        )));
    }
    let rho = evolve(&thermal_state(params.beta)?, params).to_density_matrix();
    let rho_parts = coherence_decompose(&rho);
    let ht_parts = coherence_decompose(&heat_operator(params));
    let product = rho_parts.part(k)? * ht_parts.part(-k)?;
    let tr = product.trace();
    debug_assert!(tr.im.abs() < 1e-13);
    Ok(tr.re)
}

/// Closed form of the second-order intensity,
/// G ≡ G_{±2}(β, ξ) = ½ tanh(β/2)(1 − ξ²).
pub fn g2_closed(beta: f64, xi: f64) -> Result<f64> {
    check_beta(beta)?;
    check_range("xi", xi, 0.0, 1.0)?;
    Ok(0.5 * tanh_half(beta) * (1.0 - xi * xi))
}

/// Zeroth-order intensity G₀(β, ξ) = tanh(β/2)·ξ², fixed by the sum rule
/// Σ_k G_k = tanh(β/2).
pub fn g0_closed(beta: f64, xi: f64) -> Result<f64> {
    check_beta(beta)?;
    check_range("xi", xi, 0.0, 1.0)?;
    Ok(tanh_half(beta) * xi * xi)
}

/// ⟨I_z(τ, t)⟩ after the mixing period, trace form:
/// Tr(e^{−iΔI_z t} ρ(τ) e^{iΔI_z t} · ρ^ht(τ)).
pub fn magnetization(params: &DimerParams) -> Result<f64> {
    let rho = evolve(&thermal_state(params.beta)?, params).to_density_matrix();
    let rotated = iz_phase_conjugate(rho.matrix(), params.delta * params.t_evolution);
    let tr = (rotated * heat_operator(params).matrix()).trace();
    debug_assert!(tr.im.abs() < 1e-13);
    Ok(tr.re)
}

/// ⟨I_z(τ, t)⟩ as the coherence-order Fourier sum Σ_k e^{−ikΔt} G_k(τ).
pub fn magnetization_fourier(params: &DimerParams) -> Result<f64> {
    let mut total = C64::new(0.0, 0.0);
    for k in DIMER_ORDERS {
        let g = intensity(k, params)?;
        total += C64::from_polar(1.0, -(k as f64) * params.delta * params.t_evolution) * g;
    }
    debug_assert!(total.im.abs() < 1e-13);
    Ok(total.re)
}

/// Recovers ξ from a measured second-order intensity at fixed β:
/// ξ = √(1 − 2G/tanh(β/2)). Radicand roundoff in [−1e−12, 0) is clamped
/// to zero; anything lower is a domain error carrying the admissible range.
pub fn xi_from_g(beta: f64, g: f64) -> Result<f64> {
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::out_of_domain(
            "beta",
            beta,
            f64::MIN_POSITIVE,
            f64::INFINITY,
        ));
    }
    let t = tanh_half(beta);
    let g_max = 0.5 * t;
    if g.is_nan() || g < 0.0 {
        return Err(Error::out_of_domain("g", g, 0.0, g_max));
    }
    let radicand = 1.0 - 2.0 * g / t;
    if radicand < -1e-12 {
        return Err(Error::out_of_domain("g", g, 0.0, g_max));
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Recovers β from a measured second-order intensity at fixed ξ:
/// β = 2·atanh(2G/(1−ξ²)). Diverges at the pure-state bound
/// G = (1−ξ²)/2, so arguments within 1e−12 of 1 (or beyond) are domain
/// errors.
pub fn beta_from_g(g: f64, xi: f64) -> Result<f64> {
    check_range("xi", xi, 0.0, 1.0)?;
    let cap = 0.5 * (1.0 - xi * xi);
    if g.is_nan() || g < 0.0 {
        return Err(Error::out_of_domain("g", g, 0.0, cap));
    }
    if cap == 0.0 {
        return Err(Error::out_of_domain("g", g, 0.0, 0.0));
    }
    let arg = 2.0 * g / (1.0 - xi * xi);
    if arg >= 1.0 - 1e-12 {
        return Err(Error::out_of_domain("g", g, 0.0, cap));
    }
    Ok(2.0 * arg.atanh())
}

/// Intensities of the three dimer coherence orders plus the parameters they
/// were computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceSpectrum {
    pub g_minus2: f64,
    pub g_0: f64,
    pub g_plus2: f64,
    pub tau: f64,
    pub beta: f64,
}

impl CoherenceSpectrum {
    pub fn evaluate(params: &DimerParams) -> Result<Self> {
        let spectrum = Self {
            g_minus2: intensity(-2, params)?,
            g_0: intensity(0, params)?,
            g_plus2: intensity(2, params)?,
            tau: params.tau,
            beta: params.beta,
        };
        spectrum.validate()?;
        Ok(spectrum)
    }

    /// ±2 symmetry, sum rule Σ G_k = tanh(β/2), and |G_k| ≤ 1, all to 1e−12.
    pub fn validate(&self) -> Result<()> {
        if (self.g_plus2 - self.g_minus2).abs() > 1e-12 {
            return Err(Error::Numerical(format!(
                "G₊₂ = {} and G₋₂ = {} differ",
                self.g_plus2, self.g_minus2
            )));
        }
        let total = self.g_minus2 + self.g_0 + self.g_plus2;
        let expected = tanh_half(self.beta);
        if (total - expected).abs() > 1e-12 {
            return Err(Error::Numerical(format!(
                "sum rule violated: Σ G_k = {total}, tanh(β/2) = {expected}"
            )));
        }
        for g in [self.g_minus2, self.g_0, self.g_plus2] {
            if g.abs() > 1.0 {
                return Err(Error::Numerical(format!("|G_k| = {g} exceeds 1")));
            }
        }
        Ok(())
    }

    pub fn total(&self) -> f64 {
        self.g_minus2 + self.g_0 + self.g_plus2
    }
}
