//! Correlation measures of the evolved dimer state: reduced entropies,
//! mutual information, the measured conditional-entropy family Ω(η, β, ξ),
//! classical correlations and quantum discord: closed forms plus a
//! projective-measurement minimization oracle that shares no code with them.
//!
//! Everything is expressed through w = tanh(β/2) and x = e^{−β}, which keeps
//! the formulas finite for every β ≥ 0 including the pure-state limit
//! β = +∞ (x = 0, w = 1).

use num_complex::Complex64 as C64;

use crate::error::{check_range, Error, Result};
use crate::matrix::{hermitian_eigenvalues4, partial_trace_a, von_neumann_entropy2, Mat4};
use crate::numeric::{binary_entropy, entropy_from_bloch, golden_min, xlog2};
use crate::state::{evolved_state, XState};

const LN_2: f64 = std::f64::consts::LN_2;

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::out_of_domain("beta", beta, 0.0, f64::INFINITY));
    }
    Ok(())
}

/// tanh(β/2) through x = e^{−β}; exact at β = +∞.
pub(crate) fn tanh_half(beta: f64) -> f64 {
    let x = (-beta).exp();
    (1.0 - x) / (1.0 + x)
}

/// 1 − tanh(β/2) = 2x/(1+x), free of cancellation at large β.
pub(crate) fn one_minus_tanh_half(beta: f64) -> f64 {
    let x = (-beta).exp();
    2.0 * x / (1.0 + x)
}

/// Eigenvalues of the evolved density matrix. They do not depend on ξ
/// (the evolution is unitary): (e^β, e^{−β}, 1, 1)/(2(1+cosh β)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum4 {
    pub lambda0: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
}

impl Spectrum4 {
    pub fn as_array(&self) -> [f64; 4] {
        [self.lambda0, self.lambda1, self.lambda2, self.lambda3]
    }

    /// Σ λᵢ log₂ λᵢ with the 0·log 0 convention.
    pub fn sum_lambda_log(&self) -> f64 {
        self.as_array().iter().map(|&l| xlog2(l)).sum()
    }
}

/// Closed-form spectrum of the evolved state.
pub fn spectrum(beta: f64) -> Result<Spectrum4> {
    check_beta(beta)?;
    let x = (-beta).exp();
    let z = (1.0 + x) * (1.0 + x);
    Ok(Spectrum4 {
        lambda0: 1.0 / z,
        lambda1: x * x / z,
        lambda2: x / z,
        lambda3: x / z,
    })
}

/// Reduced entropy S(ρ^A) = S(ρ^B) in bits: the binary entropy of the
/// reduced populations (1 ± ξ·tanh(β/2))/2.
pub fn reduced_entropy(beta: f64, xi: f64) -> Result<f64> {
    check_beta(beta)?;
    check_range("xi", xi, 0.0, 1.0)?;
    let theta = xi * tanh_half(beta);
    let one_minus = (1.0 - xi) + xi * one_minus_tanh_half(beta);
    Ok(entropy_from_bloch(theta, one_minus))
}

/// Conditional-entropy branch Ω(0, β, ξ) = log₂(1+e^β) − βe^β/(ln2·(1+e^β)),
/// independent of ξ. Rearranged through x = e^{−β} so it stays finite for
/// all β: (β·x/(1+x) + ln(1+x))/ln 2.
pub fn omega0_closed(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let x = (-beta).exp();
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok((beta * x / (1.0 + x) + x.ln_1p()) / LN_2)
}

/// Conditional-entropy branch Ω(1, β, ξ).
///
/// The differences of hyperbolic squares cancel catastrophically at ξ → 1,
/// so they are expanded via cosh² − sinh² = 1 before evaluation:
/// (1+C)² − ξ²S² = 2 + 2C + (1−ξ²)S², C² − ξ²S² = 1 + (1−ξ²)S²,
/// C − ξS = e^{−β} + (1−ξ)S.
pub fn omega1_closed(beta: f64, xi: f64) -> Result<f64> {
    check_beta(beta)?;
    check_range("xi", xi, 0.0, 1.0)?;
    if beta > 250.0 {
        // Ω(1) = O(β e^{−β}) here, far below every tolerance in play.
        return Ok(0.0);
    }
    let c = beta.cosh();
    let s = beta.sinh();
    let emb = (-beta).exp();
    let sin2 = 1.0 - xi * xi;
    let a1 = 2.0 + 2.0 * c + sin2 * s * s;
    let a2 = 1.0 + sin2 * s * s;
    let num = (1.0 + emb + (1.0 - xi) * s) * (c + xi * s);
    let den = (1.0 + c + xi * s) * (emb + (1.0 - xi) * s);
    Ok(0.5 * a1.log2()
        - c / (2.0 * (1.0 + c)) * a2.log2()
        - xi * s / (2.0 * (c + 1.0)) * (num / den).log2())
}

/// Measured conditional entropy Ω(η, β, ξ) = p₀S₀ + p₁S₁ for a projective
/// measurement on spin B whose axis has polar cosine η. η ∈ {0, 1} are the
/// closed branches; the full interval is accepted so the minimum can be
/// probed over the whole family.
pub fn omega(eta: f64, beta: f64, xi: f64) -> Result<f64> {
    check_range("eta", eta, 0.0, 1.0)?;
    check_beta(beta)?;
    check_range("xi", xi, 0.0, 1.0)?;
    let state = evolved_state(beta, xi)?;
    Ok(omega_of_state(&state, eta))
}

/// Ω(η) evaluated from the matrix elements of an arbitrary X state.
pub fn omega_of_state(state: &XState, eta: f64) -> f64 {
    let z_b = 2.0 * (state.r11 + state.r33) - 1.0;
    let z_mix = 2.0 * (state.r11 + state.r22) - 1.0;
    let z_gap = 1.0 - 2.0 * (state.r22 + state.r33);
    let coh2 = state.r14.norm_sqr();
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        let p = 0.5 * (1.0 + sign * eta * z_b);
        if p <= 0.0 {
            continue;
        }
        let rad = (1.0 - eta * eta) * coh2 + 0.25 * (z_mix + sign * eta * z_gap).powi(2);
        let theta = (rad.max(0.0).sqrt() / p).min(1.0);
        total += p * binary_entropy(0.5 * (1.0 + theta));
    }
    total
}

/// Total mutual information I(ρ) = S(ρ^A) + S(ρ^B) + Σ λⱼ log₂ λⱼ in bits.
pub fn mutual_information(beta: f64, xi: f64) -> Result<f64> {
    check_beta(beta)?;
    check_range("xi", xi, 0.0, 1.0)?;
    if beta == 0.0 || xi == 1.0 {
        // maximally mixed state / classical line: zero by the identity
        // S(ρ^A)|_{ξ=1} = Ω(0)
        return Ok(0.0);
    }
    let s_a = reduced_entropy(beta, xi)?;
    Ok(2.0 * s_a + spectrum(beta)?.sum_lambda_log())
}

/// Classical correlations C(ρ) = S(ρ^A) − min(Ω(0), Ω(1)). The minimum is
/// provably Ω(0); that is asserted at runtime rather than assumed.
pub fn classical_correlations(beta: f64, xi: f64) -> Result<f64> {
    check_beta(beta)?;
    check_range("xi", xi, 0.0, 1.0)?;
    if beta == 0.0 {
        return Ok(0.0);
    }
    let s_a = reduced_entropy(beta, xi)?;
    let om0 = omega(0.0, beta, xi)?;
    let om1 = omega(1.0, beta, xi)?;
    assert!(
        om0 <= om1 + 1e-12,
        "conditional-entropy minimum left the η = 0 branch: Ω(0) = {om0}, Ω(1) = {om1}"
    );
    if xi == 1.0 {
        // classical line: S(ρ^A) = Ω(0) analytically
        return Ok(0.0);
    }
    Ok(s_a - om0)
}

/// Quantum discord Q(β, ξ) = S(ρ^A) − Ω(0, β, ξ) in bits.
pub fn discord_closed(beta: f64, xi: f64) -> Result<f64> {
    check_beta(beta)?;
    check_range("xi", xi, 0.0, 1.0)?;
    if beta == 0.0 || xi == 1.0 {
        return Ok(0.0);
    }
    Ok(reduced_entropy(beta, xi)? - omega0_closed(beta)?)
}

/// Closed-form dΩ(1, β, ξ)/dξ; non-positive on the whole domain.
pub fn appendix_derivative(beta: f64, xi: f64) -> Result<f64> {
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::out_of_domain(
            "beta",
            beta,
            f64::MIN_POSITIVE,
            f64::INFINITY,
        ));
    }
    check_range("xi", xi, 0.0, 1.0)?;
    Ok(0.5 * tanh_half(beta) * appendix_log_ratio(beta, xi).log2())
}

/// The argument of the logarithm in the closed-form derivative; lies in
/// (0, 1] on the whole domain. Scaled by (1+cosh β)cosh β so it stays
/// finite for every β.
pub fn appendix_log_ratio(beta: f64, xi: f64) -> f64 {
    let x = (-beta).exp();
    let sech = 2.0 * x / (1.0 + x * x);
    let base = 1.0 - xi * xi * (1.0 - sech);
    let shift = xi * tanh_half(beta) * sech;
    (base - shift) / (base + shift)
}

/// Bloch angles of a projective-measurement axis on spin B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    /// Polar angle, [0, π].
    pub theta_b: f64,
    /// Azimuth, [0, 2π).
    pub phi_b: f64,
}

/// Report of the correlation measures at one (β, ξ) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub beta: f64,
    pub xi: f64,
    pub discord: f64,
    pub classical_correlations: f64,
    pub mutual_information: f64,
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub spectrum: Spectrum4,
    pub omega0: f64,
    pub omega1: f64,
}

impl CorrelationReport {
    /// Evaluates every measure by its own formula path and cross-checks the
    /// defining decomposition Q = I − C to 1e−12.
    pub fn evaluate(beta: f64, xi: f64) -> Result<Self> {
        let discord = discord_closed(beta, xi)?;
        let classical = classical_correlations(beta, xi)?;
        let mutual = mutual_information(beta, xi)?;
        let s_a = reduced_entropy(beta, xi)?;
        let report = Self {
            beta,
            xi,
            discord,
            classical_correlations: classical,
            mutual_information: mutual,
            entropy_a: s_a,
            entropy_b: s_a,
            spectrum: spectrum(beta)?,
            omega0: omega0_closed(beta)?,
            omega1: omega1_closed(beta, xi)?,
        };
        assert!(
            (report.discord - (report.mutual_information - report.classical_correlations)).abs()
                <= 1e-12,
            "Q = I − C violated: Q = {}, I = {}, C = {}",
            report.discord,
            report.mutual_information,
            report.classical_correlations
        );
        Ok(report)
    }
}

// ---------------------------------------------------------------------------
// Measurement-minimization oracle. Works on the raw 4×4 matrix; nothing
// below this line touches the closed forms above.
// ---------------------------------------------------------------------------

/// Conditional entropy of spin A after projecting spin B along the given
/// axis, Σᵢ pᵢ S(ρ_A|i), in bits.
pub fn measured_conditional_entropy(state: &XState, basis: &MeasurementBasis) -> f64 {
    conditional_entropy_raw(state.to_density_matrix().matrix(), basis.theta_b, basis.phi_b)
}

fn conditional_entropy_raw(m: &Mat4, theta: f64, phi: f64) -> f64 {
    let ct = (0.5 * theta).cos();
    let st = (0.5 * theta).sin();
    let phase = C64::from_polar(1.0, phi);
    // Π = |b⟩⟨b| for the axis (θ, φ)
    let proj = [
        [C64::new(ct * ct, 0.0), phase.conj() * (ct * st)],
        [phase * (ct * st), C64::new(st * st, 0.0)],
    ];

    // unnormalized post-measurement reduced state of A for outcome 0,
    // t0[a][a'] = Σ_{c,c'} ρ[(a,c),(a',c')]·Π[c'][c], and the unconditional
    // reduced state for outcome 1 by complement
    let mut t0 = [[C64::new(0.0, 0.0); 2]; 2];
    let mut ra = [[C64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for ap in 0..2 {
            for c in 0..2 {
                for cp in 0..2 {
                    let v = m[(2 * a + c, 2 * ap + cp)];
                    t0[a][ap] += v * proj[cp][c];
                    if c == cp {
                        ra[a][ap] += v;
                    }
                }
            }
        }
    }
    let t1 = [
        [ra[0][0] - t0[0][0], ra[0][1] - t0[0][1]],
        [ra[1][0] - t0[1][0], ra[1][1] - t0[1][1]],
    ];

    let branch = |t: &[[C64; 2]; 2]| -> f64 {
        let p = (t[0][0] + t[1][1]).re;
        if p <= 1e-14 {
            return 0.0;
        }
        let a = t[0][0].re / p;
        let d = t[1][1].re / p;
        let off = t[0][1].norm_sqr() / (p * p);
        let mean = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + off).sqrt();
        p * (-xlog2((mean - r).max(0.0)) - xlog2((mean + r).max(0.0)))
    };
    branch(&t0) + branch(&t1)
}

/// Minimum of the measured conditional entropy over every projective axis:
/// a coarse `grid`×`grid` scan of (θ, φ) followed by golden-section
/// refinement of each coordinate to 1e−10 in angle. Deterministic.
pub fn min_conditional_entropy(state: &XState, grid: usize) -> (f64, MeasurementBasis) {
    let m = *state.to_density_matrix().matrix();
    let n = grid.max(8);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    let dtheta = std::f64::consts::PI / n as f64;
    let dphi = 2.0 * std::f64::consts::PI / n as f64;
    for i in 0..=n {
        let theta = i as f64 * dtheta;
        for j in 0..n {
            let phi = j as f64 * dphi;
            let v = conditional_entropy_raw(&m, theta, phi);
            if v < best.0 {
                best = (v, theta, phi);
            }
        }
    }

    let (_, mut theta, mut phi) = best;
    for _ in 0..3 {
        theta = golden_min(
            |t| conditional_entropy_raw(&m, t, phi),
            (theta - dtheta).max(0.0),
            (theta + dtheta).min(std::f64::consts::PI),
            1e-10,
        );
        phi = golden_min(
            |p| conditional_entropy_raw(&m, theta, p),
            phi - dphi,
            phi + dphi,
            1e-10,
        );
    }
    (
        conditional_entropy_raw(&m, theta, phi),
        MeasurementBasis {
            theta_b: theta,
            phi_b: phi.rem_euclid(2.0 * std::f64::consts::PI),
        },
    )
}

/// Discord by direct minimization over projective measurements on B:
/// Q = I − C with I = S_A + S_B − S_AB from numerically diagonalized
/// matrices and C = S_A − min Ω̃. Independent of every closed form.
pub fn discord_measurement_oracle(state: &XState, grid: usize) -> f64 {
    let m = *state.to_density_matrix().matrix();
    let s_b = von_neumann_entropy2(&partial_trace_a(&m));
    let s_ab = crate::matrix::entropy_bits(&hermitian_eigenvalues4(&m));
    let (min_cond, _) = min_conditional_entropy(state, grid);
    // I − (S_A − min Ω̃) = S_B − S_AB + min Ω̃
    s_b - s_ab + min_cond
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{partial_trace_b, von_neumann_entropy4};
    use crate::numeric::linspace;
    use crate::state::thermal_state;
    use approx::assert_relative_eq;

    #[test]
    fn spectrum_limits() {
        let s = spectrum(0.0).unwrap();
        for l in s.as_array() {
            assert_relative_eq!(l, 0.25, epsilon = 1e-15);
        }
        let s = spectrum(50.0).unwrap();
        assert_relative_eq!(s.lambda0, 1.0, epsilon = 1e-12);
        assert!(s.lambda1 < 1e-12 && s.lambda2 < 1e-12);
        assert_eq!(s.lambda2, s.lambda3);
    }

    #[test]
    fn spectrum_matches_dense_eigensolver() {
        for xi_angle in [0.0, 0.7, 1.9] {
            let p = crate::state::DimerParams::new(2.0, 1.0, xi_angle, 1.0, 0.0).unwrap();
            let rho = crate::state::evolve(&thermal_state(2.0).unwrap(), &p).to_density_matrix();
            let mut num = rho.eigenvalues();
            num.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let s = spectrum(2.0).unwrap();
            let mut closed = s.as_array();
            closed.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (n, c) in num.iter().zip(closed.iter()) {
                assert_relative_eq!(n, c, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn reduced_entropy_limits() {
        assert_relative_eq!(reduced_entropy(0.0, 0.3).unwrap(), 1.0, epsilon = 1e-15);
        for beta in [0.5, 2.0, 7.0] {
            assert_relative_eq!(reduced_entropy(beta, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn reduced_entropy_matches_partial_trace_oracle() {
        for (beta, xi) in [(2.0, 1.0), (1.3, 0.4), (0.7, 0.9), (5.0, 0.2)] {
            let m = evolved_state(beta, xi).unwrap().to_density_matrix();
            let oracle_a = von_neumann_entropy2(&partial_trace_b(m.matrix()));
            let oracle_b = von_neumann_entropy2(&partial_trace_a(m.matrix()));
            let closed = reduced_entropy(beta, xi).unwrap();
            assert_relative_eq!(closed, oracle_a, epsilon = 1e-12);
            assert_relative_eq!(closed, oracle_b, epsilon = 1e-12);
        }
        // β = 2, ξ = 1: binary entropy of e²/(1+e²)
        let p = 2f64.exp() / (1.0 + 2f64.exp());
        assert_relative_eq!(
            reduced_entropy(2.0, 1.0).unwrap(),
            binary_entropy(p),
            epsilon = 1e-12
        );
    }

    #[test]
    fn mutual_information_limits_and_oracle() {
        assert_eq!(mutual_information(0.0, 0.3).unwrap(), 0.0);
        // eigenvalue identity Σ λ log λ = −2 Ω(0)
        for beta in [0.5, 1.0, 2.0, 5.0] {
            let s = spectrum(beta).unwrap();
            assert!(
                (s.sum_lambda_log() + 2.0 * omega0_closed(beta).unwrap()).abs() <= 1e-12,
                "identity failed at β = {beta}"
            );
        }
        // β = 2, ξ = 0 against the full 4×4 entropy oracle
        let (beta, xi) = (2.0, 0.0);
        let m = evolved_state(beta, xi).unwrap().to_density_matrix();
        let s_a = von_neumann_entropy2(&partial_trace_b(m.matrix()));
        let s_b = von_neumann_entropy2(&partial_trace_a(m.matrix()));
        let s_ab = von_neumann_entropy4(m.matrix());
        assert_relative_eq!(
            mutual_information(beta, xi).unwrap(),
            s_a + s_b - s_ab,
            epsilon = 1e-12
        );
    }

    #[test]
    fn omega0_closed_matches_textbook_form() {
        // log₂(1+e^β) − βe^β/(ln2(1+e^β)) at β = 1
        let beta: f64 = 1.0;
        let raw = (1.0 + beta.exp()).log2() - beta * beta.exp() / (LN_2 * (1.0 + beta.exp()));
        assert_relative_eq!(omega0_closed(beta).unwrap(), raw, epsilon = 1e-14);
    }

    #[test]
    fn omega_branches_match_closed_forms() {
        for beta in [0.3, 1.0, 2.5, 5.0] {
            for xi in linspace(0.0, 1.0, 9) {
                let family0 = omega(0.0, beta, xi).unwrap();
                let family1 = omega(1.0, beta, xi).unwrap();
                assert!(
                    (family0 - omega0_closed(beta).unwrap()).abs() <= 1e-12,
                    "Ω(0) mismatch at β={beta}, ξ={xi}"
                );
                assert!(
                    (family1 - omega1_closed(beta, xi).unwrap()).abs() <= 1e-12,
                    "Ω(1) mismatch at β={beta}, ξ={xi}"
                );
            }
        }
    }

    #[test]
    fn omega_endpoint_identity() {
        for beta in [0.5, 2.0, 5.0] {
            let a = omega1_closed(beta, 1.0).unwrap();
            let b = omega0_closed(beta).unwrap();
            assert!((a - b).abs() <= 1e-12, "Ω(1,β,1) ≠ Ω(0,β,1) at β = {beta}");
        }
    }

    #[test]
    fn omega_maximally_mixed_is_one_bit() {
        for eta in [0.0, 0.3, 0.7, 1.0] {
            assert_relative_eq!(omega(eta, 0.0, 0.6).unwrap(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn omega_rejects_eta_outside_unit_interval() {
        assert!(omega(-0.1, 1.0, 0.5).is_err());
        assert!(omega(1.1, 1.0, 0.5).is_err());
    }

    #[test]
    fn classical_correlations_limits() {
        for beta in [0.4, 1.0, 3.0] {
            assert!(classical_correlations(beta, 1.0).unwrap().abs() <= 1e-12);
        }
        assert_eq!(classical_correlations(0.0, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn discord_figure_values() {
        // ξ = 0 caption anchors: Q at the maximal-intensity endpoint
        assert!((discord_closed(5.0, 0.0).unwrap() - 0.942).abs() <= 2e-3);
        assert!((discord_closed(2.0, 0.0).unwrap() - 0.473).abs() <= 2e-3);
        assert!((discord_closed(1.0, 0.0).unwrap() - 0.160).abs() <= 2e-3);
        // classical correlations reproduce Q = I − C at the β = 2 endpoint
        let q = discord_closed(2.0, 0.0).unwrap();
        let i = mutual_information(2.0, 0.0).unwrap();
        let c = classical_correlations(2.0, 0.0).unwrap();
        assert!((q - (i - c)).abs() <= 1e-12);
    }

    #[test]
    fn discord_vanishes_on_classical_states() {
        for beta in [0.2, 1.0, 4.0, 20.0, 50.0] {
            assert_eq!(discord_closed(beta, 1.0).unwrap(), 0.0);
            // the identity behind the shortcut: S(ρ^A)|_{ξ=1} = Ω(0)
            let raw = reduced_entropy(beta, 1.0).unwrap() - omega0_closed(beta).unwrap();
            assert!(raw.abs() <= 1e-12, "identity residual {raw} at β = {beta}");
        }
    }

    #[test]
    fn discord_at_pure_state_boundary() {
        // (G, ξ) = (0.25, √2/2) lies at the pure-state bound: β = ∞ and
        // Q = h((1+ξ)/2) = 0.601
        let xi = std::f64::consts::FRAC_1_SQRT_2;
        let q = discord_closed(f64::INFINITY, xi).unwrap();
        assert!((q - 0.601).abs() <= 2e-3);
        assert!((discord_closed(f64::INFINITY, 0.0).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn discord_decomposition_holds_on_grid() {
        for beta in linspace(0.0, 5.0, 11) {
            for xi in linspace(0.0, 1.0, 11) {
                let q = discord_closed(beta, xi).unwrap();
                let i = mutual_information(beta, xi).unwrap();
                let c = classical_correlations(beta, xi).unwrap();
                assert!((q - (i - c)).abs() <= 1e-12);
                assert!((-1e-10..=1.0 + 1e-12).contains(&q));
            }
        }
    }

    #[test]
    fn appendix_derivative_closed_vs_finite_difference() {
        let h = 1e-6;
        for (beta, xi) in [(2.0, 0.5), (0.7, 0.3), (4.0, 0.8)] {
            let closed = appendix_derivative(beta, xi).unwrap();
            let fd = (omega1_closed(beta, xi + h).unwrap() - omega1_closed(beta, xi - h).unwrap())
                / (2.0 * h);
            assert!(closed <= 0.0, "derivative positive at β={beta}, ξ={xi}");
            assert!(
                (closed - fd).abs() <= 1e-6,
                "closed {closed} vs fd {fd} at β={beta}, ξ={xi}"
            );
        }
    }

    #[test]
    fn appendix_derivative_zero_at_symmetric_point() {
        for beta in [0.5, 2.0, 5.0] {
            assert_eq!(appendix_derivative(beta, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn appendix_log_ratio_in_unit_interval() {
        for beta in linspace(0.05, 5.0, 100) {
            for xi in linspace(0.0, 1.0, 100) {
                let r = appendix_log_ratio(beta, xi);
                assert!(
                    r > 0.0 && r <= 1.0,
                    "ratio {r} escaped (0,1] at β={beta}, ξ={xi}"
                );
            }
        }
    }

    #[test]
    fn oracle_zero_for_product_state() {
        // diag(p ⊗ q): an X state with no coherence
        let s = XState::new(0.42, 0.28, 0.18, 0.12, C64::new(0.0, 0.0)).unwrap();
        assert!(discord_measurement_oracle(&s, 64).abs() <= 1e-9);
    }

    #[test]
    fn oracle_matches_closed_form_spot_checks() {
        for (beta, xi) in [(1.0, 0.3), (2.0, 0.0), (4.0, 0.8), (0.5, 0.6)] {
            let s = evolved_state(beta, xi).unwrap();
            let oracle = discord_measurement_oracle(&s, 64);
            let closed = discord_closed(beta, xi).unwrap();
            assert!(
                (oracle - closed).abs() <= 1e-8,
                "oracle {oracle} vs closed {closed} at β={beta}, ξ={xi}"
            );
        }
    }

    #[test]
    fn oracle_minimizer_is_equatorial() {
        for (beta, xi) in [(1.0, 0.3), (3.0, 0.7), (0.8, 0.0)] {
            let s = evolved_state(beta, xi).unwrap();
            let (_, basis) = min_conditional_entropy(&s, 64);
            assert!(
                (basis.theta_b - std::f64::consts::FRAC_PI_2).abs() <= 1e-4,
                "minimizing axis not equatorial at β={beta}, ξ={xi}: θ = {}",
                basis.theta_b
            );
        }
    }

    #[test]
    fn measured_entropy_matches_omega_family() {
        // Ω(η) with η = cos θ_b equals the measured conditional entropy for
        // every azimuth: the coherence enters only through |r14|.
        for (beta, xi) in [(1.5, 0.4), (3.0, 0.9)] {
            let s = evolved_state(beta, xi).unwrap();
            for theta_b in [0.0, 0.7, std::f64::consts::FRAC_PI_2, 2.0] {
                for phi_b in [0.0, 1.1, 4.4] {
                    let measured =
                        measured_conditional_entropy(&s, &MeasurementBasis { theta_b, phi_b });
                    let eta = theta_b.cos().abs();
                    let family = omega(eta, beta, xi).unwrap();
                    assert!(
                        (measured - family).abs() <= 1e-10,
                        "θ={theta_b}, φ={phi_b}: measured {measured} vs Ω {family}"
                    );
                }
            }
        }
    }

    #[test]
    fn report_fields_are_consistent() {
        let r = CorrelationReport::evaluate(2.0, 0.5).unwrap();
        assert!((r.discord - (r.mutual_information - r.classical_correlations)).abs() <= 1e-12);
        assert_eq!(r.entropy_a, r.entropy_b);
        assert!(r.omega0 <= r.omega1 + 1e-12);
        let sum: f64 = r.spectrum.as_array().iter().sum();
        assert!((sum - 1.0).abs() <= 1e-12);
    }
}
