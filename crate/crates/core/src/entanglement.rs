//! Concurrence of the evolved dimer state in its three parameterizations,
//! a spin-flip numerical oracle, and the threshold solvers that delimit the
//! entangled region (including the two quartic equations).

use crate::discord::{check_beta, tanh_half};
use crate::error::{check_range, Error, Result};
use crate::matrix::{hermitian_eigenvalues4, matrix_sqrt_psd, sigma_yy, DensityMatrix4};
use crate::numeric::bisect_unique_root;

/// Pre-clamp concurrence in the (β, ξ) parameterization,
/// (√(1−ξ²)·sinh β − 1)/(2cosh²(β/2)) = √(1−ξ²)·w − (1−w²)/2 with
/// w = tanh(β/2). Crosses zero where entanglement appears.
pub fn concurrence_beta_xi_raw(beta: f64, xi: f64) -> Result<f64> {
    check_beta(beta)?;
    check_range("xi", xi, 0.0, 1.0)?;
    let w = tanh_half(beta);
    Ok((1.0 - xi * xi).max(0.0).sqrt() * w - 0.5 * (1.0 - w * w))
}

/// Concurrence C(β, ξ) = max(0, ·) of the pre-clamp expression.
pub fn concurrence_beta_xi(beta: f64, xi: f64) -> Result<f64> {
    Ok(concurrence_beta_xi_raw(beta, xi)?.max(0.0))
}

/// Pre-clamp concurrence in the (β, G) parameterization,
/// √(2G·tanh(β/2)) − 1/(2cosh²(β/2)).
pub fn concurrence_beta_g_raw(beta: f64, g: f64) -> Result<f64> {
    check_beta(beta)?;
    let w = tanh_half(beta);
    let g_max = 0.5 * w;
    if g.is_nan() || g < 0.0 || g > g_max + 1e-12 {
        return Err(Error::out_of_domain("g", g, 0.0, g_max));
    }
    Ok((2.0 * g * w).sqrt() - 0.5 * (1.0 - w * w))
}

/// Concurrence C(β, G) = max(0, ·).
pub fn concurrence_beta_g(beta: f64, g: f64) -> Result<f64> {
    Ok(concurrence_beta_g_raw(beta, g)?.max(0.0))
}

/// Pre-clamp concurrence in the (G, ξ) parameterization,
/// 2G/√(1−ξ²) + 2G²/(1−ξ²)² − ½. Defined up to and including the
/// pure-state bound G = (1−ξ²)/2 (the β → ∞ limit).
pub fn concurrence_g_xi_raw(g: f64, xi: f64) -> Result<f64> {
    check_range("xi", xi, 0.0, 1.0)?;
    let u = 1.0 - xi * xi;
    let cap = 0.5 * u;
    if g.is_nan() || g < 0.0 || g > cap + 1e-12 {
        return Err(Error::out_of_domain("g", g, 0.0, cap));
    }
    if u == 0.0 {
        // ξ = 1 admits only g = 0, where the expression is −½
        return Ok(-0.5);
    }
    Ok(2.0 * g / u.sqrt() + 2.0 * g * g / (u * u) - 0.5)
}

/// Concurrence C(G, ξ) = max(0, ·).
pub fn concurrence_g_xi(g: f64, xi: f64) -> Result<f64> {
    Ok(concurrence_g_xi_raw(g, xi)?.max(0.0))
}

/// Spin-flip (Wootters) concurrence of an arbitrary two-qubit density
/// matrix: the eigenvalues of ρ·(σ_y⊗σ_y)ρ*(σ_y⊗σ_y) are obtained through
/// the Hermitian equivalent √ρ·ρ̃·√ρ, their square roots sorted descending,
/// and C = max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄).
pub fn concurrence_oracle(state: &DensityMatrix4) -> f64 {
    let rho = state.matrix();
    let yy = sigma_yy();
    let rho_tilde = yy * rho.conjugate() * yy;
    let sqrt_rho = matrix_sqrt_psd(rho);
    let m = sqrt_rho * rho_tilde * sqrt_rho;
    let mut roots = hermitian_eigenvalues4(&m).map(|l| l.max(0.0).sqrt());
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    (roots[0] - roots[1] - roots[2] - roots[3]).max(0.0)
}

/// Largest intensity reachable at fixed β: G⁽¹⁾_max(β) = ½ tanh(β/2).
pub fn g1_max(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(0.5 * tanh_half(beta))
}

/// Intensity where entanglement appears at fixed β:
/// G⁽¹⁾_min(β) = 1/(4 sinh β cosh²(β/2)). Infinite below the sinh β = 1
/// temperature, where no intensity entangles the pair.
pub fn g1_min(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(1.0 / (4.0 * beta.sinh() * (0.5 * beta).cosh().powi(2)))
}

/// Smallest inverse temperature compatible with intensity G:
/// β⁽¹⁾_min(G) = 2·atanh(2G).
pub fn beta1_min(g: f64) -> Result<f64> {
    check_g_slice(g)?;
    Ok(2.0 * (2.0 * g).atanh())
}

/// Inverse temperature where entanglement appears at fixed G:
/// β⁽²⁾_min(G) = 2·atanh(X²) with X the unique positive root of
/// X⁴/2 + √(2G)·X − ½ = 0.
pub fn beta2_min(g: f64) -> Result<f64> {
    check_g_slice(g)?;
    let sqrt_2g = (2.0 * g).sqrt();
    let x = bisect_unique_root(
        |x| 0.5 * x.powi(4) + sqrt_2g * x - 0.5,
        0.0,
        1.0,
        1000,
        1e-12,
    )?;
    Ok(2.0 * (x * x).atanh())
}

/// Largest intensity reachable at fixed ξ: G⁽²⁾_max(ξ) = (1−ξ²)/2
/// (the pure-state bound, approached as β → ∞).
pub fn g2_max(xi: f64) -> Result<f64> {
    check_range("xi", xi, 0.0, 1.0)?;
    Ok(0.5 * (1.0 - xi * xi))
}

/// Intensity where entanglement appears at fixed ξ:
/// G⁽²⁾_min(ξ) = ½((1−ξ²)√(2−ξ²) − (1−ξ²)^{3/2}).
pub fn g2_min(xi: f64) -> Result<f64> {
    check_range("xi", xi, 0.0, 1.0)?;
    let u = 1.0 - xi * xi;
    Ok(0.5 * (u * (2.0 - xi * xi).sqrt() - u.powf(1.5)))
}

/// Largest ξ compatible with intensity G: ξ⁽²⁾_max(G) = √(1−2G).
pub fn xi2_max(g: f64) -> Result<f64> {
    check_g_slice(g)?;
    Ok((1.0 - 2.0 * g).sqrt())
}

/// ξ below which entanglement appears at fixed G: ξ⁽²⁾_min(G) = √(1−X²)
/// with X the unique positive root of X⁴/2 − 2G·X³ − 2G² = 0. For
/// G ≥ (√2−1)/2 the root exceeds 1 (the pair is entangled all the way to
/// ξ = 0) and 0 is returned.
pub fn xi2_min(g: f64) -> Result<f64> {
    check_g_slice(g)?;
    let f = |x: f64| 0.5 * x.powi(4) - 2.0 * g * x.powi(3) - 2.0 * g * g;
    if f(1.0) <= 0.0 {
        return Ok(0.0);
    }
    let x = bisect_unique_root(f, 0.0, 1.0, 1000, 1e-12)?;
    Ok((1.0 - x * x).max(0.0).sqrt())
}

fn check_g_slice(g: f64) -> Result<()> {
    if g.is_nan() || g <= 0.0 || g >= 0.5 {
        return Err(Error::out_of_domain("g", g, f64::MIN_POSITIVE, 0.5));
    }
    Ok(())
}

/// One-parameter slice through the (β, ξ, G) space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slice {
    Beta(f64),
    G(f64),
    Xi(f64),
}

/// Bounds delimiting the admissible and the entangled region along a slice.
/// Fields not applicable to the slice are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThresholdReport {
    pub g1_max: Option<f64>,
    pub g1_min: Option<f64>,
    pub beta1_min: Option<f64>,
    pub beta2_min: Option<f64>,
    pub g2_max: Option<f64>,
    pub g2_min: Option<f64>,
    pub xi2_max: Option<f64>,
    pub xi2_min: Option<f64>,
}

/// Evaluates every bound defined on the given slice.
pub fn thresholds(slice: Slice) -> Result<ThresholdReport> {
    let mut report = ThresholdReport::default();
    match slice {
        Slice::Beta(beta) => {
            report.g1_max = Some(g1_max(beta)?);
            report.g1_min = Some(g1_min(beta)?);
        }
        Slice::G(g) => {
            report.beta1_min = Some(beta1_min(g)?);
            report.beta2_min = Some(beta2_min(g)?);
            report.xi2_max = Some(xi2_max(g)?);
            report.xi2_min = Some(xi2_min(g)?);
        }
        Slice::Xi(xi) => {
            report.g2_max = Some(g2_max(xi)?);
            report.g2_min = Some(g2_min(xi)?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::{beta_from_g, g2_closed, xi_from_g};
    use crate::numeric::linspace;
    use crate::state::evolved_state;
    use approx::assert_relative_eq;
    use num_complex::Complex64 as C64;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn concurrence_beta_xi_figure_values() {
        assert!((concurrence_beta_xi(5.0, 0.0).unwrap() - 0.973).abs() <= 2e-3);
        assert!((concurrence_beta_xi(1.0, 0.0).unwrap() - 0.069).abs() <= 2e-3);
        for beta in [0.0, 1.0, 10.0] {
            assert_eq!(concurrence_beta_xi(beta, 1.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn concurrence_beta_g_figure_values() {
        let g_max = g1_max(2.0).unwrap();
        assert!((g_max - 0.381).abs() <= 2e-3);
        assert!((concurrence_beta_g(2.0, g_max).unwrap() - 0.552).abs() <= 2e-3);
        // zero crossing sits exactly at G⁽¹⁾_min
        for beta in [1.0, 2.0, 5.0] {
            let raw = concurrence_beta_g_raw(beta, g1_min(beta).unwrap()).unwrap();
            assert!(raw.abs() <= 1e-10, "residual {raw} at β = {beta}");
        }
        // below the threshold the raw value is negative and the clamp wins
        assert!(concurrence_beta_g_raw(1.0, 0.1).unwrap() < 0.0);
        assert_eq!(concurrence_beta_g(1.0, 0.1).unwrap(), 0.0);
    }

    #[test]
    fn concurrence_g_xi_figure_values() {
        assert!((concurrence_g_xi(0.25, FRAC_1_SQRT_2).unwrap() - 0.707).abs() <= 2e-3);
        assert!((concurrence_g_xi(0.095, 0.9).unwrap() - 0.436).abs() <= 2e-3);
        assert_eq!(concurrence_g_xi(0.0, 0.3).unwrap(), 0.0);
        assert!(concurrence_g_xi(0.1, 1.0).is_err());
    }

    #[test]
    fn oracle_on_maximally_mixed_state() {
        let s = evolved_state(0.0, 0.5).unwrap().to_density_matrix();
        assert!(concurrence_oracle(&s).abs() < 1e-12);
    }

    #[test]
    fn oracle_matches_closed_form_on_grid() {
        for beta in linspace(0.0, 5.0, 20) {
            for xi in linspace(0.0, 1.0, 20) {
                let rho = evolved_state(beta, xi).unwrap().to_density_matrix();
                let oracle = concurrence_oracle(&rho);
                let closed = concurrence_beta_xi(beta, xi).unwrap();
                assert!(
                    (oracle - closed).abs() <= 1e-10,
                    "β={beta}, ξ={xi}: oracle {oracle} vs closed {closed}"
                );
            }
        }
    }

    #[test]
    fn oracle_near_pure_maximum() {
        let rho = evolved_state(40.0, 0.0).unwrap().to_density_matrix();
        assert!((concurrence_oracle(&rho) - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn oracle_on_bell_mixture() {
        // ρ = p·|Φ⁺⟩⟨Φ⁺| + (1−p)·I/4 has C = max(0, (3p−1)/2)
        let p = 0.7;
        let mut m = crate::matrix::Mat4::identity() * C64::new((1.0 - p) / 4.0, 0.0);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(i, j)] += C64::new(0.5 * p, 0.0);
        }
        let c = concurrence_oracle(&DensityMatrix4::new(m));
        assert_relative_eq!(c, (3.0 * p - 1.0) / 2.0, epsilon = 1e-10);
    }

    #[test]
    fn parameterizations_agree_through_inversions() {
        for beta in linspace(0.2, 5.0, 15) {
            for xi in linspace(0.0, 0.99, 15) {
                let g = g2_closed(beta, xi).unwrap();
                let c1 = concurrence_beta_xi(beta, xi).unwrap();
                let c2 = concurrence_beta_g(beta, g).unwrap();
                let c3 = concurrence_g_xi(g, xi).unwrap();
                assert!((c1 - c2).abs() <= 1e-10, "β={beta}, ξ={xi}");
                assert!((c1 - c3).abs() <= 1e-10, "β={beta}, ξ={xi}");
                // inversion maps recover the slice coordinates
                assert!((xi_from_g(beta, g).unwrap() - xi).abs() <= 1e-7);
                if beta <= 12.0 {
                    assert!((beta_from_g(g, xi).unwrap() - beta).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn threshold_caption_values() {
        assert!((beta2_min(0.1).unwrap() - 1.295).abs() <= 2e-3);
        assert!((xi2_min(0.1).unwrap() - 0.806).abs() <= 2e-3);
        assert!((g1_min(1.0).unwrap() - 0.167).abs() <= 2e-3);
        assert!((g1_min(5.0).unwrap() - 9.0e-5).abs() <= 2e-3);
        assert!((beta1_min(0.25).unwrap() - 1.099).abs() <= 2e-3);
        assert!((xi2_max(0.4).unwrap() - 0.447).abs() <= 2e-3);
        assert!((g2_min(0.0).unwrap() - 0.207).abs() <= 2e-3);
        assert!((g2_max(0.9).unwrap() - 0.095).abs() <= 2e-3);
    }

    #[test]
    fn quartic_roots_solve_their_equations() {
        // the β⁽²⁾_min crossing lies inside the admissible region exactly
        // when β⁽²⁾_min ≥ β⁽¹⁾_min
        for g in [0.05, 0.1, 0.15, 0.2] {
            let beta2 = beta2_min(g).unwrap();
            assert!(beta2 >= beta1_min(g).unwrap(), "crossing left the domain at G = {g}");
            let raw = concurrence_beta_g_raw(beta2, g).unwrap();
            assert!(raw.abs() <= 1e-10, "C residual {raw} at G = {g}");
        }
        for g in [0.05, 0.1, 0.15] {
            let xi2 = xi2_min(g).unwrap();
            let raw = concurrence_g_xi_raw(g, xi2).unwrap();
            assert!(raw.abs() <= 1e-9, "C residual {raw} at G = {g}");
        }
        // above the critical intensity the entangled region reaches ξ = 0
        for g in [0.21, 0.3, 0.45] {
            assert_eq!(xi2_min(g).unwrap(), 0.0);
            assert!(concurrence_g_xi(g, 0.0).unwrap() > 0.0);
        }
    }

    #[test]
    fn entanglement_gate_at_fixed_intensity() {
        for g in [0.1, 0.25, 0.4] {
            let floor = beta1_min(g).unwrap();
            let gate = floor.max(beta2_min(g).unwrap());
            for beta in [gate + 0.01, gate + 0.1, gate + 1.0] {
                assert!(
                    concurrence_beta_g(beta, g).unwrap() > 0.0,
                    "expected entanglement at β = {beta}, G = {g}"
                );
            }
            // an unentangled admissible stretch exists only when the
            // β⁽²⁾_min crossing is the binding gate
            if gate > floor {
                let below = floor + 0.7 * (gate - floor);
                assert_eq!(concurrence_beta_g(below, g).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn discord_positive_where_concurrence_vanishes() {
        let (beta, g) = (1.0, 0.1);
        assert_eq!(concurrence_beta_g(beta, g).unwrap(), 0.0);
        let xi = xi_from_g(beta, g).unwrap();
        assert!(crate::discord::discord_closed(beta, xi).unwrap() > 0.01);
    }

    #[test]
    fn threshold_report_slices() {
        let r = thresholds(Slice::Beta(1.0)).unwrap();
        assert!(r.g1_max.is_some() && r.g1_min.is_some());
        assert!(r.beta1_min.is_none());
        let r = thresholds(Slice::G(0.1)).unwrap();
        assert!(r.beta1_min.is_some() && r.beta2_min.is_some());
        assert!(r.xi2_max.is_some() && r.xi2_min.is_some());
        let r = thresholds(Slice::Xi(0.9)).unwrap();
        assert!(r.g2_max.is_some() && r.g2_min.is_some());
        assert!(thresholds(Slice::G(0.6)).is_err());
        assert!(thresholds(Slice::G(0.0)).is_err());
    }

    #[test]
    fn g1_bounds_cross_at_sinh_one() {
        // entanglement attainable iff sinh β > 1
        let beta_crit = 1f64.asinh();
        assert!(g1_min(beta_crit + 0.01).unwrap() < g1_max(beta_crit + 0.01).unwrap());
        assert!(g1_min(beta_crit - 0.01).unwrap() > g1_max(beta_crit - 0.01).unwrap());
    }
}
