//! Resolution of a configuration from any two of (β, ξ, G).

use crate::coherence::{beta_from_g, g2_closed, xi_from_g};
use crate::discord::check_beta;
use crate::error::{check_range, Error, Result};

/// The three equivalent coordinates of one dimer configuration. `beta` is
/// +∞ at the pure-state bound G = (1−ξ²)/2, where every measure takes its
/// zero-temperature limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedPoint {
    pub beta: f64,
    pub xi: f64,
    pub g: f64,
}

/// Completes (β, ξ, G) from exactly two given coordinates. Domain errors
/// carry the admissible range of the offending parameter; supplying fewer
/// or more than two coordinates is an input error.
pub fn resolve_point(beta: Option<f64>, xi: Option<f64>, g: Option<f64>) -> Result<ResolvedPoint> {
    match (beta, xi, g) {
        (Some(beta), Some(xi), None) => {
            check_beta(beta)?;
            check_range("xi", xi, 0.0, 1.0)?;
            Ok(ResolvedPoint {
                beta,
                xi,
                g: g2_closed(beta, xi)?,
            })
        }
        (Some(beta), None, Some(g)) => Ok(ResolvedPoint {
            beta,
            xi: xi_from_g(beta, g)?,
            g,
        }),
        (None, Some(xi), Some(g)) => {
            check_range("xi", xi, 0.0, 1.0)?;
            let cap = 0.5 * (1.0 - xi * xi);
            if g.is_nan() || g < 0.0 {
                return Err(Error::out_of_domain("g", g, 0.0, cap));
            }
            if cap == 0.0 {
                return Err(Error::InvalidInput(
                    "β is undetermined at ξ = 1, where G = 0 for every temperature".into(),
                ));
            }
            let arg = 2.0 * g / (1.0 - xi * xi);
            if (arg - 1.0).abs() <= 1e-12 {
                // pure-state bound: the β → ∞ limit
                Ok(ResolvedPoint {
                    beta: f64::INFINITY,
                    xi,
                    g,
                })
            } else {
                Ok(ResolvedPoint {
                    beta: beta_from_g(g, xi)?,
                    xi,
                    g,
                })
            }
        }
        _ => Err(Error::InvalidInput(
            "exactly two of β, ξ (or D·τ), G must be given".into(),
        )),
    }
}
