//! Dense 4×4 complex operators in the |00⟩,|01⟩,|10⟩,|11⟩ product basis,
//! plus the small amount of linear algebra the oracles need (Hermitian
//! eigensolver, matrix exponential / square root, partial traces).

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numeric::xlog2;

pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;

/// Diagonal of I_z = I_{1z} + I_{2z} in the product basis.
pub const IZ_DIAG: [f64; 4] = [1.0, 0.0, 0.0, -1.0];

/// I_z as a matrix.
pub fn iz_matrix() -> Mat4 {
    Mat4::from_diagonal(&Vector4::new(
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(-1.0, 0.0),
    ))
}

/// σ_y ⊗ σ_y, the two-qubit spin-flip operator (real symmetric).
pub fn sigma_yy() -> Mat4 {
    let mut m = Mat4::zeros();
    m[(0, 3)] = C64::new(-1.0, 0.0);
    m[(1, 2)] = C64::new(1.0, 0.0);
    m[(2, 1)] = C64::new(1.0, 0.0);
    m[(3, 0)] = C64::new(-1.0, 0.0);
    m
}

/// A 4×4 operator in the fixed dimer basis. Used for states as well as for
/// evolved observables (which are traceless); the state-specific invariants
/// are checked by [`DensityMatrix4::validate_state`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4 {
    m: Mat4,
}

impl DensityMatrix4 {
    pub fn new(m: Mat4) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn into_matrix(self) -> Mat4 {
        self.m
    }

    /// Largest elementwise deviation from M = M†.
    pub fn hermiticity_residual(&self) -> f64 {
        let diff = self.m - self.m.adjoint();
        diff.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    /// Eigenvalues assuming Hermiticity, sorted ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues4(&self.m)
    }

    /// Tr(M²), real for Hermitian input.
    pub fn purity(&self) -> f64 {
        (self.m * self.m).trace().re
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix4) -> f64 {
        (self.m - other.m)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Checks the state invariants: Hermitian and unit trace to 1e−12,
    /// eigenvalues ≥ −1e−12.
    pub fn validate_state(&self) -> Result<()> {
        let herm = self.hermiticity_residual();
        if herm > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "matrix is not Hermitian (residual {herm:.3e})"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "trace {tr} differs from 1"
            )));
        }
        let min_eig = self.eigenvalues()[0];
        if min_eig < -1e-12 {
            return Err(Error::InvalidInput(format!(
                "matrix has a negative eigenvalue ({min_eig:.3e})"
            )));
        }
        Ok(())
    }
}

/// Eigenvalues of a Hermitian 4×4 matrix, sorted ascending.
pub fn hermitian_eigenvalues4(m: &Mat4) -> [f64; 4] {
    let eig = nalgebra::linalg::SymmetricEigen::new(*m);
    let mut vals = [0.0; 4];
    for (i, v) in eig.eigenvalues.iter().enumerate() {
        vals[i] = *v;
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// Eigenvalues of a Hermitian 2×2 matrix, closed form, ascending.
pub fn hermitian_eigenvalues2(m: &Mat2) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + m[(0, 1)].norm_sqr()).sqrt();
    [mean - r, mean + r]
}

/// −Σ λ log₂ λ over a clamped-nonnegative eigenvalue list, in bits.
pub fn entropy_bits(eigs: &[f64]) -> f64 {
    -eigs.iter().map(|&l| xlog2(l.max(0.0))).sum::<f64>()
}

/// von Neumann entropy (bits) of a Hermitian 4×4 matrix.
pub fn von_neumann_entropy4(m: &Mat4) -> f64 {
    entropy_bits(&hermitian_eigenvalues4(m))
}

/// von Neumann entropy (bits) of a Hermitian 2×2 matrix.
pub fn von_neumann_entropy2(m: &Mat2) -> f64 {
    entropy_bits(&hermitian_eigenvalues2(m))
}

/// Partial trace over the second spin: ρ^A[a,a'] = Σ_b ρ[(a,b),(a',b)].
pub fn partial_trace_b(m: &Mat4) -> Mat2 {
    let mut out = Mat2::zeros();
    for a in 0..2 {
        for ap in 0..2 {
            for b in 0..2 {
                out[(a, ap)] += m[(2 * a + b, 2 * ap + b)];
            }
        }
    }
    out
}

/// Partial trace over the first spin: ρ^B[b,b'] = Σ_a ρ[(a,b),(a,b')].
pub fn partial_trace_a(m: &Mat4) -> Mat2 {
    let mut out = Mat2::zeros();
    for b in 0..2 {
        for bp in 0..2 {
            for a in 0..2 {
                out[(b, bp)] += m[(2 * a + b, 2 * a + bp)];
            }
        }
    }
    out
}

/// Matrix exponential by scaling-and-squaring with a Taylor series.
/// Adequate for the small, well-scaled generators used here.
pub fn matrix_exp(m: &Mat4) -> Mat4 {
    let norm = m.iter().map(|z| z.norm()).fold(0.0, f64::max) * 4.0;
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = C64::new(0.5f64.powi(squarings as i32), 0.0);
    let a = m * scale;

    let mut result = Mat4::identity();
    let mut term = Mat4::identity();
    for k in 1..=24 {
        term = term * a / C64::new(k as f64, 0.0);
        result += term;
    }
    for _ in 0..squarings {
        result = result * result;
    }
    result
}

/// Hermitian PSD square root via eigendecomposition; negative roundoff
/// eigenvalues are clamped to zero.
pub fn matrix_sqrt_psd(m: &Mat4) -> Mat4 {
    let eig = nalgebra::linalg::SymmetricEigen::new(*m);
    let v = eig.eigenvectors;
    let mut d = Mat4::zeros();
    for i in 0..4 {
        d[(i, i)] = C64::new(eig.eigenvalues[i].max(0.0).sqrt(), 0.0);
    }
    v * d * v.adjoint()
}

/// e^{−i·angle·I_z} M e^{+i·angle·I_z}: each element picks up the phase
/// e^{−i·angle·(z_i − z_j)}.
pub fn iz_phase_conjugate(m: &Mat4, angle: f64) -> Mat4 {
    let mut out = *m;
    for i in 0..4 {
        for j in 0..4 {
            let k = IZ_DIAG[i] - IZ_DIAG[j];
            if k != 0.0 {
                out[(i, j)] *= C64::from_polar(1.0, -angle * k);
            }
        }
    }
    out
}
