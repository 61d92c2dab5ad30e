//! Small dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn zeros(d: usize) -> CMatrix {
    CMatrix::zeros(d, d)
}

/// Spectral norm (largest singular value).
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// `‖AB − BA‖`.
pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    op_norm(&(a * b - b * a))
}

/// `max(‖P² − P‖, ‖P − P*‖)`.
pub fn projector_residual(p: &CMatrix) -> f64 {
    op_norm(&(p * p - p)).max(op_norm(&(p - p.adjoint())))
}

/// Largest eigenvalue of the Hermitian part of `m`.
pub fn max_eigenvalue_hermitian(m: &CMatrix) -> f64 {
    let h = (m + m.adjoint()).scale(0.5);
    h.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Block-diagonal matrix with the given square blocks.
pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
    let d: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = zeros(d);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, at), b.shape()).copy_from(b);
        at += b.nrows();
    }
    out
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix, with the
/// phases of `R`'s diagonal folded back into `Q`.
pub fn random_unitary<R: Rng>(d: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { Complex64::new(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// `U M U*`.
pub fn conjugate(u: &CMatrix, m: &CMatrix) -> CMatrix {
    u * m * u.adjoint()
}

/// Real diagonal matrix from 0/1 flags.
pub fn diagonal_indicator(flags: &[bool]) -> CMatrix {
    CMatrix::from_fn(flags.len(), flags.len(), |i, j| {
        if i == j && flags[i] {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}
