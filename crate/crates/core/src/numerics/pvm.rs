use std::fmt::Write as _;

use num_complex::Complex64;

use super::linalg::{self, CMatrix};
use super::NumericsError;
use crate::correlations::SynchronousCorrelation;
use crate::format::{expect_arity, field, records, ParseError};
use crate::game::{DeterministicStrategy, SynchronousGame};

/// One projection-valued measure per question: `E_{a,x}` for answers
/// `a = 1..=k`, all `dim × dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct PvmFamily {
    dim: usize,
    n: usize,
    k: usize,
    /// Ordered by `(x, a)`.
    projectors: Vec<CMatrix>,
    tol: f64,
}

impl PvmFamily {
    pub fn new(
        dim: usize,
        n: usize,
        k: usize,
        projectors: Vec<CMatrix>,
        tol: f64,
    ) -> Result<Self, NumericsError> {
        if projectors.len() != n * k {
            return Err(NumericsError::Dimension(format!(
                "expected {} matrices for n={n}, k={k}, got {}",
                n * k,
                projectors.len()
            )));
        }
        if let Some(m) = projectors.iter().find(|m| m.shape() != (dim, dim)) {
            return Err(NumericsError::Dimension(format!(
                "matrix of shape {:?} in a dimension-{dim} family",
                m.shape()
            )));
        }
        Ok(PvmFamily {
            dim,
            n,
            k,
            projectors,
            tol,
        })
    }

    /// The 1-dimensional family of a deterministic strategy.
    pub fn from_deterministic(f: &DeterministicStrategy, k: usize, tol: f64) -> Self {
        let n = f.n_questions();
        let projectors = (1..=n)
            .flat_map(|x| (1..=k).map(move |a| (x, a)))
            .map(|(x, a)| linalg::diagonal_indicator(&[f.answer(x) == a]))
            .collect();
        PvmFamily {
            dim: 1,
            n,
            k,
            projectors,
            tol,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_questions(&self) -> usize {
        self.n
    }

    pub fn k_answers(&self) -> usize {
        self.k
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// `E_{a,x}`, 1-based.
    #[inline]
    pub fn projector(&self, a: usize, x: usize) -> &CMatrix {
        &self.projectors[(x - 1) * self.k + (a - 1)]
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    /// Conjugates every projector by `u`.
    pub fn conjugated(&self, u: &CMatrix) -> Self {
        PvmFamily {
            projectors: self.projectors.iter().map(|p| linalg::conjugate(u, p)).collect(),
            ..self.clone()
        }
    }
}

/// Worst residuals of the PVM relations, in operator norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvmReport {
    pub idempotency: f64,
    pub self_adjointness: f64,
    pub completeness: f64,
    pub tol: f64,
}

impl PvmReport {
    pub fn max_residual(&self) -> f64 {
        self.idempotency.max(self.self_adjointness).max(self.completeness)
    }

    pub fn passed(&self) -> bool {
        self.max_residual() <= self.tol
    }
}

pub fn validate_pvm(fam: &PvmFamily) -> PvmReport {
    let mut report = PvmReport {
        idempotency: 0.0,
        self_adjointness: 0.0,
        completeness: 0.0,
        tol: fam.tol,
    };
    let id = linalg::identity(fam.dim);
    for x in 1..=fam.n {
        let mut sum = linalg::zeros(fam.dim);
        for a in 1..=fam.k {
            let p = fam.projector(a, x);
            report.idempotency = report.idempotency.max(linalg::op_norm(&(p * p - p)));
            report.self_adjointness = report.self_adjointness.max(linalg::op_norm(&(p - p.adjoint())));
            sum += p;
        }
        report.completeness = report.completeness.max(linalg::op_norm(&(sum - &id)));
    }
    report
}

/// `p(a,b|x,y) = tr(E_{a,x} E_{b,y}) / dim`. The family must pass
/// [`validate_pvm`] at its own tolerance.
pub fn correlation_from_tracial(fam: &PvmFamily) -> Result<SynchronousCorrelation<f64>, NumericsError> {
    let report = validate_pvm(fam);
    if !report.passed() {
        return Err(NumericsError::InvalidFamily(format!(
            "PVM residual {:e} exceeds tolerance {:e}",
            report.max_residual(),
            fam.tol
        )));
    }
    let d = fam.dim as f64;
    Ok(SynchronousCorrelation::from_fn(fam.n, fam.k, |a, b, x, y| {
        // tr(PQ) = Σ_ij P_ij Q_ji
        let (p, q) = (fam.projector(a, x), fam.projector(b, y));
        let tr: Complex64 = p.iter().zip(q.transpose().iter()).map(|(u, v)| u * v).sum();
        tr.re / d
    }))
}

/// Tracial correlation of `fam` checked against the shape of `g`.
pub fn correlation_for_game(
    fam: &PvmFamily,
    g: &SynchronousGame,
) -> Result<SynchronousCorrelation<f64>, NumericsError> {
    if (fam.n, fam.k) != (g.n_questions(), g.k_answers()) {
        return Err(NumericsError::Dimension(format!(
            "family has n={}, k={}; game has n={}, k={}",
            fam.n,
            fam.k,
            g.n_questions(),
            g.k_answers()
        )));
    }
    correlation_from_tracial(fam)
}

/// Header `pvm <dim> <n> <k> <tol>`, then each matrix's entries row-major
/// as `re im` lines, matrices ordered by `(x, a)`.
pub fn write_pvm(fam: &PvmFamily) -> String {
    let mut out = format!("pvm {} {} {} {:e}\n", fam.dim, fam.n, fam.k, fam.tol);
    for m in &fam.projectors {
        for i in 0..fam.dim {
            for j in 0..fam.dim {
                let z = m[(i, j)];
                writeln!(out, "{:e} {:e}", z.re, z.im).unwrap();
            }
        }
    }
    out
}

pub fn parse_pvm(text: &str) -> Result<PvmFamily, NumericsError> {
    let mut lines = records(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "empty PVM file"))?;
    expect_arity(line, &header, 5)?;
    if header[0] != "pvm" {
        return Err(ParseError::new(line, "expected `pvm` header").into());
    }
    let dim: usize = field(line, &header, 1, "dimension")?;
    let n: usize = field(line, &header, 2, "question count")?;
    let k: usize = field(line, &header, 3, "answer count")?;
    let tol: f64 = field(line, &header, 4, "tolerance")?;
    if dim == 0 {
        return Err(ParseError::new(line, "dimension must be positive").into());
    }
    let mut entries = Vec::with_capacity(n * k * dim * dim);
    for (line, fields) in lines {
        expect_arity(line, &fields, 2)?;
        let re: f64 = field(line, &fields, 0, "real part")?;
        let im: f64 = field(line, &fields, 1, "imaginary part")?;
        entries.push(Complex64::new(re, im));
    }
    if entries.len() != n * k * dim * dim {
        return Err(ParseError::new(
            0,
            format!("expected {} entries, found {}", n * k * dim * dim, entries.len()),
        )
        .into());
    }
    let projectors = entries
        .chunks(dim * dim)
        .map(|c| CMatrix::from_row_slice(dim, dim, c))
        .collect();
    PvmFamily::new(dim, n, k, projectors, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::fixture_trivial;
    use crate::correlations::correlation_from_deterministic;
    use rand::{Rng, SeedableRng};

    fn standard_basis(d: usize) -> PvmFamily {
        let projectors = (0..d)
            .map(|i| linalg::diagonal_indicator(&(0..d).map(|j| j == i).collect::<Vec<_>>()))
            .collect();
        PvmFamily::new(d, 1, d, projectors, 1e-12).unwrap()
    }

    #[test]
    fn standard_basis_has_zero_residual() {
        let r = validate_pvm(&standard_basis(3));
        assert_eq!(r.max_residual(), 0.0);
        assert!(r.passed());
    }

    #[test]
    fn perturbation_is_detected() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let fam = standard_basis(3);
        let mut projectors = fam.projectors().to_vec();
        for z in projectors[0].iter_mut() {
            *z += Complex64::new(rng.random_range(-1e-6..1e-6), 0.0);
        }
        let bad = PvmFamily::new(3, 1, 3, projectors, 1e-9).unwrap();
        let r = validate_pvm(&bad);
        assert!(r.max_residual() > 1e-8 && r.max_residual() < 1e-5, "{r:?}");
        assert!(!r.passed());
        assert!(correlation_from_tracial(&bad).is_err());
    }

    #[test]
    fn one_dimensional_family_matches_deterministic() {
        let g = fixture_trivial(3, 3);
        for f in DeterministicStrategy::enumerate(3, 3) {
            let fam = PvmFamily::from_deterministic(&f, 3, 1e-12);
            let q = correlation_for_game(&fam, &g).unwrap();
            let p = correlation_from_deterministic(&f, &g).unwrap();
            for ((_, u), (_, v)) in q.entries().zip(p.entries()) {
                assert_eq!(*u, *v.numer() as f64 / *v.denom() as f64);
            }
        }
    }

    #[test]
    fn dump_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let u = linalg::random_unitary(3, &mut rng);
        let fam = standard_basis(3).conjugated(&u);
        let back = parse_pvm(&write_pvm(&fam)).unwrap();
        assert_eq!(back, fam);
        assert!(parse_pvm("pvm 2 1 1 1e-9\n1 0\n").is_err());
    }

    #[test]
    fn wrong_shapes_are_rejected() {
        assert!(PvmFamily::new(2, 1, 2, vec![linalg::identity(2)], 1e-9).is_err());
        assert!(PvmFamily::new(2, 1, 1, vec![linalg::identity(3)], 1e-9).is_err());
    }
}
