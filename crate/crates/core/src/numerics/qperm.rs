//! Generators for commuting operator models: 3×3 quantum permutations,
//! 3×3×3 Latin-cube families, and operator 3-colorings of the prism and the
//! rook's graph built from them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::linalg::{self, CMatrix};
use super::NumericsError;

/// A 3×3 grid of projectors whose rows and columns each sum to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumPermutation3 {
    dim: usize,
    /// Row-major.
    entries: Vec<CMatrix>,
}

impl QuantumPermutation3 {
    pub fn new(entries: Vec<CMatrix>) -> Result<Self, NumericsError> {
        if entries.len() != 9 {
            return Err(NumericsError::Dimension(format!("{} entries, need 9", entries.len())));
        }
        let dim = entries[0].nrows();
        if entries.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(NumericsError::Dimension("entries differ in shape".into()));
        }
        Ok(QuantumPermutation3 { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `p_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &CMatrix {
        &self.entries[(i - 1) * 3 + (j - 1)]
    }

    pub fn entries(&self) -> &[CMatrix] {
        &self.entries
    }
}

fn is_permutation(images: &[usize; 3]) -> bool {
    let mut seen = [false; 3];
    images
        .iter()
        .all(|&s| (1..=3).contains(&s) && !std::mem::replace(&mut seen[s - 1], true))
}

/// Direct sum of classical permutations, conjugated by a seeded Haar
/// unitary. Each spec entry is `(σ, multiplicity)` with `σ` given by its
/// images `[σ(1), σ(2), σ(3)]`; the block for `σ` has `p_ij = [σ(i) = j]`
/// times the identity of size `multiplicity`.
pub fn random_quantum_permutation_3(
    block_spec: &[([usize; 3], usize)],
    seed: u64,
) -> Result<QuantumPermutation3, NumericsError> {
    let dim: usize = block_spec.iter().map(|(_, m)| m).sum();
    if dim == 0 {
        return Err(NumericsError::EmptySpec);
    }
    if let Some((s, _)) = block_spec.iter().find(|(s, _)| !is_permutation(s)) {
        return Err(NumericsError::InvalidFamily(format!("{s:?} is not a permutation of 1..=3")));
    }
    let u = linalg::random_unitary(dim, &mut ChaCha8Rng::seed_from_u64(seed));
    let mut entries = Vec::with_capacity(9);
    for i in 1..=3 {
        for j in 1..=3 {
            let flags: Vec<bool> = block_spec
                .iter()
                .flat_map(|(s, m)| std::iter::repeat_n(s[i - 1] == j, *m))
                .collect();
            entries.push(linalg::conjugate(&u, &linalg::diagonal_indicator(&flags)));
        }
    }
    QuantumPermutation3::new(entries)
}

/// A 3×3 Latin square with symbols `1..=3`.
pub type LatinSquare = [[usize; 3]; 3];

/// All twelve Latin squares of order 3, in lexicographic order.
pub fn latin_squares_3() -> Vec<LatinSquare> {
    let perms = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
    let mut out = Vec::new();
    for r0 in perms {
        for r1 in perms {
            for r2 in perms {
                if (0..3).all(|j| {
                    let col = [r0[j], r1[j], r2[j]];
                    is_permutation(&col)
                }) {
                    out.push([r0, r1, r2]);
                }
            }
        }
    }
    out
}

/// Projectors `p_ijk` with every line sum (fixing two indices) equal to
/// the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct LatinCubeFamily {
    dim: usize,
    entries: Vec<CMatrix>,
}

impl LatinCubeFamily {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `p_ijk`, 1-based.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> &CMatrix {
        &self.entries[((i - 1) * 3 + (j - 1)) * 3 + (k - 1)]
    }

    pub fn entries(&self) -> &[CMatrix] {
        &self.entries
    }
}

/// Direct sum of Latin-square indicator cubes `p_ijk = [L(i,j) = k]`,
/// conjugated by a seeded Haar unitary.
pub fn random_latin_cube_family(
    blocks: &[(LatinSquare, usize)],
    seed: u64,
) -> Result<LatinCubeFamily, NumericsError> {
    let dim: usize = blocks.iter().map(|(_, m)| m).sum();
    if dim == 0 {
        return Err(NumericsError::EmptySpec);
    }
    let u = linalg::random_unitary(dim, &mut ChaCha8Rng::seed_from_u64(seed));
    let mut entries = Vec::with_capacity(27);
    for i in 0..3 {
        for j in 0..3 {
            for k in 1..=3 {
                let flags: Vec<bool> = blocks
                    .iter()
                    .flat_map(|(l, m)| std::iter::repeat_n(l[i][j] == k, *m))
                    .collect();
                entries.push(linalg::conjugate(&u, &linalg::diagonal_indicator(&flags)));
            }
        }
    }
    Ok(LatinCubeFamily { dim, entries })
}

/// Per-vertex color projectors `[e_1, e_2, e_3]`.
pub type OperatorColoring = Vec<[CMatrix; 3]>;

/// Operator 3-coloring of the rook's graph (vertex `3(i-1)+(j-1)`) with
/// `e_{c,(i,j)} = p_{r,c}` where `r = (i + j) mod 3`.
pub fn rook_coloring_from_qperm(qp: &QuantumPermutation3) -> OperatorColoring {
    (0..9)
        .map(|v| {
            let (i, j) = (v / 3, v % 3);
            let r = (i + j) % 3 + 1;
            [qp.entry(r, 1).clone(), qp.entry(r, 2).clone(), qp.entry(r, 3).clone()]
        })
        .collect()
}

/// Operator 3-coloring of the triangular prism (vertex order `p,q,r,s,t,u`):
/// the first triangle uses rows `1,2,3` of the permutation and the second
/// the rows shifted by one, so matched vertices get disjoint rows.
pub fn prism_coloring_from_qperm(qp: &QuantumPermutation3) -> OperatorColoring {
    (0..6)
        .map(|v| {
            let r = if v < 3 { v + 1 } else { (v - 3 + 1) % 3 + 1 };
            [qp.entry(r, 1).clone(), qp.entry(r, 2).clone(), qp.entry(r, 3).clone()]
        })
        .collect()
}
