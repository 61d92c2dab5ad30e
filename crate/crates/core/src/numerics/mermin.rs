use num_complex::Complex64;

use super::linalg::{self, CMatrix};
use super::pvm::PvmFamily;
use crate::game::{magic_square_solution, MAGIC_SQUARE_EQUATIONS};

fn pauli(name: char) -> CMatrix {
    let (o, z, i) = (
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 1.0),
    );
    let entries = match name {
        'I' => [o, z, z, o],
        'X' => [z, o, o, z],
        'Y' => [z, -i, i, z],
        'Z' => [o, z, z, -o],
        _ => unreachable!("unknown Pauli {name}"),
    };
    CMatrix::from_row_slice(2, 2, &entries)
}

/// Two-qubit observable `sign · P ⊗ Q`.
fn observable(sign: f64, p: char, q: char) -> CMatrix {
    pauli(p).kronecker(&pauli(q)).scale(sign)
}

/// The nine magic-square observables, row-major. Every row multiplies to
/// `+I`, the first two columns to `+I` and the last column to `−I`, which
/// matches the parities of the equations.
pub fn magic_square_observables() -> [CMatrix; 9] {
    [
        observable(-1.0, 'X', 'I'),
        observable(-1.0, 'I', 'X'),
        observable(1.0, 'X', 'X'),
        observable(1.0, 'I', 'Z'),
        observable(1.0, 'Z', 'I'),
        observable(1.0, 'Z', 'Z'),
        observable(-1.0, 'X', 'Z'),
        observable(-1.0, 'Z', 'X'),
        observable(1.0, 'Y', 'Y'),
    ]
}

/// Dimension-4 winning strategy for the magic-square game. Variable `v`
/// takes value `s` on the eigenspace `(I + (−1)^s O_v)/2`; the projector for
/// answer `a` to equation `x` is the product over the equation's three
/// variables of the projectors for the labeled solution.
pub fn mermin_peres_fixture() -> PvmFamily {
    let obs = magic_square_observables();
    let id = linalg::identity(4);
    let eigenprojector = |v: usize, s: u8| {
        let sign = if s == 0 { 1.0 } else { -1.0 };
        (&id + obs[v - 1].scale(sign)).scale(0.5)
    };
    let mut projectors = Vec::with_capacity(24);
    for x in 1..=6 {
        for a in 1..=4 {
            let sol = magic_square_solution(x, a);
            let mut p = id.clone();
            for (v, s) in MAGIC_SQUARE_EQUATIONS[x - 1].iter().zip(sol) {
                p = p * eigenprojector(*v, s);
            }
            projectors.push(p);
        }
    }
    PvmFamily::new(4, 6, 4, projectors, 1e-12).expect("24 matrices of size 4")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{fixture_magic_square, MAGIC_SQUARE_PARITY};
    use crate::numerics::{correlation_for_game, validate_pvm};

    #[test]
    fn observables_satisfy_the_square() {
        let obs = magic_square_observables();
        let id = linalg::identity(4);
        for o in &obs {
            assert!(linalg::op_norm(&(o * o - &id)) < 1e-15);
            assert!(linalg::op_norm(&(o - o.adjoint())) < 1e-15);
        }
        for (eq, parity) in MAGIC_SQUARE_EQUATIONS.iter().zip(MAGIC_SQUARE_PARITY) {
            let prod = &obs[eq[0] - 1] * &obs[eq[1] - 1] * &obs[eq[2] - 1];
            let sign = if parity == 0 { 1.0 } else { -1.0 };
            assert!(linalg::op_norm(&(prod - id.scale(sign))) < 1e-14);
            for i in 0..3 {
                for j in 0..3 {
                    assert!(linalg::commutator_norm(&obs[eq[i] - 1], &obs[eq[j] - 1]) < 1e-15);
                }
            }
        }
    }

    #[test]
    fn fixture_is_a_winning_pvm_family() {
        let fam = mermin_peres_fixture();
        assert!(validate_pvm(&fam).max_residual() < 1e-12);
        let g = fixture_magic_square();
        let p = correlation_for_game(&fam, &g).unwrap();
        assert!(p.max_loss(&g) < 1e-10);
        p.check_invariants(&1e-10).unwrap();
        for x in 1..=6 {
            for a in 1..=4 {
                assert!((p.get(a, a, x, x) - 0.25).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fixture_is_deterministic() {
        assert_eq!(mermin_peres_fixture(), mermin_peres_fixture());
    }
}
