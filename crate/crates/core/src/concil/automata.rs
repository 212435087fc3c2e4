use alloc::vec::Vec;

use super::{ConcilError, Kind, Node};
use crate::pda::{
    concil_pda::{build_bullet_dual_pda, build_bullet_pda, build_d_pda, build_sum_pda, build_tilde_pda, SumAlphabets},
    named::CodeAlphabet,
    FiniteAutomaton, Pda,
};
use crate::words::EraserMode;

// `∅` (or everything when `full`) over the node's alphabet.
fn trivial(node: &Node<'_>, full: bool) -> Pda {
    let mut fa = FiniteAutomaton::new(1, 0);
    fa.alphabet = node.alphabet.clone();
    if full {
        for &l in &node.alphabet {
            fa.add(0, l, 0);
        }
        fa.finals.insert(0);
        fa.buchi.insert(0);
    }
    fa.to_pda()
}

/// A pushdown automaton accepting `L(node)`.
pub fn to_pda(node: &Node<'_>) -> Result<Pda, ConcilError> {
    build(node, false)
}

/// A pushdown automaton accepting the complement of `L(node)` within the
/// node's alphabet. Complements of `APPROX` and `BULLET` nodes are not
/// context-free by any construction here and give `Unsupported`.
pub fn to_pda_complement(node: &Node<'_>) -> Result<Pda, ConcilError> {
    build(node, true)
}

fn build(node: &Node<'_>, co: bool) -> Result<Pda, ConcilError> {
    Ok(match &node.kind {
        Kind::Empty => trivial(node, co),
        Kind::Atom { id, pda, complement } => match (co, complement) {
            (false, _) => (*pda).clone(),
            (true, Some(c)) => (*c).clone(),
            (true, None) => return Err(ConcilError::UnknownAtom(alloc::format!("{id} (complement)"))),
        },
        Kind::Sum { big, small, plus, minus } => {
            let x = SumAlphabets {
                all: node.alphabet.clone(),
                a: small.alphabet.clone(),
                b: big.alphabet.clone(),
                plus: plus.clone(),
                minus: minus.clone(),
            };
            let (b, nb) = (build(big, co)?, build(big, !co)?);
            build_sum_pda(&b, &nb, &build(small, co)?, &x)?
        }
        Kind::Erase { base, index, mode } => {
            if co && *mode == EraserMode::Approx {
                return Err(ConcilError::Unsupported("complement of an approx exponentiation"));
            }
            build_tilde_pda(&build(base, co)?, &base.alphabet, crate::words::Letter::Eraser(*index), *mode)?
        }
        Kind::Bullet { base, code, dual } => {
            if co {
                return Err(ConcilError::Unsupported("complement of a bullet"));
            }
            let alph = CodeAlphabet::new(base.alphabet.iter().copied().collect::<Vec<_>>(), *code);
            let a = build(base, false)?;
            if *dual {
                build_bullet_dual_pda(&a, &alph)?
            } else {
                build_bullet_pda(&a, &alph)?
            }
        }
        Kind::DFlag { base, d } => build_d_pda(&build(base, co)?, *d)?,
        Kind::Complement(base) => build(base, !co)?,
    })
}
