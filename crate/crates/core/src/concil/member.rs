use alloc::{collections::BTreeSet, vec::Vec};

use super::{ConcilError, Kind, Node};
use crate::words::{
    decode_erasers, eraser_eval_index, remove_letter, staged_eval_range, EraserMode, EvalError, Letter, Word,
    DEFAULT_STEP_LIMIT,
};

/// Decides `w ∈ L(node)`. Every letter of `w` must belong to the node's
/// alphabet.
pub fn member(node: &Node<'_>, w: &Word) -> Result<bool, ConcilError> {
    if let Some(l) = w.letters().find(|l| !node.alphabet.contains(l)) {
        return Err(ConcilError::ForeignLetter(*l));
    }
    decide(node, w)
}

// Keeps the letters of `keep`. A period that empties out leaves a finite word.
fn trace(w: &Word, keep: &BTreeSet<Letter>) -> Word {
    let f = |s: &[Letter]| s.iter().copied().filter(|l| keep.contains(l)).collect::<Vec<_>>();
    Word::from_parts(f(w.stem()), f(w.period()))
}

fn suffix(w: &Word, from: usize) -> Word {
    if from <= w.stem().len() || w.is_finite() {
        let from = from.min(w.stem().len());
        return Word::from_parts(w.stem()[from..].to_vec(), w.period().to_vec());
    }
    // inside the period: rotate it
    let p = w.period();
    let k = (from - w.stem().len()) % p.len();
    let mut rot = p[k..].to_vec();
    rot.extend_from_slice(&p[..k]);
    Word::from_parts(Vec::new(), rot)
}

fn eval_err(e: EvalError) -> Result<Option<Word>, ConcilError> {
    match e {
        EvalError::Undefined => Ok(None),
        other => Err(other.into()),
    }
}

fn decide(node: &Node<'_>, w: &Word) -> Result<bool, ConcilError> {
    match &node.kind {
        Kind::Empty => Ok(false),
        Kind::Atom { pda, .. } => Ok(pda.accepts(w)),
        Kind::Sum { big, small, plus, minus } => {
            let first = w.letters().position(|l| plus.contains(l) || minus.contains(l));
            match first {
                None => decide(small, &trace(w, &small.alphabet)),
                Some(i) => {
                    let sign = w.letter_at(i).expect("position inside the word");
                    let inside = decide(big, &trace(&suffix(w, i + 1), &big.alphabet))?;
                    Ok(if plus.contains(&sign) { inside } else { !inside })
                }
            }
        }
        Kind::Erase { base, index, mode } => {
            let v = match eraser_eval_index(w, *index, *mode, DEFAULT_STEP_LIMIT) {
                Ok(v) => Some(v),
                Err(e) => eval_err(e)?,
            };
            match v {
                Some(v) => decide(base, &v),
                None => Ok(false),
            }
        }
        Kind::Bullet { base, code, dual } => {
            let a = Letter::marker('a', code.level);
            let b = Letter::marker('b', code.level);
            if *dual && w.letters().all(|l| *l == a) {
                return Ok(true);
            }
            // `a^n b` with n ≥ 1; canonical form may have rotated it into the period.
            let bound = w.stem().len() + w.period().len();
            let n = (0..=bound).take_while(|&i| w.letter_at(i) == Some(a)).count();
            if n == 0 || w.letter_at(n) != Some(b) {
                return Ok(false);
            }
            let rest = suffix(w, n + 1);
            if rest.letters().any(|l| *l == a || *l == b) {
                return Ok(false);
            }
            let n = u32::try_from(n).map_err(|_| ConcilError::Unsupported("prefix too long"))?;
            let decoded = match decode_erasers(&rest, *code, n) {
                Ok(v) => v,
                Err(m) => return Ok(m.is_count_failure()),
            };
            let lo = code.offset + 1;
            let v = match staged_eval_range(&decoded, lo, code.offset + n, EraserMode::Approx, DEFAULT_STEP_LIMIT) {
                Ok(v) => Some(v),
                Err(e) => eval_err(e)?,
            };
            match v {
                Some(v) => decide(base, &v),
                None => Ok(false),
            }
        }
        Kind::DFlag { base, d } => decide(base, &remove_letter(w, *d)),
        Kind::Complement(base) => Ok(!decide(base, w)?),
    }
}
