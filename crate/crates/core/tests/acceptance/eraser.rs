use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wadgeforge_core::words::{eraser_eval, EraserMode, EvalError, Letter, Word};

use crate::{Outcome, Tally};

const ERASER: Letter = Letter::Eraser(1);

#[derive(Debug, PartialEq)]
enum Sim {
    Undefined,
    Finite(Vec<Letter>),
    /// The stack keeps growing; the part below its lowest point is settled.
    Growing(Vec<Letter>),
}

// Runs the word for `periods` periods and watches the stack over the second
// half of the run: the cells below its lowest height are never erased again.
fn simulate(stem: &[Letter], period: &[Letter], mode: EraserMode, periods: usize) -> Sim {
    let mut stack: Vec<Letter> = Vec::new();
    let total = stem.len() + periods * period.len();
    let watch = stem.len() + periods / 2 * period.len();
    let middle = stem.len() + periods * 3 / 4 * period.len();
    let (mut low1, mut low2) = (usize::MAX, usize::MAX);
    for i in 0..total {
        let l = if i < stem.len() { stem[i] } else { period[(i - stem.len()) % period.len()] };
        if l == ERASER {
            if stack.pop().is_none() && mode == EraserMode::Approx {
                return Sim::Undefined;
            }
        } else {
            stack.push(l);
        }
        if i + 1 >= watch {
            if i + 1 < middle {
                low1 = low1.min(stack.len());
            } else {
                low2 = low2.min(stack.len());
            }
        }
    }
    let low = low1.min(low2);
    let mut settled = stack;
    settled.truncate(low);
    if low2 > low1 {
        Sim::Growing(settled)
    } else {
        Sim::Finite(settled)
    }
}

fn random_part(rng: &mut ChaCha8Rng, letters: &[Letter], min: usize) -> Vec<Letter> {
    let n = rng.gen_range(min..=8);
    (0..n).map(|_| if rng.gen_bool(0.4) { ERASER } else { letters[rng.gen_range(0..letters.len())] }).collect()
}

pub fn run() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let plain = [Letter::Plain('a'), Letter::Plain('b'), Letter::Plain('c')];
    let mut t = Tally::new();
    for k in 0..2000 {
        let mode = if k % 2 == 0 { EraserMode::Tilde } else { EraserMode::Approx };
        let letters = &plain[..rng.gen_range(1..=3)];
        let stem = random_part(&mut rng, letters, 0);
        let period = random_part(&mut rng, letters, 1);
        let w = Word::from_parts(stem.clone(), period.clone());
        let closed = eraser_eval(&w, mode);
        let sim = simulate(&stem, &period, mode, 256);
        let ok = match (&closed, &sim) {
            (Err(EvalError::Undefined), Sim::Undefined) => true,
            (Ok(v), Sim::Finite(s)) => v.is_finite() && v.stem() == s.as_slice(),
            (Ok(v), Sim::Growing(s)) => !v.is_finite() && s.len() >= 32 && v.prefix(s.len()) == *s,
            _ => false,
        };
        t.check(ok, || format!("{w} ({mode:?}): closed form {closed:?}, simulation {sim:?}"));
    }
    t.finish("UP words")
}
