use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wadgeforge_core::pda::concil_pda::build_ce;
use wadgeforge_core::pda::{Pda, PdaBuilder};
use wadgeforge_core::words::{Letter, Word, SEP_B, SEP_C};

use crate::{Outcome, Tally};

const ZERO: Letter = Letter::Plain('0');
const ONE: Letter = Letter::Plain('1');

/// `(0^n 1^n)^ω`, n ≥ 1 per block.
pub fn blocks_pda() -> Pda {
    let mut b = PdaBuilder::new();
    let (z, x) = (b.symbol("Z"), b.symbol("X"));
    let (r, p, q) = (b.state("between"), b.state("zeros"), b.state("ones"));
    b.rule(r, Some(ZERO), z, p, &[x, z]);
    b.rule(p, Some(ZERO), x, p, &[x, x]);
    b.rule(p, Some(ONE), x, q, &[]);
    b.rule(q, Some(ONE), x, q, &[]);
    b.rule(q, None, z, r, &[z]);
    b.set_initial(r);
    b.set_bottom(z);
    b.add_buchi(r);
    b.build().expect("valid automaton")
}

fn norm(w: &Word, pos: usize) -> usize {
    let (s, p) = (w.stem().len(), w.period().len());
    if pos < s { pos } else { s + (pos - s) % p }
}

/// Membership in `(0^n 1^n)^ω` by parsing blocks until a block start repeats.
pub fn in_blocks(t: &Word) -> bool {
    if t.is_finite() {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    let mut pos = 0;
    let bound = t.stem().len() + 2 * t.period().len() + 2;
    while seen.insert(norm(t, pos)) {
        let n = (0..bound).take_while(|&i| t.letter_at(pos + i) == Some(ZERO)).count();
        if n == 0 || n == bound {
            return false;
        }
        if (0..n).any(|i| t.letter_at(pos + n + i) != Some(ONE)) || t.letter_at(pos + 2 * n) != Some(ZERO) {
            return false;
        }
        pos += 2 * n;
    }
    true
}

fn is_sep(l: Letter) -> bool {
    l == SEP_B || l == SEP_C
}

// Reads the tail starting at `start` as `a₁ u₁ B v₁ a₂ w₂ C z₂ …` with
// |v| = |u| and |z| = |w| + 1; returns the letters a₁ a₂ … as an UP word.
fn parse_tail(w: &Word, start: usize) -> Option<Word> {
    let bound = w.stem().len() + w.period().len() + 1;
    let mut seen: HashMap<(usize, bool, usize), usize> = HashMap::new();
    let mut out = Vec::new();
    let (mut pos, mut expect_b, mut carry) = (start, true, 0usize);
    loop {
        if let Some(&i) = seen.get(&(norm(w, pos), expect_b, carry)) {
            return Some(Word::from_parts(out[..i].to_vec(), out[i..].to_vec()));
        }
        seen.insert((norm(w, pos), expect_b, carry), out.len());
        let len = (0..bound).take_while(|&i| w.letter_at(pos + i).is_some_and(|l| !is_sep(l))).count();
        let sep = w.letter_at(pos + len)?;
        if len == bound || sep != if expect_b { SEP_B } else { SEP_C } || len < carry + 1 {
            return None;
        }
        out.push(w.letter_at(pos + carry)?);
        let rest = len - carry - 1;
        carry = if expect_b { rest } else { rest + 1 };
        pos += len + 1;
        expect_b = !expect_b;
    }
}

/// The definition: some prefix `(Σ* C Σ* B)* Σ* C` followed by a tail that
/// parses into letters forming a word of `L`.
pub fn in_ce(w: &Word) -> bool {
    let limit = w.stem().len() + w.period().len();
    let mut expect_c = true;
    for s in 0..limit {
        let l = w.letter_at(s).expect("infinite word");
        if !is_sep(l) {
            continue;
        }
        if (l == SEP_C) != expect_c {
            return false;
        }
        expect_c = !expect_c;
        if l == SEP_C && parse_tail(w, s + 1).is_some_and(|t| in_blocks(&t)) {
            return true;
        }
    }
    false
}

#[derive(Clone)]
struct Img {
    a: Letter,
    left: Vec<Letter>,
    sep: Letter,
    right: Vec<Letter>,
}

fn rand_sigma(rng: &mut ChaCha8Rng, n: usize) -> Vec<Letter> {
    (0..n).map(|_| if rng.gen_bool(0.5) { ZERO } else { ONE }).collect()
}

fn images(rng: &mut ChaCha8Rng, t: &[Letter], first_b: bool) -> Vec<Img> {
    let mut out = Vec::new();
    for (i, &a) in t.iter().enumerate() {
        let b_type = (i % 2 == 0) == first_b;
        let n = rng.gen_range(0..3);
        let left = rand_sigma(rng, n);
        let right = rand_sigma(rng, if b_type { n } else { n + 1 });
        out.push(Img { a, left, sep: if b_type { SEP_B } else { SEP_C }, right });
    }
    out
}

fn flatten(imgs: &[Img]) -> Vec<Letter> {
    let mut v = Vec::new();
    for i in imgs {
        v.push(i.a);
        v.extend(&i.left);
        v.push(i.sep);
        v.extend(&i.right);
    }
    v
}

fn blocks(rng: &mut ChaCha8Rng, count: usize) -> Vec<Letter> {
    let mut v = Vec::new();
    for _ in 0..count {
        let n = rng.gen_range(1..=3);
        v.extend(std::iter::repeat_n(ZERO, n));
        v.extend(std::iter::repeat_n(ONE, n));
    }
    v
}

pub fn run() -> Outcome {
    let sigma = [ZERO, ONE];
    let pda = build_ce(&blocks_pda(), &sigma).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut t = Tally::new();
    let mut accepted = 0;
    for _ in 0..40 {
        let (ns, np) = (rng.gen_range(0..3), rng.gen_range(1..3));
        let t_stem = blocks(&mut rng, ns);
        let mut t_period = blocks(&mut rng, np);
        t_period.extend(t_period.clone());
        let mut prefix = Vec::new();
        for _ in 0..rng.gen_range(0..3) {
            let (n, m) = (rng.gen_range(0..3), rng.gen_range(0..3));
            prefix.extend(rand_sigma(&mut rng, n));
            prefix.push(SEP_C);
            prefix.extend(rand_sigma(&mut rng, m));
            prefix.push(SEP_B);
        }
        let n = rng.gen_range(0..3);
        prefix.extend(rand_sigma(&mut rng, n));
        prefix.push(SEP_C);
        let stem_imgs = images(&mut rng, &t_stem, true);
        let period_imgs = images(&mut rng, &t_period, t_stem.len().is_multiple_of(2));
        for variant in 0..6 {
            let (mut pre, mut si, mut pi) = (prefix.clone(), stem_imgs.clone(), period_imgs.clone());
            let k = rng.gen_range(0..pi.len());
            match variant {
                0 => {}
                // |v| ≠ |u| or |z| ≠ |w| + 1 in one image
                1 => pi[k].right.push(ZERO),
                2 => {
                    let img = si.last_mut().unwrap_or(&mut pi[k]);
                    if img.right.pop().is_none() {
                        img.right.push(ONE);
                    }
                }
                // a letter of t changed
                3 => pi[k].a = if pi[k].a == ZERO { ONE } else { ZERO },
                // prefix no longer ends in C
                4 => *pre.last_mut().unwrap() = SEP_B,
                // separators out of order
                _ => pi[k].sep = if pi[k].sep == SEP_B { SEP_C } else { SEP_B },
            }
            pre.extend(flatten(&si));
            let w = Word::from_parts(pre, flatten(&pi));
            let want = in_ce(&w);
            accepted += want as usize;
            let got = pda.accepts(&w);
            t.check(got == want, || format!("variant {variant} {w}: automaton {got}, definition {want}"));
        }
    }
    if accepted < 40 || accepted == t.checked {
        return Err(format!("unbalanced sample: {accepted} of {} in C^e", t.checked));
    }
    t.finish(&format!("witnesses, {accepted} in C^e"))
}
