use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wadgeforge_core::pda::named::{make_named, CodeAlphabet, Named};
use wadgeforge_core::pda::Pda;
use wadgeforge_core::words::{EraserCode, Letter, SEP_B, SEP_C};

use crate::{Outcome, Tally};

const SIGMA: [Letter; 2] = [Letter::Plain('0'), Letter::Plain('1')];

fn alph() -> CodeAlphabet {
    CodeAlphabet::new(SIGMA.to_vec(), EraserCode { level: 1, offset: 0 })
}

// The word after a maximal `a^n b` prefix with n ≥ 1, if it has one and the
// rest avoids `a` and `b`.
fn after_head<'w>(w: &'w [Letter], al: &CodeAlphabet) -> Option<(usize, &'w [Letter])> {
    let n = w.iter().take_while(|&&l| l == al.a()).count();
    if n == 0 || w.get(n) != Some(&al.b()) {
        return None;
    }
    let rest = &w[n + 1..];
    if rest.iter().any(|&l| l == al.a() || l == al.b()) {
        return None;
    }
    Some((n, rest))
}

fn run_len(w: &[Letter], l: Letter) -> usize {
    w.iter().take_while(|&&x| x == l).count()
}

/// `a^n b u R^j` with `j > n`.
fn def_run(w: &[Letter], al: &CodeAlphabet, i: usize) -> bool {
    let Some((n, rest)) = after_head(w, al) else { return false };
    let tail = rest.iter().rev().take_while(|&&l| l == al.code.run(i)).count();
    tail > n
}

/// `u α B^j C^k D^l E^m β`, all runs nonempty, runs `i` and `i+1` differ.
fn def_pair(w: &[Letter], al: &CodeAlphabet, i: usize) -> bool {
    let Some((_, rest)) = after_head(w, al) else { return false };
    if rest.last() != Some(&al.code.beta()) {
        return false;
    }
    let Some(p) = rest.iter().rposition(|&l| l == al.code.alpha()) else { return false };
    let mut seg = &rest[p + 1..rest.len() - 1];
    let mut runs = [0usize; 4];
    for (k, r) in runs.iter_mut().enumerate() {
        *r = run_len(seg, al.code.run(k));
        seg = &seg[*r..];
    }
    seg.is_empty() && runs.iter().all(|&r| r >= 1) && runs[i] != runs[i + 1]
}

fn def_l(w: &[Letter], al: &CodeAlphabet) -> bool {
    (0..4).any(|i| def_run(w, al, i)) || (0..3).any(|i| def_pair(w, al, i))
}

fn split_one(w: &[Letter], sep: Letter, other: Letter) -> Option<(usize, usize)> {
    if w.contains(&other) || w.iter().filter(|&&l| l == sep).count() != 1 {
        return None;
    }
    let p = w.iter().position(|&l| l == sep)?;
    Some((p, w.len() - p - 1))
}

fn def_d1(w: &[Letter]) -> bool {
    split_one(w, SEP_B, SEP_C).is_some_and(|(u, v)| u == v)
}

fn def_d2(w: &[Letter]) -> bool {
    split_one(w, SEP_C, SEP_B).is_some_and(|(w, z)| z == w + 1)
}

fn def_c(w: &[Letter]) -> bool {
    let k = w.iter().filter(|&&l| l == SEP_B || l == SEP_C).count();
    let u = w.iter().rev().take_while(|&&l| l != SEP_B && l != SEP_C).count();
    u != k + 1
}

fn definition(name: Named, w: &[Letter], al: &CodeAlphabet) -> bool {
    match name {
        Named::LB => def_run(w, al, 0),
        Named::LC => def_run(w, al, 1),
        Named::LD => def_run(w, al, 2),
        Named::LE => def_run(w, al, 3),
        Named::LBC => def_pair(w, al, 0),
        Named::LCD => def_pair(w, al, 1),
        Named::LDE => def_pair(w, al, 2),
        Named::L => def_l(w, al),
        Named::D1 => def_d1(w),
        Named::D2 => def_d2(w),
        Named::C => def_c(w),
        _ => unreachable!("not a finitary language"),
    }
}

/// Calls `f` on every word `prefix · v` with `v` over `letters`, `|v| ≤ len`.
fn for_words(prefix: &[Letter], letters: &[Letter], len: usize, f: &mut impl FnMut(&[Letter])) {
    let mut w = prefix.to_vec();
    fn go(w: &mut Vec<Letter>, letters: &[Letter], left: usize, f: &mut impl FnMut(&[Letter])) {
        f(w);
        if left == 0 {
            return;
        }
        for &l in letters {
            w.push(l);
            go(w, letters, left - 1, f);
            w.pop();
        }
    }
    go(&mut w, letters, len, f);
}

fn check_all(t: &mut Tally, name: Named, pda: &Pda, al: &CodeAlphabet, prefix: &[Letter], letters: &[Letter], len: usize) {
    let mut checker = pda.checker();
    for_words(prefix, letters, len, &mut |w| {
        let got = checker.accepts_finite(w);
        t.check(got == definition(name, w, al), || format!("{} on {:?}: automaton says {got}", name.name(), w));
    });
}

pub fn run() -> Outcome {
    let al = alph();
    let mut t = Tally::new();
    let pdas: Vec<(Named, Pda)> = [
        Named::D1,
        Named::D2,
        Named::C,
        Named::LB,
        Named::LC,
        Named::LD,
        Named::LE,
        Named::LBC,
        Named::LCD,
        Named::LDE,
        Named::L,
    ]
    .into_iter()
    .map(|n| (n, make_named(n, &al).expect("named automaton")))
    .collect();
    let grid = [SIGMA[0], SIGMA[1], SEP_B, SEP_C];
    let mut full = al.boxed();
    full.extend([al.a(), al.b()]);
    let codes = [al.code.alpha(), al.code.run(0), al.code.run(1), al.code.run(2), al.code.run(3), al.code.beta()];
    for (name, pda) in &pdas {
        if name.is_grid() {
            // every word of length ≤ 10 over Σ ∪ {B, C}
            check_all(&mut t, *name, pda, &al, &[], &grid, 10);
            continue;
        }
        check_all(&mut t, *name, pda, &al, &[], &full, 5);
        match name {
            Named::LB | Named::LC | Named::LD | Named::LE => {
                let i = [Named::LB, Named::LC, Named::LD, Named::LE].iter().position(|n| n == name).unwrap();
                check_all(&mut t, *name, pda, &al, &[], &[al.a(), al.b(), SIGMA[0], al.code.run(i)], 10);
            }
            _ => {
                // the union repeats its parts' checks, so it gets shorter segments
                let cap = if *name == Named::L { 7 } else { 9 };
                for n in 1..=3 {
                    let mut head = vec![al.a(); n];
                    head.push(al.b());
                    check_all(&mut t, *name, pda, &al, &head, &codes, cap - n);
                }
            }
        }
    }
    // structured random words: heads, base letters and near-miss code segments
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20000 {
        let mut w = vec![al.a(); rng.gen_range(0..4)];
        if rng.gen_bool(0.95) {
            w.push(al.b());
        }
        for _ in 0..rng.gen_range(0..4) {
            if rng.gen_bool(0.3) {
                w.push(SIGMA[rng.gen_range(0..2)]);
                continue;
            }
            w.push(al.code.alpha());
            for k in 0..4 {
                w.extend(std::iter::repeat_n(al.code.run(k), rng.gen_range(0..5)));
            }
            if rng.gen_bool(0.9) {
                w.push(al.code.beta());
            }
        }
        if rng.gen_bool(0.3) {
            w.extend(std::iter::repeat_n(al.code.run(rng.gen_range(0..4)), rng.gen_range(1..6)));
        }
        for (name, pda) in pdas.iter().filter(|(n, _)| !n.is_grid()) {
            let got = pda.accepts_finite(&w);
            t.check(got == definition(*name, &w, &al), || format!("{} on {:?}: automaton says {got}", name.name(), w));
        }
    }
    t.finish("word checks")
}
