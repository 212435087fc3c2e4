//! Automata for the set operations: the `d`-flag, sums, the two eraser
//! exponentiations, the bullet operation, and the grid language `𝒞^e`.
//!
//! The eraser automata read each letter either as a survivor, simulated by
//! the operand, or as a letter that some later eraser removes. Removed letters
//! and their erasers nest like brackets, so a marker `P` on the stack stands
//! for every letter still waiting for its eraser. Survivors can only be read
//! when no marker is pending.

use alloc::{
    collections::{BTreeMap, BTreeSet},
    format,
    string::String,
    vec::Vec,
};

use super::{
    named::{l_union, make_named, r_frame, CodeAlphabet, Named},
    ops, FiniteAutomaton, Pda, PdaBuilder, PdaError, StateId, SymbolId,
};
use crate::words::{EraserMode, Letter, SEP_B, SEP_C};

/// `A^d`: words whose trace without `d` is in `A`.
pub fn build_d_pda(a: &Pda, d: Letter) -> Result<Pda, PdaError> {
    ops::enrich(a, &BTreeSet::from([d]))
}

/// Alphabets of a sum `B + A` over the letters `all`.
#[derive(Clone, Debug)]
pub struct SumAlphabets {
    pub all: BTreeSet<Letter>,
    pub a: BTreeSet<Letter>,
    pub b: BTreeSet<Letter>,
    pub plus: BTreeSet<Letter>,
    pub minus: BTreeSet<Letter>,
}

/// `B + A`. Before the first letter of `X₊ ∪ X₋` the word is read by `A`;
/// after it the rest is read by `B` (for `X₊`) or by its complement (for
/// `X₋`). Letters outside the alphabet of the reading automaton are skipped.
pub fn build_sum_pda(b: &Pda, b_complement: &Pda, a: &Pda, x: &SumAlphabets) -> Result<Pda, PdaError> {
    let signs: BTreeSet<Letter> = x.plus.union(&x.minus).copied().collect();
    let skip_a: BTreeSet<Letter> = x.all.iter().filter(|l| !signs.contains(l) && !x.a.contains(l)).copied().collect();
    let skip_b: BTreeSet<Letter> = x.all.iter().filter(|l| !x.b.contains(l)).copied().collect();
    let before: Vec<Letter> = x.all.iter().filter(|l| !signs.contains(l)).copied().collect();
    let lead = |sign: &BTreeSet<Letter>| {
        let mut r = FiniteAutomaton::new(2, 0);
        r.add_all(0, &before, 0);
        r.add_all(0, &sign.iter().copied().collect::<Vec<_>>(), 1);
        r.finals.insert(1);
        r
    };
    let first = ops::enrich(a, &skip_a)?;
    let plus = ops::concat_left_regular(&lead(&x.plus), &ops::enrich(b, &skip_b)?)?;
    let minus = ops::concat_left_regular(&lead(&x.minus), &ops::enrich(b_complement, &skip_b)?)?;
    ops::union_all(&[&first, &plus, &minus])
}

// Builder state for the eraser constructions: the operand copied with a
// prefix, plus the shared marker symbols.
struct Frame {
    b: PdaBuilder,
    a_syms: Vec<SymbolId>,
    all_syms: Vec<SymbolId>,
}

impl Frame {
    fn new(a: &Pda, extra: &[&str]) -> Frame {
        let mut b = PdaBuilder::new();
        let a_syms: Vec<SymbolId> = a.symbols().iter().map(|s| b.symbol(&format!("a.{s}"))).collect();
        let mut all_syms = a_syms.clone();
        for e in extra {
            all_syms.push(b.symbol(e));
        }
        Frame { b, a_syms, all_syms }
    }
}

const LOCK: &str = "lock";

/// `A^∼` (mode `Tilde`) or `A^≈` (mode `Approx`) with `eraser` as the
/// back-space and `alph` as the letters it may remove.
pub fn build_tilde_pda(a: &Pda, alph: &BTreeSet<Letter>, eraser: Letter, mode: EraserMode) -> Result<Pda, PdaError> {
    let mut fr = Frame::new(a, &["P"]);
    let p = fr.b.symbol("P");
    let tilde = mode == EraserMode::Tilde;
    let names: Vec<String> = a.states().iter().map(|s| format!("a.{s}")).collect();
    let st = |b: &mut PdaBuilder, q: &str, f: usize, fresh: usize| b.state(&format!("{q}|{f}|{fresh}"));
    for fresh in 0..2 {
        // operand states, then the lock that only balances brackets
        for (qi, q) in names.iter().map(String::as_str).chain([LOCK]).enumerate() {
            let in_a = qi < names.len();
            let flags = if in_a { 2 } else { 1 };
            for f in 0..flags {
                let src = st(&mut fr.b, q, f, fresh);
                let is_buchi = in_a && a.buchi().contains(&(qi as StateId));
                let f2 = if f == 1 && is_buchi { 0 } else { f };
                let stay = st(&mut fr.b, q, f2, fresh);
                for &l in alph {
                    for &y in &fr.all_syms {
                        fr.b.rule(src, Some(l), y, stay, &[p, y]);
                    }
                }
                fr.b.rule(src, Some(eraser), p, stay, &[]);
                if tilde && fresh == 1 {
                    for &y in &fr.a_syms {
                        fr.b.rule(src, Some(eraser), y, stay, &[y]);
                    }
                }
                if !in_a {
                    let done = fr.b.state(&format!("done|{fresh}"));
                    for &y in &fr.a_syms {
                        fr.b.rule(src, None, y, done, &[y]);
                    }
                    continue;
                }
                if is_buchi && f == 1 {
                    fr.b.add_buchi(src);
                }
                for r in a.rules().iter().filter(|r| r.from == qi as StateId) {
                    let to = match r.input {
                        Some(_) => st(&mut fr.b, &names[r.to as usize], 1, 0),
                        None => st(&mut fr.b, &names[r.to as usize], f2, fresh),
                    };
                    let push: Vec<SymbolId> = r.push.iter().map(|&y| fr.a_syms[y as usize]).collect();
                    fr.b.rule(src, r.input, fr.a_syms[r.top as usize], to, &push);
                }
                if a.finals().contains(&(qi as StateId)) {
                    let lock = st(&mut fr.b, LOCK, 0, fresh);
                    for &y in &fr.all_syms {
                        fr.b.rule(src, None, y, lock, &[y]);
                    }
                }
            }
        }
        // `done`: nothing pending above an accepted finite result
        let done = fr.b.state(&format!("done|{fresh}"));
        let lock = st(&mut fr.b, LOCK, 0, fresh);
        for &l in alph {
            for &y in &fr.a_syms {
                fr.b.rule(done, Some(l), y, lock, &[p, y]);
            }
        }
        if tilde && fresh == 1 {
            for &y in &fr.a_syms {
                fr.b.rule(done, Some(eraser), y, lock, &[y]);
            }
        }
        fr.b.add_final(done);
        fr.b.add_buchi(done);
    }
    let init = st(&mut fr.b, &names[a.initial() as usize], 0, 1);
    fr.b.set_initial(init);
    fr.b.set_bottom(fr.a_syms[a.bottom() as usize]);
    fr.b.letters(alph.iter().copied());
    fr.b.letter(eraser);
    fr.b.build()
}

/// The core automaton for `A^•`: correct on every word of the frame `R`
/// whose eraser codes are all well formed, and contained in `R`.
///
/// A letter that will be removed at stage `g` pushes `P G^g`. An eraser code
/// `α B^j C^j D^j E^j β` either waits to be removed itself (then it pushes
/// `P G^g` with `g > j`, counting its `B`s) or acts: its `B`s pop exactly the
/// `G`s of the topmost pending marker, whose `P` then goes. The `C`s and `D`s
/// check against the next marker down that its stage is at most `j`, so a
/// marker only ever sits inside brackets of lower or equal stage; the `C`s
/// pop its `G`s and push `F` for the excess, the `D`s undo this. That is
/// exactly the order in which staged evaluation uses the erasers, highest
/// index first. The run length `n` in `a^n b` is not checked: codes above
/// `n` make the word junk, which the frame part of `A^•` accepts anyway.
pub fn build_bullet_core(a: &Pda, alph: &CodeAlphabet) -> Result<Pda, PdaError> {
    let mut fr = Frame::new(a, &["P", "G", "F"]);
    let (p, g, fsym) = (fr.b.symbol("P"), fr.b.symbol("G"), fr.b.symbol("F"));
    let code = alph.code;
    let (al, be) = (code.alpha(), code.beta());
    let run = |i: usize| code.run(i);
    let names: Vec<String> = a.states().iter().map(|s| format!("a.{s}")).collect();
    let all = fr.all_syms.clone();
    let a_syms = fr.a_syms.clone();
    let b = &mut fr.b;
    let st = |b: &mut PdaBuilder, q: &str, f: usize, ph: &str| b.state(&format!("{q}|{f}|{ph}"));

    for (qi, q) in names.iter().map(String::as_str).chain([LOCK]).enumerate() {
        let in_a = qi < names.len();
        for f in 0..if in_a { 2 } else { 1 } {
            let s = |b: &mut PdaBuilder, ph: &str| st(b, q, f, ph);
            let is_buchi = in_a && a.buchi().contains(&(qi as StateId));
            let f2 = if f == 1 && is_buchi { 0 } else { f };
            let n = s(b, "N");
            let pm = st(b, q, f2, "PM");
            let (pa, aa) = (st(b, q, f2, "PA"), st(b, q, f2, "AA"));
            // normal phase
            for &y in &all {
                for &l in &alph.sigma {
                    b.rule(n, Some(l), y, pm, &[g, p, y]);
                }
                b.rule(n, Some(al), y, pa, &[p, y]);
            }
            b.rule(n, Some(al), g, aa, &[g]);
            if in_a {
                if is_buchi && f == 1 {
                    b.add_buchi(n);
                }
                for r in a.rules().iter().filter(|r| r.from == qi as StateId) {
                    let to = match r.input {
                        Some(_) => st(b, &names[r.to as usize], 1, "N"),
                        None => st(b, &names[r.to as usize], f2, "N"),
                    };
                    let push: Vec<SymbolId> = r.push.iter().map(|&y| a_syms[y as usize]).collect();
                    b.rule(n, r.input, a_syms[r.top as usize], to, &push);
                }
                if a.finals().contains(&(qi as StateId)) {
                    let lock = st(b, LOCK, 0, "N");
                    for &y in &all {
                        b.rule(n, None, y, lock, &[y]);
                    }
                }
            } else {
                let done = b.state("done");
                for &y in &a_syms {
                    b.rule(n, None, y, done, &[y]);
                }
            }
            // the phases below never change the operand state or the flag
            if f != f2 {
                continue;
            }
            let pm = s(b, "PM");
            let back = s(b, "N");
            b.rule(pm, None, g, pm, &[g, g]);
            b.rule(pm, None, g, back, &[g]);
            // pending eraser code
            let ph: Vec<StateId> = ["PA", "PB", "PC", "PD", "PE"].iter().map(|x| s(b, x)).collect();
            for &y in &all {
                b.rule(ph[0], Some(run(0)), y, ph[1], &[g, y]);
                b.rule(ph[1], Some(run(0)), y, ph[1], &[g, y]);
                for k in 1..4 {
                    b.rule(ph[k], Some(run(k)), y, ph[k + 1], &[y]);
                    b.rule(ph[k + 1], Some(run(k)), y, ph[k + 1], &[y]);
                }
                b.rule(ph[4], Some(be), y, pm, &[g, y]);
            }
            // acting eraser code
            let (aa, ab, ap) = (s(b, "AA"), s(b, "AB"), s(b, "AP"));
            b.rule(aa, Some(run(0)), g, ab, &[]);
            b.rule(ab, Some(run(0)), g, ab, &[]);
            b.rule(ab, None, p, ap, &[]);
            // nothing pending below: the rest of the code is free
            let fc: Vec<StateId> = ["FC", "FD", "FE"].iter().map(|x| s(b, x)).collect();
            for &y in &a_syms {
                b.rule(ap, Some(run(1)), y, fc[0], &[y]);
            }
            for &y in &all {
                for k in 0..3 {
                    b.rule(fc[k], Some(run(k + 1)), y, fc[k], &[y]);
                    if k < 2 {
                        b.rule(fc[k], Some(run(k + 2)), y, fc[k + 1], &[y]);
                    }
                }
                b.rule(fc[2], Some(be), y, back, &[y]);
            }
            // a marker below: compare its stage with j
            let (cc, cd, ce) = (s(b, "CC"), s(b, "CD"), s(b, "CE"));
            let c = run(1);
            let d = run(2);
            b.rule(ap, Some(c), g, cc, &[]);
            b.rule(cc, Some(c), g, cc, &[]);
            b.rule(cc, Some(c), p, cc, &[fsym, p]);
            b.rule(cc, Some(c), fsym, cc, &[fsym, fsym]);
            b.rule(cc, Some(d), fsym, cd, &[]);
            b.rule(cc, Some(d), p, cd, &[g, p]);
            b.rule(cd, Some(d), fsym, cd, &[]);
            b.rule(cd, Some(d), p, cd, &[g, p]);
            b.rule(cd, Some(d), g, cd, &[g, g]);
            for &y in &all {
                b.rule(cd, Some(run(3)), y, ce, &[y]);
                b.rule(ce, Some(run(3)), y, ce, &[y]);
                b.rule(ce, Some(be), y, back, &[y]);
            }
        }
    }
    // `done`: the operand accepted a finite word and nothing is pending
    let done = b.state("done");
    let (lpm, lpa) = (st(b, LOCK, 0, "PM"), st(b, LOCK, 0, "PA"));
    for &y in &a_syms {
        for &l in &alph.sigma {
            b.rule(done, Some(l), y, lpm, &[g, p, y]);
        }
        b.rule(done, Some(al), y, lpa, &[p, y]);
    }
    b.add_final(done);
    b.add_buchi(done);
    // the a^n b prefix
    let (s0, s1) = (b.state("start"), b.state("as"));
    let z = a_syms[a.bottom() as usize];
    b.rule(s0, Some(alph.a()), z, s1, &[z]);
    b.rule(s1, Some(alph.a()), z, s1, &[z]);
    let first = st(b, &names[a.initial() as usize], 0, "N");
    b.rule(s1, Some(alph.b()), z, first, &[z]);
    b.set_initial(s0);
    b.set_bottom(z);
    b.letters(alph.boxed());
    fr.b.build()
}

/// `L · (X□)^{≤ω} ∩ R`: words of the frame with a malformed or too large code.
pub fn build_junk_pda(alph: &CodeAlphabet) -> Result<Pda, PdaError> {
    let l = l_union(alph)?;
    let mut b = l.to_builder();
    let tail = b.state("tail");
    let syms: Vec<SymbolId> = (0..l.symbols().len() as u32).collect();
    for &f in l.finals() {
        for &y in &syms {
            b.rule(f, None, y, tail, &[y]);
        }
    }
    for l in alph.boxed() {
        for &y in &syms {
            b.rule(tail, Some(l), y, tail, &[y]);
        }
    }
    b.add_final(tail);
    b.add_buchi(tail);
    ops::intersect_regular(&b.build()?, &r_frame(alph))
}

/// `A^•`, the union of the core automaton and the junk words.
pub fn build_bullet_pda(a: &Pda, alph: &CodeAlphabet) -> Result<Pda, PdaError> {
    ops::union(&build_bullet_core(a, alph)?, &build_junk_pda(alph)?)
}

/// `A^• ∪ a^{≤ω}`, the dual used for complements of bullets.
pub fn build_bullet_dual_pda(a: &Pda, alph: &CodeAlphabet) -> Result<Pda, PdaError> {
    let mut r = FiniteAutomaton::new(1, 0);
    r.add(0, alph.a(), 0);
    r.finals.insert(0);
    r.buchi.insert(0);
    ops::union(&build_bullet_pda(a, alph)?, &r.to_pda())
}

/// `𝒞^e = (Σ* C Σ* B)* (Σ* C) [g(L) ∩ (Σ* B Σ* C)^ω]` with `g(a) = a 𝒟`.
pub fn build_ce(l: &Pda, sigma: &[Letter]) -> Result<Pda, PdaError> {
    if l.buchi().is_empty() {
        return Err(PdaError::NoBuchi);
    }
    let alph = CodeAlphabet::new(sigma.to_vec(), crate::words::EraserCode { level: 0, offset: 0 });
    let d = ops::union(&make_named(Named::D1, &alph)?, &make_named(Named::D2, &alph)?)?;
    let mut images = BTreeMap::new();
    for &a in sigma {
        let mut r = FiniteAutomaton::new(2, 0);
        r.add(0, a, 1);
        r.finals.insert(1);
        images.insert(a, ops::concat_left_regular(&r, &d)?);
    }
    let g = ops::substitute(l, &images)?;
    // (Σ* B Σ* C)^ω
    let mut frame = FiniteAutomaton::new(2, 0);
    frame.add_all(0, sigma, 0);
    frame.add(0, SEP_B, 1);
    frame.add_all(1, sigma, 1);
    frame.add(1, SEP_C, 0);
    frame.buchi.insert(0);
    // (Σ* C Σ* B)* (Σ* C)
    let mut head = FiniteAutomaton::new(3, 0);
    head.add_all(0, sigma, 0);
    head.add(0, SEP_C, 1);
    head.add_all(1, sigma, 1);
    head.add(1, SEP_B, 0);
    head.add(0, SEP_C, 2);
    head.finals.insert(2);
    ops::concat_left_regular(&head, &ops::intersect_regular(&g, &frame)?)
}

/// `𝒞^e ∪ h(Σ^{ω²})⁻`.
pub fn build_sigma_omega_complete(l: &Pda, sigma: &[Letter]) -> Result<Pda, PdaError> {
    let alph = CodeAlphabet::new(sigma.to_vec(), crate::words::EraserCode { level: 0, offset: 0 });
    ops::union(&build_ce(l, sigma)?, &make_named(Named::HComplement, &alph)?)
}
