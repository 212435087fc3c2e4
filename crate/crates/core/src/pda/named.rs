//! The fixed languages used by the constructions: the eraser-code languages
//! `L^B … L^(D,E)`, their union `L` and the frame `R`, and the grid languages
//! `𝒟₁`, `𝒟₂`, `𝒞`, `𝒞₁`, `𝒞₂` and the complement of the grid codes.

use alloc::{format, string::String, vec::Vec};
use core::str::FromStr;

use super::{ops, FiniteAutomaton, Pda, PdaBuilder, PdaError, StateId, SymbolId};
use crate::words::{EraserCode, Letter, SEP_B, SEP_C};

/// Letters of the coded words: `a^n b` followed by base letters and eraser
/// codes `α B^j C^j D^j E^j β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeAlphabet {
    pub sigma: Vec<Letter>,
    pub code: EraserCode,
}

impl CodeAlphabet {
    pub fn new(sigma: Vec<Letter>, code: EraserCode) -> Self {
        CodeAlphabet { sigma, code }
    }
    pub fn a(&self) -> Letter {
        Letter::marker('a', self.code.level)
    }
    pub fn b(&self) -> Letter {
        Letter::marker('b', self.code.level)
    }
    /// `Σ ∪ {α, β, B, C, D, E}`.
    pub fn boxed(&self) -> Vec<Letter> {
        let mut v = self.sigma.clone();
        v.extend(self.code.letters());
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Named {
    LB,
    LC,
    LD,
    LE,
    LBC,
    LCD,
    LDE,
    L,
    R,
    C,
    C1,
    C2,
    D1,
    D2,
    HComplement,
}

impl Named {
    pub const ALL: [Named; 15] = [
        Named::LB,
        Named::LC,
        Named::LD,
        Named::LE,
        Named::LBC,
        Named::LCD,
        Named::LDE,
        Named::L,
        Named::R,
        Named::C,
        Named::C1,
        Named::C2,
        Named::D1,
        Named::D2,
        Named::HComplement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Named::LB => "LB",
            Named::LC => "LC",
            Named::LD => "LD",
            Named::LE => "LE",
            Named::LBC => "LBC",
            Named::LCD => "LCD",
            Named::LDE => "LDE",
            Named::L => "L",
            Named::R => "R",
            Named::C => "C",
            Named::C1 => "C1",
            Named::C2 => "C2",
            Named::D1 => "D1",
            Named::D2 => "D2",
            Named::HComplement => "h_complement",
        }
    }

    /// True for the languages over `Σ ∪ {C, B}`.
    pub fn is_grid(self) -> bool {
        matches!(self, Named::C | Named::C1 | Named::C2 | Named::D1 | Named::D2 | Named::HComplement)
    }
}

impl FromStr for Named {
    type Err = PdaError;
    fn from_str(s: &str) -> Result<Self, PdaError> {
        Named::ALL.into_iter().find(|n| n.name() == s).ok_or_else(|| PdaError::UnknownName(String::from(s)))
    }
}

/// Builds a named language; grid languages only look at `alph.sigma`.
pub fn make_named(name: Named, alph: &CodeAlphabet) -> Result<Pda, PdaError> {
    let s = &alph.sigma;
    match name {
        Named::LB => Ok(l_run(alph, 0)),
        Named::LC => Ok(l_run(alph, 1)),
        Named::LD => Ok(l_run(alph, 2)),
        Named::LE => Ok(l_run(alph, 3)),
        Named::LBC => Ok(l_pair(alph, 0)),
        Named::LCD => Ok(l_pair(alph, 1)),
        Named::LDE => Ok(l_pair(alph, 2)),
        Named::L => l_union(alph),
        Named::R => Ok(r_frame(alph).to_pda()),
        Named::C => Ok(grid_c(s, false)),
        Named::C1 => Ok(grid_c1(s).to_pda()),
        Named::C2 => Ok(grid_c(s, true)),
        Named::D1 => Ok(grid_d(s, false)),
        Named::D2 => Ok(grid_d(s, true)),
        Named::HComplement => h_complement(s),
    }
}

pub fn l_union(alph: &CodeAlphabet) -> Result<Pda, PdaError> {
    let parts: Vec<Pda> = (0..4).map(|i| l_run(alph, i)).chain((0..3).map(|i| l_pair(alph, i))).collect();
    ops::union_all(&parts.iter().collect::<Vec<_>>())
}

// Adds `from --l--> to` for every top symbol without touching the stack.
fn any_top(b: &mut PdaBuilder, syms: &[SymbolId], from: StateId, l: Letter, to: StateId) {
    for &y in syms {
        b.rule(from, Some(l), y, to, &[y]);
    }
}

// `a+ b (X□)*` with one X pushed per `a`; ends in the returned state.
fn counted_head(b: &mut PdaBuilder, alph: &CodeAlphabet, z: SymbolId, x: SymbolId) -> StateId {
    let (s0, sa, su) = (b.state("start"), b.state("as"), b.state("body"));
    b.rule(s0, Some(alph.a()), z, sa, &[x, z]);
    b.rule(sa, Some(alph.a()), x, sa, &[x, x]);
    b.rule(sa, Some(alph.b()), x, su, &[x]);
    for l in alph.boxed() {
        b.rule(su, Some(l), x, su, &[x]);
    }
    b.set_initial(s0);
    b.set_bottom(z);
    su
}

/// `a^n b u R^j` with `j > n` for the run letter `R` number `i`.
fn l_run(alph: &CodeAlphabet, i: usize) -> Pda {
    let mut b = PdaBuilder::new();
    let (z, x) = (b.symbol("Z"), b.symbol("X"));
    let body = counted_head(&mut b, alph, z, x);
    let (count, done) = (b.state("count"), b.state("done"));
    let r = alph.code.run(i);
    b.rule(body, None, x, count, &[x]);
    b.rule(count, Some(r), x, count, &[]);
    b.rule(count, Some(r), z, done, &[z]);
    b.rule(done, Some(r), z, done, &[z]);
    b.add_final(done);
    b.build().expect("valid automaton")
}

/// `u α B^j C^k D^l E^m β` with the runs `i` and `i + 1` of different length.
fn l_pair(alph: &CodeAlphabet, i: usize) -> Pda {
    let mut b = PdaBuilder::new();
    let (z, x) = (b.symbol("Z"), b.symbol("X"));
    let body = {
        // the a^n b prefix does not count anything here
        let (s0, sa, su) = (b.state("start"), b.state("as"), b.state("body"));
        b.rule(s0, Some(alph.a()), z, sa, &[z]);
        b.rule(sa, Some(alph.a()), z, sa, &[z]);
        b.rule(sa, Some(alph.b()), z, su, &[z]);
        for l in alph.boxed() {
            b.rule(su, Some(l), z, su, &[z]);
        }
        b.set_initial(s0);
        b.set_bottom(z);
        su
    };
    let syms = [z, x];
    let run = |k: usize| alph.code.run(k);
    // free runs before i
    let mut cur = b.state("alpha");
    b.rule(body, Some(alph.code.alpha()), z, cur, &[z]);
    for k in 0..i {
        let st = b.state(&format!("free{k}"));
        b.rule(cur, Some(run(k)), z, st, &[z]);
        b.rule(st, Some(run(k)), z, st, &[z]);
        cur = st;
    }
    // run i pushes, run i + 1 pops
    let push = b.state("push");
    b.rule(cur, Some(run(i)), z, push, &[x, z]);
    b.rule(push, Some(run(i)), x, push, &[x, x]);
    let pop = b.state("pop");
    b.rule(push, Some(run(i + 1)), x, pop, &[]);
    b.rule(pop, Some(run(i + 1)), x, pop, &[]);
    // second run longer: it finds the bottom while still reading
    let over = b.state("over");
    b.rule(pop, Some(run(i + 1)), z, over, &[z]);
    b.rule(over, Some(run(i + 1)), z, over, &[z]);
    // second run shorter: the next letter comes with X still on top
    let next = if i + 2 < 4 { run(i + 2) } else { alph.code.beta() };
    let done = b.state("done");
    let first_after = if i + 2 < 4 { b.state(&format!("free{}", i + 2)) } else { done };
    b.rule(pop, Some(next), x, first_after, &[x]);
    b.rule(over, Some(next), z, first_after, &[z]);
    let mut cur = first_after;
    for k in (i + 2)..4 {
        // cur has just read one letter of run k
        any_top(&mut b, &syms, cur, run(k), cur);
        let nxt = if k + 1 < 4 { b.state(&format!("free{}", k + 1)) } else { done };
        let l = if k + 1 < 4 { run(k + 1) } else { alph.code.beta() };
        any_top(&mut b, &syms, cur, l, nxt);
        cur = nxt;
    }
    b.add_final(done);
    b.build().expect("valid automaton")
}

/// `a+ b (Σ ∪ α B+ C+ D+ E+ β)^{≤ω}`; state `out` is final and Büchi.
pub fn r_frame(alph: &CodeAlphabet) -> FiniteAutomaton {
    // 0 start, 1 reading a's, 2 out, 3 after α, 4..=7 inside runs B..E
    let mut r = FiniteAutomaton::new(8, 0);
    r.add(0, alph.a(), 1);
    r.add(1, alph.a(), 1);
    r.add(1, alph.b(), 2);
    r.add_all(2, &alph.sigma, 2);
    r.add(2, alph.code.alpha(), 3);
    for k in 0..4 {
        let from = if k == 0 { 3 } else { 3 + k };
        r.add(from, alph.code.run(k), 4 + k);
        r.add(4 + k, alph.code.run(k), 4 + k);
    }
    r.add(7, alph.code.beta(), 2);
    r.finals.insert(2);
    r.buchi.insert(2);
    r
}

/// `𝒟₁ = {u B v : |u| = |v|}` or, with `second`, `𝒟₂ = {w C z : |z| = |w| + 1}`.
fn grid_d(sigma: &[Letter], second: bool) -> Pda {
    let mut b = PdaBuilder::new();
    let (z, x) = (b.symbol("Z"), b.symbol("X"));
    let (p, q, f) = (b.state("left"), b.state("right"), b.state("done"));
    let sep = if second { SEP_C } else { SEP_B };
    for &s in sigma {
        b.rule(p, Some(s), z, p, &[x, z]);
        b.rule(p, Some(s), x, p, &[x, x]);
        b.rule(q, Some(s), x, q, &[]);
        if second {
            b.rule(q, Some(s), z, f, &[z]);
        }
    }
    b.rule(p, Some(sep), z, q, &[z]);
    b.rule(p, Some(sep), x, q, &[x]);
    if !second {
        b.rule(q, None, z, f, &[z]);
    }
    b.set_initial(p);
    b.set_bottom(z);
    b.add_final(f);
    b.build().expect("valid automaton")
}

/// `𝒞 = {w u : w ∈ (Σ*{C,B})^k, u ∈ Σ*, |u| ≠ k + 1}`, and with `tail`
/// the ω-language `𝒞₂ = 𝒞 {C,B} (Σ ∪ {C,B})^ω`.
fn grid_c(sigma: &[Letter], tail: bool) -> Pda {
    let mut b = PdaBuilder::new();
    let (z, x) = (b.symbol("Z"), b.symbol("X"));
    let syms = [z, x];
    let start = b.state("block");
    let mid = b.state("inblock");
    let count = b.state("count");
    let more = b.state("more");
    let less = b.state("less");
    for &s in sigma {
        any_top(&mut b, &syms, start, s, mid);
        any_top(&mut b, &syms, mid, s, mid);
        b.rule(count, Some(s), x, count, &[]);
        b.rule(count, Some(s), z, more, &[z]);
        b.rule(more, Some(s), z, more, &[z]);
    }
    for sep in [SEP_C, SEP_B] {
        for st in [start, mid] {
            b.rule(st, Some(sep), z, start, &[x, z]);
            b.rule(st, Some(sep), x, start, &[x, x]);
        }
    }
    // one more X so that the stack holds k + 1
    b.rule(start, None, z, count, &[x, z]);
    b.rule(start, None, x, count, &[x, x]);
    b.rule(count, None, x, less, &[x]);
    if tail {
        let all = b.state("all");
        for sep in [SEP_C, SEP_B] {
            any_top(&mut b, &syms, more, sep, all);
            any_top(&mut b, &syms, less, sep, all);
        }
        for &l in sigma.iter().chain(&[SEP_C, SEP_B]) {
            any_top(&mut b, &syms, all, l, all);
        }
        b.add_buchi(all);
    } else {
        b.add_final(more);
        b.add_final(less);
    }
    b.set_initial(start);
    b.set_bottom(z);
    b.build().expect("valid automaton")
}

/// Complement of `(Σ* C Σ* B)^ω`: finitely many separators, or two
/// separators out of the alternating order.
fn grid_c1(sigma: &[Letter]) -> FiniteAutomaton {
    // 0 expects C, 1 expects B, 2 broken, 3 no more separators
    let mut r = FiniteAutomaton::new(4, 0);
    r.add_all(0, sigma, 0);
    r.add_all(1, sigma, 1);
    r.add(0, SEP_C, 1);
    r.add(1, SEP_B, 0);
    r.add(0, SEP_B, 2);
    r.add(1, SEP_C, 2);
    r.add_all(2, sigma, 2);
    r.add_all(2, &[SEP_B, SEP_C], 2);
    r.add_all(0, sigma, 3);
    r.add_all(1, sigma, 3);
    r.add_all(3, sigma, 3);
    r.buchi.insert(2);
    r.buchi.insert(3);
    r
}

/// `𝒞₁ ∪ 𝒞₂`, the ω-words over `Σ ∪ {C, B}` that are not grid codes.
pub fn h_complement(sigma: &[Letter]) -> Result<Pda, PdaError> {
    ops::union(&grid_c1(sigma).to_pda(), &grid_c(sigma, true))
}
