//! Closure constructions: union, product with a finite automaton, left
//! concatenation by a regular language, λ-free substitution and enrichment
//! by ignored letters.

use alloc::{
    collections::{BTreeMap, BTreeSet, VecDeque},
    format,
    vec::Vec,
};

use super::{FiniteAutomaton, Pda, PdaBuilder, PdaError, Rule, StateId};
use crate::words::Letter;

/// Language union of all operands.
pub fn union_all(ps: &[&Pda]) -> Result<Pda, PdaError> {
    let mut b = PdaBuilder::new();
    let start = b.state("u");
    let z0 = b.symbol("U");
    for (i, p) in ps.iter().enumerate() {
        let m = b.embed(p, &format!("{i}."));
        b.rule(start, None, z0, m.state(p.initial()), &[m.symbol(p.bottom())]);
        for &f in p.finals() {
            b.add_final(m.state(f));
        }
        for &f in p.buchi() {
            b.add_buchi(m.state(f));
        }
    }
    b.set_initial(start);
    b.set_bottom(z0);
    b.build()
}

pub fn union(p: &Pda, q: &Pda) -> Result<Pda, PdaError> {
    union_all(&[p, q])
}

fn rules_by_state(p: &Pda) -> Vec<Vec<&Rule>> {
    let mut by = alloc::vec![Vec::new(); p.states().len()];
    for r in p.rules() {
        by[r.from as usize].push(r);
    }
    by
}

/// Product with `r`. Finite words need both finals; ω-words need both Büchi
/// sets infinitely often, tracked by a flag that waits for `p` then for `r`.
pub fn intersect_regular(p: &Pda, r: &FiniteAutomaton) -> Result<Pda, PdaError> {
    let by = rules_by_state(p);
    let mut delta: BTreeMap<(usize, Letter), Vec<usize>> = BTreeMap::new();
    for &(a, l, c) in &r.transitions {
        delta.entry((a, l)).or_default().push(c);
    }
    let mut b = PdaBuilder::new();
    for s in p.symbols() {
        b.symbol(s);
    }
    b.letters(p.alphabet().iter().filter(|l| r.alphabet.contains(l)).copied());
    let name = |s: StateId, q: usize, f: u8| format!("{}|{q}|{f}", p.states()[s as usize]);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let init = (p.initial(), r.initial, 0u8);
    seen.insert(init);
    queue.push_back(init);
    while let Some((s, q, f)) = queue.pop_front() {
        let id = b.state(&name(s, q, f));
        if p.finals().contains(&s) && r.finals.contains(&q) {
            b.add_final(id);
        }
        if f == 1 && r.buchi.contains(&q) {
            b.add_buchi(id);
        }
        let f2 = match f {
            0 if p.buchi().contains(&s) => 1,
            1 if r.buchi.contains(&q) => 0,
            _ => f,
        };
        for rule in &by[s as usize] {
            let targets: Vec<usize> = match rule.input {
                None => alloc::vec![q],
                Some(l) => delta.get(&(q, l)).cloned().unwrap_or_default(),
            };
            for q2 in targets {
                let next = (rule.to, q2, f2);
                let to = b.state(&name(next.0, next.1, next.2));
                b.rule(id, rule.input, rule.top, to, &rule.push);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    let start = b.state(&name(init.0, init.1, init.2));
    b.set_initial(start);
    b.set_bottom(p.bottom());
    ensure_acceptance(&mut b);
    b.build()
}

// A product can come out with no accepting state at all; the empty language
// is still a valid automaton.
fn ensure_acceptance(b: &mut PdaBuilder) {
    if b.finals.is_empty() && b.buchi.is_empty() {
        let dead = b.state("dead");
        b.add_final(dead);
    }
}

/// `r · L(p)` for a finite-word automaton `r`.
pub fn concat_left_regular(r: &FiniteAutomaton, p: &Pda) -> Result<Pda, PdaError> {
    let mut b = PdaBuilder::new();
    let m = b.embed(p, "p.");
    let z0 = m.symbol(p.bottom());
    let ids: Vec<StateId> = (0..r.states).map(|i| b.state(&format!("r{i}"))).collect();
    b.letters(r.alphabet.iter().copied());
    for &(a, l, c) in &r.transitions {
        b.rule(ids[a], Some(l), z0, ids[c], &[z0]);
    }
    for &f in &r.finals {
        b.rule(ids[f], None, z0, m.state(p.initial()), &[z0]);
    }
    for &f in p.finals() {
        b.add_final(m.state(f));
    }
    for &f in p.buchi() {
        b.add_buchi(m.state(f));
    }
    b.set_initial(ids[r.initial]);
    b.set_bottom(z0);
    b.build()
}

/// Replaces each letter `a` read by `p` with a word of `sigma[a]`.
///
/// A letter move `(s, a, X) → (t, w)` becomes a silent move that pushes
/// `w`, a return marker for `t` and the bottom symbol of the image, then runs
/// the image automaton. Once it reaches a final state it drains its own
/// symbols down to the marker and resumes in `t`.
pub fn substitute(p: &Pda, sigma: &BTreeMap<Letter, Pda>) -> Result<Pda, PdaError> {
    let used: BTreeSet<Letter> = p.rules().iter().filter_map(|r| r.input).collect();
    for &a in &used {
        let img = sigma.get(&a).ok_or(PdaError::MissingImage(a))?;
        if img.accepts_finite(&[]) {
            return Err(PdaError::NotLambdaFree(a));
        }
    }
    let mut b = PdaBuilder::new();
    let pm = b.embed_with(p, "p.", |r| r.input.is_none());
    let mut images = BTreeMap::new();
    for (i, &a) in used.iter().enumerate() {
        let img = &sigma[&a];
        let m = b.embed(img, &format!("s{i}."));
        let drain = b.state(&format!("drain{i}"));
        let own: Vec<_> = (0..img.symbols().len() as u32).map(|y| m.symbol(y)).collect();
        for &f in img.finals() {
            for &y in &own {
                b.rule(m.state(f), None, y, drain, &[y]);
            }
        }
        for &y in &own {
            b.rule(drain, None, y, drain, &[]);
        }
        images.insert(a, (m.state(img.initial()), m.symbol(img.bottom()), drain));
    }
    for r in p.rules().iter().filter(|r| r.input.is_some()) {
        let a = r.input.expect("lettered rule");
        let (init, bottom, drain) = images[&a];
        let to = pm.state(r.to);
        let k = b.symbol(&format!("K.{}", p.states()[r.to as usize]));
        b.rule(drain, None, k, to, &[]);
        let mut push = alloc::vec![bottom, k];
        push.extend(r.push.iter().map(|&y| pm.symbol(y)));
        b.rule(pm.state(r.from), None, pm.symbol(r.top), init, &push);
    }
    for &f in p.finals() {
        b.add_final(pm.state(f));
    }
    for &f in p.buchi() {
        b.add_buchi(pm.state(f));
    }
    b.set_initial(pm.state(p.initial()));
    b.set_bottom(pm.symbol(p.bottom()));
    b.build()
}

/// Accepts the words whose trace on the letters outside `ignored` is in
/// `L(p)`. Letters of `ignored` are skipped anywhere; when the trace is
/// finite the word is accepted iff `p` accepts the trace as a finite word.
pub fn enrich(p: &Pda, ignored: &BTreeSet<Letter>) -> Result<Pda, PdaError> {
    let mut b = PdaBuilder::new();
    for s in p.symbols() {
        b.symbol(s);
    }
    let nsym = p.symbols().len() as u32;
    let lock = b.state("lock");
    let mut ids = Vec::new();
    for s in p.states() {
        ids.push([b.state(&format!("{s}|0")), b.state(&format!("{s}|1"))]);
    }
    b.letters(p.alphabet().iter().copied());
    b.letters(ignored.iter().copied());
    for r in p.rules() {
        for f in 0..2usize {
            let reset = f == 1 && p.buchi().contains(&r.from);
            let set = r.input.is_some_and(|l| !ignored.contains(&l));
            let f2 = if set { 1 } else if reset { 0 } else { f };
            b.rule(ids[r.from as usize][f], r.input, r.top, ids[r.to as usize][f2], &r.push);
        }
    }
    for (s, pair) in ids.iter().enumerate() {
        let s = s as StateId;
        for (f, &st) in pair.iter().enumerate() {
            // skipping a letter still counts as leaving a Büchi state
            let after = if f == 1 && p.buchi().contains(&s) { pair[0] } else { st };
            for y in 0..nsym {
                for &d in ignored {
                    b.rule(st, Some(d), y, after, &[y]);
                }
                if p.finals().contains(&s) {
                    b.rule(st, None, y, lock, &[y]);
                }
            }
            if p.finals().contains(&s) {
                b.add_final(st);
            }
        }
        if p.buchi().contains(&s) {
            b.add_buchi(pair[1]);
        }
    }
    for y in 0..nsym {
        for &d in ignored {
            b.rule(lock, Some(d), y, lock, &[y]);
        }
    }
    if !p.finals().is_empty() {
        b.add_final(lock);
        b.add_buchi(lock);
    }
    b.set_initial(ids[p.initial() as usize][0]);
    b.set_bottom(p.bottom());
    ensure_acceptance(&mut b);
    b.build()
}
