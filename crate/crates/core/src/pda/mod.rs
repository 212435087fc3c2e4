//! Pushdown automata with Büchi acceptance on ω-words and final-state
//! acceptance on finite words.
//!
//! A finite word is accepted when some run ends in a final state, whatever the
//! stack holds. An ultimately periodic word is accepted when some run reads
//! the whole word and visits a Büchi state infinitely often. Both questions are
//! decided exactly by [`engine`].

use alloc::{
    collections::{BTreeMap, BTreeSet},
    format,
    string::String,
    vec::Vec,
};
use core::fmt;

use crate::words::{Letter, Word};

pub mod concil_pda;
pub mod engine;
pub mod named;
pub mod ops;

pub use engine::Checker;

pub type StateId = u32;
pub type SymbolId = u32;

/// `(from, input, top) → (to, push)`; `push` lists the new symbols top first,
/// so an empty `push` pops `top` and `[top]` leaves the stack alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub from: StateId,
    pub input: Option<Letter>,
    pub top: SymbolId,
    pub to: StateId,
    pub push: Vec<SymbolId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdaError {
    NoAcceptance,
    NoBuchi,
    NoInitial,
    UnknownState(StateId),
    UnknownSymbol(SymbolId),
    /// A cycle of silent moves that never changes the stack.
    SilentLoop(String),
    /// A substitution image accepts the empty word.
    NotLambdaFree(Letter),
    MissingImage(Letter),
    UnknownName(String),
    Format { line: usize, message: String },
}

impl fmt::Display for PdaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdaError::NoAcceptance => f.write_str("automaton has neither final nor Büchi states"),
            PdaError::NoBuchi => f.write_str("automaton has no Büchi states"),
            PdaError::NoInitial => f.write_str("initial state or stack symbol missing"),
            PdaError::UnknownState(s) => write!(f, "unknown state {s}"),
            PdaError::UnknownSymbol(s) => write!(f, "unknown stack symbol {s}"),
            PdaError::SilentLoop(s) => write!(f, "silent loop without stack change through state {s}"),
            PdaError::NotLambdaFree(l) => write!(f, "image of {l} contains the empty word"),
            PdaError::MissingImage(l) => write!(f, "no image given for letter {l}"),
            PdaError::UnknownName(n) => write!(f, "unknown language name {n}"),
            PdaError::Format { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl core::error::Error for PdaError {}

#[derive(Clone, Debug)]
pub struct Pda {
    states: Vec<String>,
    alphabet: BTreeSet<Letter>,
    symbols: Vec<String>,
    initial: StateId,
    bottom: SymbolId,
    rules: Vec<Rule>,
    finals: BTreeSet<StateId>,
    buchi: BTreeSet<StateId>,
    compiled: engine::Compiled,
}

impl Pda {
    pub fn states(&self) -> &[String] {
        &self.states
    }
    pub fn alphabet(&self) -> &BTreeSet<Letter> {
        &self.alphabet
    }
    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }
    pub fn initial(&self) -> StateId {
        self.initial
    }
    pub fn bottom(&self) -> SymbolId {
        self.bottom
    }
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }
    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }
    pub fn buchi(&self) -> &BTreeSet<StateId> {
        &self.buchi
    }

    /// A reusable checker; cheaper than the one-shot methods for many queries.
    pub fn checker(&self) -> Checker<'_> {
        Checker::new(&self.compiled)
    }

    pub fn accepts_finite(&self, w: &[Letter]) -> bool {
        self.checker().accepts_finite(w)
    }

    /// Büchi acceptance of `stem · period^ω`.
    pub fn accepts_up(&self, stem: &[Letter], period: &[Letter]) -> Result<bool, PdaError> {
        if self.buchi.is_empty() {
            return Err(PdaError::NoBuchi);
        }
        Ok(self.checker().accepts_up(stem, period))
    }

    /// Dispatches on the kind of word. An automaton without Büchi states
    /// accepts no infinite word.
    pub fn accepts(&self, w: &Word) -> bool {
        if w.is_finite() {
            self.accepts_finite(w.stem())
        } else {
            !self.buchi.is_empty() && self.checker().accepts_up(w.stem(), w.period())
        }
    }

    /// Builder pre-loaded with a copy of this automaton.
    pub fn to_builder(&self) -> PdaBuilder {
        let mut b = PdaBuilder::new();
        let map = b.embed(self, "");
        b.set_initial(map.state(self.initial));
        b.set_bottom(map.symbol(self.bottom));
        for &f in &self.finals {
            b.add_final(map.state(f));
        }
        for &f in &self.buchi {
            b.add_buchi(map.state(f));
        }
        b
    }
}

/// Maps ids of an embedded automaton to ids in the builder.
#[derive(Clone, Debug)]
pub struct Embedding {
    states: Vec<StateId>,
    symbols: Vec<SymbolId>,
}

impl Embedding {
    pub fn state(&self, s: StateId) -> StateId {
        self.states[s as usize]
    }
    pub fn symbol(&self, s: SymbolId) -> SymbolId {
        self.symbols[s as usize]
    }
}

/// Incremental construction with interned state and symbol names.
#[derive(Clone, Debug, Default)]
pub struct PdaBuilder {
    states: Vec<String>,
    state_index: BTreeMap<String, StateId>,
    symbols: Vec<String>,
    symbol_index: BTreeMap<String, SymbolId>,
    alphabet: BTreeSet<Letter>,
    rules: BTreeSet<Rule>,
    finals: BTreeSet<StateId>,
    buchi: BTreeSet<StateId>,
    initial: Option<StateId>,
    bottom: Option<SymbolId>,
}

impl PdaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(&id) = self.state_index.get(name) {
            return id;
        }
        let id = self.states.len() as StateId;
        self.states.push(String::from(name));
        self.state_index.insert(String::from(name), id);
        id
    }

    pub fn symbol(&mut self, name: &str) -> SymbolId {
        if let Some(&id) = self.symbol_index.get(name) {
            return id;
        }
        let id = self.symbols.len() as SymbolId;
        self.symbols.push(String::from(name));
        self.symbol_index.insert(String::from(name), id);
        id
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn letter(&mut self, l: Letter) {
        self.alphabet.insert(l);
    }

    pub fn letters(&mut self, ls: impl IntoIterator<Item = Letter>) {
        self.alphabet.extend(ls);
    }

    pub fn rule(&mut self, from: StateId, input: Option<Letter>, top: SymbolId, to: StateId, push: &[SymbolId]) {
        if let Some(l) = input {
            self.alphabet.insert(l);
        }
        self.rules.insert(Rule { from, input, top, to, push: push.to_vec() });
    }

    pub fn set_initial(&mut self, s: StateId) {
        self.initial = Some(s);
    }
    pub fn set_bottom(&mut self, s: SymbolId) {
        self.bottom = Some(s);
    }
    pub fn add_final(&mut self, s: StateId) {
        self.finals.insert(s);
    }
    pub fn add_buchi(&mut self, s: StateId) {
        self.buchi.insert(s);
    }

    /// Copies every state, symbol and rule of `p` under `prefix`; acceptance
    /// sets and the initial configuration are left to the caller.
    pub fn embed(&mut self, p: &Pda, prefix: &str) -> Embedding {
        self.embed_with(p, prefix, |_| true)
    }

    /// As [`embed`](Self::embed) but only copies the rules `keep` selects.
    pub fn embed_with(&mut self, p: &Pda, prefix: &str, keep: impl Fn(&Rule) -> bool) -> Embedding {
        let states = p.states.iter().map(|s| self.state(&format!("{prefix}{s}"))).collect();
        let symbols = p.symbols.iter().map(|s| self.symbol(&format!("{prefix}{s}"))).collect();
        let map = Embedding { states, symbols };
        self.alphabet.extend(p.alphabet.iter().copied());
        for r in p.rules.iter().filter(|r| keep(r)) {
            let push: Vec<SymbolId> = r.push.iter().map(|&s| map.symbol(s)).collect();
            self.rule(map.state(r.from), r.input, map.symbol(r.top), map.state(r.to), &push);
        }
        map
    }

    pub fn build(self) -> Result<Pda, PdaError> {
        let initial = self.initial.ok_or(PdaError::NoInitial)?;
        let bottom = self.bottom.ok_or(PdaError::NoInitial)?;
        let ns = self.states.len() as StateId;
        let nsym = self.symbols.len() as SymbolId;
        if self.finals.is_empty() && self.buchi.is_empty() {
            return Err(PdaError::NoAcceptance);
        }
        for &s in self.finals.iter().chain(&self.buchi).chain(core::iter::once(&initial)) {
            if s >= ns {
                return Err(PdaError::UnknownState(s));
            }
        }
        if bottom >= nsym {
            return Err(PdaError::UnknownSymbol(bottom));
        }
        for r in &self.rules {
            for s in [r.from, r.to] {
                if s >= ns {
                    return Err(PdaError::UnknownState(s));
                }
            }
            for &y in r.push.iter().chain(core::iter::once(&r.top)) {
                if y >= nsym {
                    return Err(PdaError::UnknownSymbol(y));
                }
            }
        }
        let rules: Vec<Rule> = self.rules.into_iter().collect();
        check_silent_loops(&self.states, nsym, &rules)?;
        let compiled = engine::Compiled::new(ns, nsym, &self.alphabet, initial, bottom, &rules, &self.finals, &self.buchi);
        Ok(Pda {
            states: self.states,
            alphabet: self.alphabet,
            symbols: self.symbols,
            initial,
            bottom,
            rules,
            finals: self.finals,
            buchi: self.buchi,
            compiled,
        })
    }
}

// Rejects cycles of silent rules that leave the stack untouched.
fn check_silent_loops(names: &[String], nsym: SymbolId, rules: &[Rule]) -> Result<(), PdaError> {
    let mut succ: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for r in rules {
        if r.input.is_none() && r.push.as_slice() == [r.top] {
            let a = u64::from(r.from) * u64::from(nsym) + u64::from(r.top);
            let b = u64::from(r.to) * u64::from(nsym) + u64::from(r.top);
            succ.entry(a).or_default().push(b);
        }
    }
    // iterative three-colour DFS
    let mut colour: BTreeMap<u64, u8> = BTreeMap::new();
    for &start in succ.keys() {
        if colour.contains_key(&start) {
            continue;
        }
        let mut stack = alloc::vec![(start, 0usize)];
        colour.insert(start, 1);
        while let Some(&mut (node, ref mut i)) = stack.last_mut() {
            let next = succ.get(&node).and_then(|v| v.get(*i)).copied();
            *i += 1;
            match next {
                Some(n) => match colour.get(&n) {
                    Some(1) => return Err(PdaError::SilentLoop(names[(n / u64::from(nsym)) as usize].clone())),
                    Some(_) => {}
                    None => {
                        colour.insert(n, 1);
                        stack.push((n, 0));
                    }
                },
                None => {
                    colour.insert(node, 2);
                    stack.pop();
                }
            }
        }
    }
    Ok(())
}

/// A nondeterministic finite automaton without silent moves. `finals`
/// governs finite words and `buchi` governs ω-words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAutomaton {
    pub states: usize,
    pub alphabet: BTreeSet<Letter>,
    pub initial: usize,
    pub transitions: Vec<(usize, Letter, usize)>,
    pub finals: BTreeSet<usize>,
    pub buchi: BTreeSet<usize>,
}

impl FiniteAutomaton {
    pub fn new(states: usize, initial: usize) -> Self {
        FiniteAutomaton {
            states,
            alphabet: BTreeSet::new(),
            initial,
            transitions: Vec::new(),
            finals: BTreeSet::new(),
            buchi: BTreeSet::new(),
        }
    }

    pub fn add(&mut self, from: usize, l: Letter, to: usize) {
        self.alphabet.insert(l);
        self.transitions.push((from, l, to));
    }

    pub fn add_all(&mut self, from: usize, ls: &[Letter], to: usize) {
        for &l in ls {
            self.add(from, l, to);
        }
    }

    pub fn accepts_finite(&self, w: &[Letter]) -> bool {
        let mut cur = BTreeSet::from([self.initial]);
        for &l in w {
            cur = self
                .transitions
                .iter()
                .filter(|t| t.1 == l && cur.contains(&t.0))
                .map(|t| t.2)
                .collect();
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|s| self.finals.contains(s))
    }

    /// One stack symbol that is never touched.
    pub fn to_pda(&self) -> Pda {
        let mut b = PdaBuilder::new();
        let ids: Vec<StateId> = (0..self.states).map(|i| b.state(&format!("r{i}"))).collect();
        let z = b.symbol("Z");
        b.letters(self.alphabet.iter().copied());
        for &(from, l, to) in &self.transitions {
            b.rule(ids[from], Some(l), z, ids[to], &[z]);
        }
        b.set_initial(ids[self.initial]);
        b.set_bottom(z);
        for &f in &self.finals {
            b.add_final(ids[f]);
        }
        for &f in &self.buchi {
            b.add_buchi(ids[f]);
        }
        if self.finals.is_empty() && self.buchi.is_empty() {
            // empty language: an unreachable final state keeps validation happy
            let dead = b.state("dead");
            b.add_final(dead);
        }
        b.build().expect("finite automata are always valid pushdown automata")
    }
}
