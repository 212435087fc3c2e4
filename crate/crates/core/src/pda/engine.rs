//! Acceptance by saturation of the pushdown system obtained by pairing each
//! automaton state with a position in the input.
//!
//! A head is a control (state, position) together with a top symbol. For every
//! reachable head we compute its pop summaries: the controls reachable once the
//! top symbol has been removed. Heads are linked by edges labelled with a two
//! bit mask (bit 0: the move starts in a Büchi state, bit 1: it reads input).
//! An ultimately periodic word is accepted iff some strongly connected set of
//! heads carries both bits on its internal edges. Parallel paths are merged by
//! OR, which is harmless: inside a strongly connected set each of them can be
//! taken infinitely often.

use alloc::{collections::BTreeSet, vec, vec::Vec};
use hashbrown::{hash_map::Entry, HashMap, HashSet};

use super::{Rule, StateId, SymbolId};
use crate::words::Letter;

const BUCHI: u8 = 1;
const READ: u8 = 2;

#[derive(Clone, Copy, Debug)]
struct CRule {
    input: Option<Letter>,
    to: u32,
    len: u8,
    push: [u32; 2],
}

/// Rules grouped by (state, top) with pushes of length at most two.
#[derive(Clone, Debug)]
pub struct Compiled {
    nsym: u32,
    initial: u32,
    bottom: u32,
    table: Vec<Vec<CRule>>,
    is_final: Vec<bool>,
    is_buchi: Vec<bool>,
}

impl Compiled {
    #[allow(clippy::too_many_arguments)]
    pub(super) fn new(
        ns: StateId,
        nsym: SymbolId,
        _alphabet: &BTreeSet<Letter>,
        initial: StateId,
        bottom: SymbolId,
        rules: &[Rule],
        finals: &BTreeSet<StateId>,
        buchi: &BTreeSet<StateId>,
    ) -> Self {
        let mut states = ns;
        let mut flat: Vec<(u32, u32, CRule)> = Vec::with_capacity(rules.len());
        for r in rules {
            let k = r.push.len();
            if k <= 2 {
                let mut push = [0; 2];
                push[..k].copy_from_slice(&r.push);
                flat.push((r.from, r.top, CRule { input: r.input, to: r.to, len: k as u8, push }));
                continue;
            }
            // Lay down the bottom two symbols, then grow by one at a time
            // through fresh states.
            let y = &r.push;
            let mut cur = states;
            states += 1;
            flat.push((r.from, r.top, CRule { input: r.input, to: cur, len: 2, push: [y[k - 2], y[k - 1]] }));
            for i in (2..=k - 2).rev() {
                let next = states;
                states += 1;
                flat.push((cur, y[i], CRule { input: None, to: next, len: 2, push: [y[i - 1], y[i]] }));
                cur = next;
            }
            flat.push((cur, y[1], CRule { input: None, to: r.to, len: 2, push: [y[0], y[1]] }));
        }
        let mut table = vec![Vec::new(); (states * nsym) as usize];
        for (q, x, c) in flat {
            table[(q * nsym + x) as usize].push(c);
        }
        let mut is_final = vec![false; states as usize];
        let mut is_buchi = vec![false; states as usize];
        for &f in finals {
            is_final[f as usize] = true;
        }
        for &f in buchi {
            is_buchi[f as usize] = true;
        }
        Compiled { nsym, initial, bottom, table, is_final, is_buchi }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Dep {
    /// `src` replaced its top by this head's symbol.
    Replace { src: u32, mask: u8 },
    /// `src` pushed this head's symbol above `z`.
    PushFirst { src: u32, z: u32, mask: u8 },
    /// `src` pushed two symbols and the upper one has been popped.
    PushSecond { src: u32, mask: u8 },
}

enum Event {
    Sum { head: u32, ctrl: u32, mask: u8 },
    Dep { head: u32, dep: Dep },
}

#[derive(Default)]
struct Scratch {
    index: HashMap<u64, u32>,
    heads: Vec<(u32, u32)>,
    deps: Vec<Vec<Dep>>,
    sums: Vec<Vec<(u32, u8)>>,
    dep_seen: HashSet<(u32, Dep)>,
    edges: HashMap<(u32, u32), u8>,
    explore: Vec<u32>,
    events: Vec<Event>,
}

impl Scratch {
    fn clear(&mut self) {
        self.index.clear();
        self.heads.clear();
        self.deps.clear();
        self.sums.clear();
        self.dep_seen.clear();
        self.edges.clear();
        self.explore.clear();
        self.events.clear();
    }
}

/// Reusable acceptance checker for one automaton.
pub struct Checker<'a> {
    c: &'a Compiled,
    s: Scratch,
}

/// The input laid out as positions: a finite word has `n + 1` positions and
/// no letter at the last one, a lasso wraps from its end back to the period start.
struct Tape<'w> {
    stem: &'w [Letter],
    period: &'w [Letter],
    finite: bool,
}

impl Tape<'_> {
    fn positions(&self) -> u32 {
        (self.stem.len() + self.period.len() + usize::from(self.finite)) as u32
    }
    fn letter(&self, pos: u32) -> Option<Letter> {
        let p = pos as usize;
        if p < self.stem.len() {
            Some(self.stem[p])
        } else {
            self.period.get(p - self.stem.len()).copied()
        }
    }
    fn next(&self, pos: u32) -> u32 {
        let n = (self.stem.len() + self.period.len()) as u32;
        if !self.finite && pos + 1 == n {
            self.stem.len() as u32
        } else {
            pos + 1
        }
    }
}

impl<'a> Checker<'a> {
    pub fn new(c: &'a Compiled) -> Self {
        Checker { c, s: Scratch::default() }
    }

    pub fn accepts_finite(&mut self, w: &[Letter]) -> bool {
        let tape = Tape { stem: w, period: &[], finite: true };
        let n = w.len() as u32;
        let p = tape.positions();
        self.saturate(&tape);
        let c = self.c;
        let good = |ctrl: u32| ctrl % p == n && c.is_final[(ctrl / p) as usize];
        self.s.heads.iter().any(|&(ctrl, _)| good(ctrl)) || self.s.sums[0].iter().any(|&(ctrl, _)| good(ctrl))
    }

    /// `period` must be nonempty.
    pub fn accepts_up(&mut self, stem: &[Letter], period: &[Letter]) -> bool {
        assert!(!period.is_empty(), "ultimately periodic word with empty period");
        let tape = Tape { stem, period, finite: false };
        self.saturate(&tape);
        self.has_accepting_cycle()
    }

    fn head_id(&mut self, ctrl: u32, sym: u32) -> u32 {
        let key = u64::from(ctrl) * u64::from(self.c.nsym) + u64::from(sym);
        match self.s.index.entry(key) {
            Entry::Occupied(e) => *e.get(),
            Entry::Vacant(e) => {
                let id = self.s.heads.len() as u32;
                e.insert(id);
                self.s.heads.push((ctrl, sym));
                self.s.deps.push(Vec::new());
                self.s.sums.push(Vec::new());
                self.s.explore.push(id);
                id
            }
        }
    }

    fn edge(&mut self, a: u32, b: u32, mask: u8) {
        *self.s.edges.entry((a, b)).or_insert(0) |= mask;
    }

    fn saturate(&mut self, tape: &Tape<'_>) {
        self.s.clear();
        let p = tape.positions();
        let c = self.c;
        self.head_id(c.initial * p, c.bottom);
        loop {
            if let Some(ev) = self.s.events.pop() {
                self.handle(ev, p);
                continue;
            }
            let Some(h) = self.s.explore.pop() else { break };
            let (ctrl, x) = self.s.heads[h as usize];
            let (q, pos) = (ctrl / p, ctrl % p);
            let here = tape.letter(pos);
            let base = if c.is_buchi[q as usize] { BUCHI } else { 0 };
            for r in &c.table[(q * c.nsym + x) as usize] {
                let (npos, mask) = match r.input {
                    None => (pos, base),
                    Some(l) if Some(l) == here => (tape.next(pos), base | READ),
                    Some(_) => continue,
                };
                let to = r.to * p + npos;
                match r.len {
                    0 => self.s.events.push(Event::Sum { head: h, ctrl: to, mask }),
                    1 => {
                        let t = self.head_id(to, r.push[0]);
                        self.edge(h, t, mask);
                        self.s.events.push(Event::Dep { head: t, dep: Dep::Replace { src: h, mask } });
                    }
                    _ => {
                        let t = self.head_id(to, r.push[0]);
                        self.edge(h, t, mask);
                        self.s.events.push(Event::Dep { head: t, dep: Dep::PushFirst { src: h, z: r.push[1], mask } });
                    }
                }
            }
        }
    }

    fn handle(&mut self, ev: Event, p: u32) {
        match ev {
            Event::Sum { head, ctrl, mask } => {
                let sums = &mut self.s.sums[head as usize];
                let m = match sums.iter_mut().find(|e| e.0 == ctrl) {
                    Some(e) if e.1 | mask == e.1 => return,
                    Some(e) => {
                        e.1 |= mask;
                        e.1
                    }
                    None => {
                        sums.push((ctrl, mask));
                        mask
                    }
                };
                for i in 0..self.s.deps[head as usize].len() {
                    let d = self.s.deps[head as usize][i];
                    self.apply(d, ctrl, m, p);
                }
            }
            Event::Dep { head, dep } => {
                if !self.s.dep_seen.insert((head, dep)) {
                    return;
                }
                self.s.deps[head as usize].push(dep);
                for i in 0..self.s.sums[head as usize].len() {
                    let (ctrl, m) = self.s.sums[head as usize][i];
                    self.apply(dep, ctrl, m, p);
                }
            }
        }
    }

    fn apply(&mut self, d: Dep, ctrl: u32, m: u8, _p: u32) {
        match d {
            Dep::Replace { src, mask } | Dep::PushSecond { src, mask } => {
                self.s.events.push(Event::Sum { head: src, ctrl, mask: mask | m });
            }
            Dep::PushFirst { src, z, mask } => {
                let t = self.head_id(ctrl, z);
                self.edge(src, t, mask | m);
                self.s.events.push(Event::Dep { head: t, dep: Dep::PushSecond { src, mask: mask | m } });
            }
        }
    }

    // Tarjan over the head graph; a component is accepting when its internal
    // edges together carry both mask bits.
    fn has_accepting_cycle(&self) -> bool {
        let n = self.s.heads.len();
        let mut adj: Vec<Vec<(u32, u8)>> = vec![Vec::new(); n];
        for (&(a, b), &m) in &self.s.edges {
            adj[a as usize].push((b, m));
        }
        const UNSEEN: u32 = u32::MAX;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0u32; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![UNSEEN; n];
        let mut stack: Vec<u32> = Vec::new();
        let mut call: Vec<(u32, usize)> = Vec::new();
        let mut counter = 0u32;
        let mut ncomp = 0u32;
        for root in 0..n as u32 {
            if index[root as usize] != UNSEEN {
                continue;
            }
            call.push((root, 0));
            index[root as usize] = counter;
            low[root as usize] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root as usize] = true;
            while let Some(&mut (v, ref mut i)) = call.last_mut() {
                if let Some(&(w, _)) = adj[v as usize].get(*i) {
                    *i += 1;
                    if index[w as usize] == UNSEEN {
                        index[w as usize] = counter;
                        low[w as usize] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w as usize] = true;
                        call.push((w, 0));
                    } else if on_stack[w as usize] {
                        low[v as usize] = low[v as usize].min(index[w as usize]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u as usize] = low[u as usize].min(low[v as usize]);
                }
                if low[v as usize] == index[v as usize] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w as usize] = false;
                        comp[w as usize] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
        let mut acc = vec![0u8; ncomp as usize];
        for (&(a, b), &m) in &self.s.edges {
            if comp[a as usize] == comp[b as usize] {
                acc[comp[a as usize] as usize] |= m;
            }
        }
        acc.contains(&(BUCHI | READ))
    }
}
