//! Finite and ultimately periodic words, eraser evaluation and the two codings.

use alloc::{string::String, vec, vec::Vec};
use core::fmt;

/// A letter. Erasers are back-spaces; markers are letters added by the
/// constructions, tagged with a level so that nested constructions stay apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Plain(char),
    Eraser(u32),
    Marker { tag: char, level: u32 },
}

impl Letter {
    pub fn marker(tag: char, level: u32) -> Letter {
        Letter::Marker { tag, level }
    }

    pub fn is_eraser(&self) -> bool {
        matches!(self, Letter::Eraser(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Plain(c) => write!(f, "{c}"),
            Letter::Eraser(j) => write!(f, "~{j}"),
            Letter::Marker { tag, level: 0 } => write!(f, "[{tag}]"),
            Letter::Marker { tag, level } => write!(f, "[{tag}{level}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    EmptyPeriod,
    Parse { pos: usize, message: &'static str },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::EmptyPeriod => f.write_str("period of an infinite word must be nonempty"),
            WordError::Parse { pos, message } => write!(f, "word parse error at {pos}: {message}"),
        }
    }
}

impl core::error::Error for WordError {}

/// A finite word (`period` empty) or the ω-word `stem · period^ω`.
///
/// Infinite words are canonical: the period is primitive and the stem cannot
/// be shortened by rotating the period, so `==` is equality of ω-words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    stem: Vec<Letter>,
    period: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word { stem: Vec::new(), period: Vec::new() }
    }

    pub fn finite(letters: Vec<Letter>) -> Word {
        Word { stem: letters, period: Vec::new() }
    }

    pub fn up(stem: Vec<Letter>, period: Vec<Letter>) -> Result<Word, WordError> {
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        Ok(canonical(stem, period))
    }

    /// A finite word when `period` is empty, otherwise `stem · period^ω`.
    pub fn from_parts(stem: Vec<Letter>, period: Vec<Letter>) -> Word {
        if period.is_empty() {
            Word::finite(stem)
        } else {
            canonical(stem, period)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// Length of a finite word.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.stem.len())
    }

    pub fn is_empty(&self) -> bool {
        self.stem.is_empty() && self.period.is_empty()
    }

    pub fn letter_at(&self, i: usize) -> Option<Letter> {
        if i < self.stem.len() {
            return Some(self.stem[i]);
        }
        if self.period.is_empty() {
            return None;
        }
        Some(self.period[(i - self.stem.len()) % self.period.len()])
    }

    /// The first `n` letters (fewer if the word is finite and shorter).
    pub fn prefix(&self, n: usize) -> Vec<Letter> {
        (0..n).map_while(|i| self.letter_at(i)).collect()
    }

    /// Every letter occurring in the word.
    pub fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.stem.iter().chain(self.period.iter())
    }

    /// `prefix · self`.
    pub fn prepend(&self, prefix: &[Letter]) -> Word {
        let mut stem = prefix.to_vec();
        stem.extend_from_slice(&self.stem);
        Word::from_parts(stem, self.period.clone())
    }

    /// Applies a letter-to-letter map to the whole word.
    pub fn map(&self, f: impl Fn(Letter) -> Letter) -> Word {
        Word::from_parts(
            self.stem.iter().map(|&l| f(l)).collect(),
            self.period.iter().map(|&l| f(l)).collect(),
        )
    }

    pub fn parse(text: &str) -> Result<Word, WordError> {
        let t = text.trim();
        if let Some(body) = t.strip_suffix(")^w") {
            let open = body.rfind('(').ok_or(WordError::Parse { pos: 0, message: "missing '('" })?;
            let stem = parse_letters(&body[..open], 0)?;
            let period = parse_letters(&body[open + 1..], open + 1)?;
            return Word::up(stem, period);
        }
        Ok(Word::finite(parse_letters(t, 0)?))
    }
}

fn canonical(stem: Vec<Letter>, period: Vec<Letter>) -> Word {
    let n = period.len();
    let root = (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| period[i] == period[i - d]))
        .unwrap_or(n);
    let mut period = period[..root].to_vec();
    let mut stem = stem;
    while stem.last().is_some() && stem.last() == period.last() {
        stem.pop();
        period.rotate_right(1);
    }
    Word { stem, period }
}

/// Parses a letter sequence: plain characters, `~` or `~j` erasers,
/// `[t]` / `[tN]` markers. `λ` alone is the empty word.
pub fn parse_letters(text: &str, offset: usize) -> Result<Vec<Letter>, WordError> {
    let mut out = Vec::new();
    if text == "λ" {
        return Ok(out);
    }
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let pos = pos + offset;
        i += 1;
        match c {
            '~' => {
                let mut j: u32 = 0;
                let mut digits = false;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    let d = chars[i].1 as u32 - '0' as u32;
                    j = j
                        .checked_mul(10)
                        .and_then(|j| j.checked_add(d))
                        .ok_or(WordError::Parse { pos, message: "eraser index too large" })?;
                    digits = true;
                    i += 1;
                }
                if digits && j == 0 {
                    return Err(WordError::Parse { pos, message: "eraser index must be positive" });
                }
                out.push(Letter::Eraser(if digits { j } else { 1 }));
            }
            '[' => {
                let tag = chars.get(i).map(|c| c.1).ok_or(WordError::Parse { pos, message: "unterminated marker" })?;
                i += 1;
                let mut level: u32 = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    level = level
                        .checked_mul(10)
                        .and_then(|l| l.checked_add(chars[i].1 as u32 - '0' as u32))
                        .ok_or(WordError::Parse { pos, message: "marker level too large" })?;
                    i += 1;
                }
                if chars.get(i).map(|c| c.1) != Some(']') {
                    return Err(WordError::Parse { pos, message: "expected ']'" });
                }
                i += 1;
                out.push(Letter::Marker { tag, level });
            }
            '(' | ')' | ']' | '^' => return Err(WordError::Parse { pos, message: "reserved character" }),
            c if c.is_whitespace() => {}
            c => out.push(Letter::Plain(c)),
        }
    }
    Ok(out)
}

pub fn letters_to_string(letters: &[Letter]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for l in letters {
        let _ = write!(s, "{l}");
    }
    s
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("λ");
        }
        f.write_str(&letters_to_string(&self.stem))?;
        if !self.period.is_empty() {
            write!(f, "({})^w", letters_to_string(&self.period))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EraserMode {
    /// Popping an empty stack does nothing.
    Tilde,
    /// Popping an empty stack makes the result undefined.
    Approx,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Undefined,
    /// The word is longer than the configured step bound.
    NoStabilization { limit: usize },
    /// More than one eraser index occurs where exactly one was expected.
    SeveralErasers,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Undefined => f.write_str("undefined"),
            EvalError::NoStabilization { limit } => write!(f, "no stabilization within {limit} steps"),
            EvalError::SeveralErasers => f.write_str("word contains several eraser indices"),
        }
    }
}

impl core::error::Error for EvalError {}

pub const DEFAULT_STEP_LIMIT: usize = 1_000_000;

// Runs `letters` on `stack`. Returns the number of pops on an empty stack.
fn run_stack(stack: &mut Vec<Letter>, letters: &[Letter], eraser: Letter) -> usize {
    let mut misses = 0;
    for &l in letters {
        if l == eraser {
            if stack.pop().is_none() {
                misses += 1;
            }
        } else {
            stack.push(l);
        }
    }
    misses
}

/// Evaluates `w` using `Eraser(j)` as the back-space; all other letters,
/// including other erasers, are ordinary.
pub fn eraser_eval_index(w: &Word, j: u32, mode: EraserMode, limit: usize) -> Result<Word, EvalError> {
    if w.stem.len() + w.period.len() > limit {
        return Err(EvalError::NoStabilization { limit });
    }
    let eraser = Letter::Eraser(j);
    let mut stack = Vec::new();
    if run_stack(&mut stack, &w.stem, eraser) > 0 && mode == EraserMode::Approx {
        return Err(EvalError::Undefined);
    }
    if w.is_finite() {
        return Ok(Word::finite(stack));
    }
    // One period acts on a tall enough stack as k pops followed by pushing p.
    let mut p = Vec::new();
    let k = run_stack(&mut p, &w.period, eraser);
    if mode == EraserMode::Approx && (stack.len() < k || p.len() < k) {
        return Err(EvalError::Undefined);
    }
    let base = &stack[..stack.len().saturating_sub(k)];
    if p.len() > k {
        Ok(Word::from_parts(base.to_vec(), p[..p.len() - k].to_vec()))
    } else if p.len() == k {
        Ok(Word::finite(base.to_vec()))
    } else {
        Ok(Word::empty())
    }
}

/// Evaluates a word containing at most one eraser index.
pub fn eraser_eval(w: &Word, mode: EraserMode) -> Result<Word, EvalError> {
    let mut index = None;
    for l in w.letters() {
        if let Letter::Eraser(j) = l {
            match index {
                None => index = Some(*j),
                Some(i) if i != *j => return Err(EvalError::SeveralErasers),
                _ => {}
            }
        }
    }
    match index {
        None => Ok(w.clone()),
        Some(j) => eraser_eval_index(w, j, mode, DEFAULT_STEP_LIMIT),
    }
}

/// Applies erasers `hi`, `hi-1`, ..., `lo` in turn.
pub fn staged_eval_range(w: &Word, lo: u32, hi: u32, mode: EraserMode, limit: usize) -> Result<Word, EvalError> {
    let mut cur = w.clone();
    for j in (lo..=hi).rev() {
        cur = eraser_eval_index(&cur, j, mode, limit)?;
    }
    Ok(cur)
}

/// Applies erasers `n` down to `1`.
pub fn staged_eval(w: &Word, n: u32, mode: EraserMode) -> Result<Word, EvalError> {
    staged_eval_range(w, 1, n, mode, DEFAULT_STEP_LIMIT)
}

pub fn remove_letter(w: &Word, d: Letter) -> Word {
    let stem: Vec<Letter> = w.stem.iter().copied().filter(|&l| l != d).collect();
    let period: Vec<Letter> = w.period.iter().copied().filter(|&l| l != d).collect();
    Word::from_parts(stem, period)
}

/// Where eraser codes live: the marker level of `α B C D E β`, and the index
/// offset so that code `j` stands for `Eraser(offset + j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EraserCode {
    pub level: u32,
    pub offset: u32,
}

pub const ALPHA: char = 'α';
pub const BETA: char = 'β';
pub const CODE_TAGS: [char; 4] = ['B', 'C', 'D', 'E'];

impl EraserCode {
    pub fn alpha(&self) -> Letter {
        Letter::marker(ALPHA, self.level)
    }
    pub fn beta(&self) -> Letter {
        Letter::marker(BETA, self.level)
    }
    /// Marker `B`, `C`, `D` or `E` for `i` = 0..4.
    pub fn run(&self, i: usize) -> Letter {
        Letter::marker(CODE_TAGS[i], self.level)
    }
    /// All six code letters.
    pub fn letters(&self) -> [Letter; 6] {
        [self.alpha(), self.run(0), self.run(1), self.run(2), self.run(3), self.beta()]
    }

    pub fn encode_one(&self, j: u32) -> Vec<Letter> {
        let mut out = vec![self.alpha()];
        for i in 0..4 {
            out.extend(core::iter::repeat_n(self.run(i), j as usize));
        }
        out.push(self.beta());
        out
    }
}

fn encode_letters(letters: &[Letter], code: EraserCode) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        match l {
            Letter::Eraser(j) if j > code.offset => out.extend(code.encode_one(j - code.offset)),
            other => out.push(other),
        }
    }
    out
}

/// Replaces every eraser above `code.offset` by its marker code.
pub fn encode_erasers(w: &Word, code: EraserCode) -> Word {
    Word::from_parts(encode_letters(&w.stem, code), encode_letters(&w.period, code))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Malformed {
    /// Letters do not follow `α B+ C+ D+ E+ β` (or a stray code letter).
    Shape,
    /// A segment is still open when the word ends.
    Unterminated,
    JK,
    KL,
    LM,
    IndexTooLarge { j: u32, n: u32 },
}

impl Malformed {
    /// True for the failures that keep the word inside the regular frame
    /// (a segment that is well shaped but codes no usable eraser).
    pub fn is_count_failure(&self) -> bool {
        matches!(self, Malformed::JK | Malformed::KL | Malformed::LM | Malformed::IndexTooLarge { .. })
    }
}

impl fmt::Display for Malformed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Malformed::Shape => f.write_str("shape"),
            Malformed::Unterminated => f.write_str("unterminated segment"),
            Malformed::JK => f.write_str("j!=k"),
            Malformed::KL => f.write_str("k!=l"),
            Malformed::LM => f.write_str("l!=m"),
            Malformed::IndexTooLarge { j, n } => write!(f, "index {j} > {n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Scan {
    Outside,
    // phase 0 means just after α; phases 1..=4 count runs of B, C, D, E.
    Inside { phase: u8, counts: [u32; 4] },
}

struct Decoder {
    code: EraserCode,
    n: u32,
    state: Scan,
    first_count_failure: Option<Malformed>,
}

impl Decoder {
    fn step(&mut self, l: Letter, out: &mut Vec<Letter>) -> Result<(), Malformed> {
        let phase_of = |l: Letter| match l {
            Letter::Marker { tag, level } if level == self.code.level => {
                CODE_TAGS.iter().position(|&t| t == tag).map(|p| p as u8 + 1)
            }
            _ => None,
        };
        match self.state {
            Scan::Outside => {
                if l == self.code.alpha() {
                    self.state = Scan::Inside { phase: 0, counts: [0; 4] };
                } else if l == self.code.beta() || phase_of(l).is_some() {
                    return Err(Malformed::Shape);
                } else {
                    out.push(l);
                }
            }
            Scan::Inside { phase, mut counts } => {
                if l == self.code.beta() {
                    if phase != 4 {
                        return Err(Malformed::Shape);
                    }
                    self.state = Scan::Outside;
                    let [j, k, ll, m] = counts;
                    let failure = if j != k {
                        Some(Malformed::JK)
                    } else if k != ll {
                        Some(Malformed::KL)
                    } else if ll != m {
                        Some(Malformed::LM)
                    } else if j > self.n {
                        Some(Malformed::IndexTooLarge { j, n: self.n })
                    } else {
                        None
                    };
                    match failure {
                        Some(f) => {
                            self.first_count_failure.get_or_insert(f);
                        }
                        None => out.push(Letter::Eraser(self.code.offset + j)),
                    }
                    return Ok(());
                }
                let p = phase_of(l).ok_or(Malformed::Shape)?;
                if p != phase && p != phase + 1 {
                    return Err(Malformed::Shape);
                }
                counts[p as usize - 1] = counts[p as usize - 1].saturating_add(1);
                self.state = Scan::Inside { phase: p, counts };
            }
        }
        Ok(())
    }
}

/// Inverse of [`encode_erasers`] for codes `1..=n`.
///
/// A shape failure anywhere wins over a count failure, since only the latter
/// leaves the word inside the frame `(Σ ∪ α B+ C+ D+ E+ β)^{≤ω}`.
pub fn decode_erasers(w: &Word, code: EraserCode, n: u32) -> Result<Word, Malformed> {
    let mut dec = Decoder { code, n, state: Scan::Outside, first_count_failure: None };
    let mut stem = Vec::new();
    for &l in &w.stem {
        dec.step(l, &mut stem)?;
    }
    if w.is_finite() {
        if dec.state != Scan::Outside {
            return Err(Malformed::Unterminated);
        }
        return match dec.first_count_failure {
            Some(f) => Err(f),
            None => Ok(Word::finite(stem)),
        };
    }
    // The scanner state at period boundaries repeats within a few periods;
    // the output between two equal boundary states is the decoded period.
    let mut boundaries: Vec<(Scan, usize)> = vec![(dec.state, stem.len())];
    loop {
        for &l in &w.period {
            dec.step(l, &mut stem)?;
        }
        let now = dec.state;
        if let Some(&(_, at)) = boundaries.iter().find(|b| b.0 == now) {
            if let Some(f) = dec.first_count_failure {
                return Err(f);
            }
            let period = stem.split_off(at);
            if period.is_empty() {
                return Err(Malformed::Unterminated);
            }
            return Ok(Word::from_parts(stem, period));
        }
        // Without a closing β in the period an open segment never closes.
        if matches!(now, Scan::Inside { .. }) && !w.period.contains(&code.beta()) {
            return Err(Malformed::Unterminated);
        }
        boundaries.push((now, stem.len()));
    }
}

/// A finite triangular prefix `x(m, n)`, `m + n ≤ depth + 1`, of an ω²-word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridPrefix {
    depth: usize,
    // rows[m-1][n-1] = x(m, n)
    rows: Vec<Vec<Letter>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridError {
    ZeroDepth,
    /// `rows` does not have the triangular shape for its depth.
    Shape,
    OutOfRange { p: usize },
    /// A cell holds one of the separator letters.
    Separator,
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::ZeroDepth => f.write_str("grid depth must be at least 1"),
            GridError::Shape => f.write_str("rows do not form a triangle"),
            GridError::OutOfRange { p } => write!(f, "diagonal {p} is outside the grid"),
            GridError::Separator => f.write_str("grid cells may not use the separators C and B"),
        }
    }
}

impl core::error::Error for GridError {}

pub const SEP_C: Letter = Letter::Plain('C');
pub const SEP_B: Letter = Letter::Plain('B');

impl GridPrefix {
    /// `rows[m-1]` lists `x(m,1) … x(m, depth+1-m)`.
    pub fn new(rows: Vec<Vec<Letter>>) -> Result<GridPrefix, GridError> {
        let depth = rows.len();
        if depth == 0 {
            return Err(GridError::ZeroDepth);
        }
        if rows.iter().enumerate().any(|(i, r)| r.len() != depth - i) {
            return Err(GridError::Shape);
        }
        if rows.iter().flatten().any(|&l| l == SEP_C || l == SEP_B) {
            return Err(GridError::Separator);
        }
        Ok(GridPrefix { depth, rows })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    /// `x(m, n)` with 1-based indices.
    pub fn get(&self, m: usize, n: usize) -> Option<Letter> {
        self.rows.get(m.checked_sub(1)?)?.get(n.checked_sub(1)?).copied()
    }

    /// `x(p,1) x(p-1,2) … x(1,p)`.
    pub fn diag_u(&self, p: usize) -> Result<Vec<Letter>, GridError> {
        if p == 0 || p > self.depth {
            return Err(GridError::OutOfRange { p });
        }
        Ok((1..=p).map(|n| self.rows[p - n][n - 1]).collect())
    }

    pub fn diag_v(&self, p: usize) -> Result<Vec<Letter>, GridError> {
        let mut u = self.diag_u(p)?;
        u.reverse();
        Ok(u)
    }
}

/// The prefix `V₂ C U₃ B V₄ C …` of the diagonal coding, one block per diagonal.
pub fn h_prefix(g: &GridPrefix) -> Vec<Letter> {
    let mut out = Vec::new();
    for p in 1..=g.depth {
        if (p + 1) % 2 == 0 {
            out.extend(g.diag_v(p).unwrap_or_default());
            out.push(SEP_C);
        } else {
            out.extend(g.diag_u(p).unwrap_or_default());
            out.push(SEP_B);
        }
    }
    out
}

/// Inverse of [`h_prefix`]; `None` unless blocks have lengths 1, 2, 3, …
/// and separators alternate `C`, `B`, `C`, ….
pub fn h_decode(w: &[Letter]) -> Option<GridPrefix> {
    let mut diags: Vec<Vec<Letter>> = Vec::new();
    let mut rest = w;
    while !rest.is_empty() {
        let p = diags.len() + 1;
        if rest.len() < p + 1 {
            return None;
        }
        let (block, tail) = rest.split_at(p);
        let sep = if p % 2 == 1 { SEP_C } else { SEP_B };
        if tail[0] != sep || block.iter().any(|&l| l == SEP_C || l == SEP_B) {
            return None;
        }
        let mut u = block.to_vec();
        if p % 2 == 1 {
            u.reverse();
        }
        diags.push(u);
        rest = &tail[1..];
    }
    let depth = diags.len();
    if depth == 0 {
        return None;
    }
    let rows = (1..=depth)
        .map(|m| (1..=depth + 1 - m).map(|n| diags[m + n - 2][n - 1]).collect())
        .collect();
    GridPrefix::new(rows).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(w("ab(ab)^w"), w("(ab)^w"));
        assert_eq!(w("(abab)^w").to_string(), "(ab)^w");
        assert_eq!(w("b(ab)^w"), w("(ba)^w"));
        assert_ne!(w("(ab)^w"), w("(ba)^w"));
        assert_eq!(w("").to_string(), "λ");
        assert_eq!(w("bb(~a)^w").to_string(), "bb(~1a)^w");
        assert_eq!(w("[α2]~3x").stem(), &[Letter::marker('α', 2), Letter::Eraser(3), Letter::Plain('x')]);
    }

    #[test]
    fn eraser_examples() {
        let ev = |s: &str, m| eraser_eval(&w(s), m).map(|x| x.to_string());
        assert_eq!(ev("(a~)^w", EraserMode::Tilde).unwrap(), "λ");
        assert_eq!(ev("(a~~)^w", EraserMode::Tilde).unwrap(), "λ");
        assert_eq!(ev("(ab~)^w", EraserMode::Tilde).unwrap(), "(a)^w");
        assert_eq!(ev("bb(~a)^w", EraserMode::Tilde).unwrap(), "b");
        assert_eq!(ev("~ab", EraserMode::Approx), Err(EvalError::Undefined));
        assert_eq!(ev("~ab", EraserMode::Tilde).unwrap(), "ab");
        assert_eq!(ev("(a~~)^w", EraserMode::Approx), Err(EvalError::Undefined));
        assert_eq!(ev("a~1~2", EraserMode::Tilde), Err(EvalError::SeveralErasers));
    }

    #[test]
    fn staged_examples() {
        let st = |s: &str, n, m| staged_eval(&w(s), n, m).map(|x| x.to_string());
        assert_eq!(st("a~1b", 1, EraserMode::Tilde).unwrap(), "b");
        assert_eq!(st("ab~2~1", 2, EraserMode::Tilde).unwrap(), "λ");
        assert_eq!(st("c~1~2", 2, EraserMode::Approx).unwrap(), "c");
    }

    #[test]
    fn coding_examples() {
        let code = EraserCode { level: 0, offset: 0 };
        let enc = encode_erasers(&w("a~2b"), code);
        assert_eq!(enc.to_string(), "a[α][B][B][C][C][D][D][E][E][β]b");
        assert_eq!(decode_erasers(&enc, code, 2).unwrap(), w("a~2b"));
        assert_eq!(encode_erasers(&w("(~1)^w"), code).to_string(), "([α][B][C][D][E][β])^w");
        assert_eq!(decode_erasers(&w("[α][B][C][C][D][E][β]"), code, 3), Err(Malformed::JK));
        assert_eq!(
            decode_erasers(&encode_erasers(&w("~3"), code), code, 2),
            Err(Malformed::IndexTooLarge { j: 3, n: 2 })
        );
        assert_eq!(decode_erasers(&w("[α]([B])^w"), code, 2), Err(Malformed::Unterminated));
        assert_eq!(decode_erasers(&w("[α][C]"), code, 2), Err(Malformed::Shape));
        // a segment straddling the period boundary
        let straddle = w("x([B][C][D][E][β]a[α])^w");
        assert_eq!(decode_erasers(&straddle, code, 2), Err(Malformed::Shape));
        let ok = w("[α]([B][C][D][E][β]a[α])^w");
        assert_eq!(decode_erasers(&ok, code, 2).unwrap(), w("(~1a)^w"));
    }

    #[test]
    fn remove_examples() {
        let d = Letter::Plain('d');
        assert_eq!(remove_letter(&w("adbd(d)^w"), d), w("ab"));
        assert_eq!(remove_letter(&w("(ad)^w"), d), w("(a)^w"));
        assert_eq!(remove_letter(&w("abc"), d), w("abc"));
    }

    #[test]
    fn grid_examples() {
        let p = Letter::Plain;
        let g = GridPrefix::new(vec![vec![p('a'), p('c')], vec![p('b')]]).unwrap();
        assert_eq!(g.diag_u(1).unwrap(), vec![p('a')]);
        assert_eq!(g.diag_u(2).unwrap(), vec![p('b'), p('c')]);
        assert_eq!(g.diag_v(2).unwrap(), vec![p('c'), p('b')]);
        let h = h_prefix(&g);
        assert_eq!(letters_to_string(&h), "aCbcB");
        assert_eq!(h_decode(&h), Some(g));
        let g1 = GridPrefix::new(vec![vec![p('a')]]).unwrap();
        assert_eq!(letters_to_string(&h_prefix(&g1)), "aC");
        assert_eq!(h_decode(&parse_letters("aCbB", 0).unwrap()), None);
    }
}
