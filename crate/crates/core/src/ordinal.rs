//! Ordinals below the ω-th ε-number of a base, kept in hereditary Cantor normal form.
//!
//! The same arithmetic serves two bases: `w` is read as ω when the value is tagged
//! [`Base::Omega`] and as ω₁ when tagged [`Base::Omega1`]. Only cofinality depends
//! on the tag. Values of different bases never mix; every binary operation checks.
//!
//! A term head is either an ε-atom `e<i>` (the i-th fixed point of `x ↦ base^x`)
//! or a power `base^e`. Terms are kept strictly decreasing with positive integer
//! coefficients and `base^(e<i>)` is always folded into `e<i>`, so structural
//! equality coincides with ordinal equality.

use alloc::{boxed::Box, string::String, vec, vec::Vec};
use core::cmp::Ordering;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    /// ω, used for input degrees below ε_ω.
    Omega,
    /// ω₁, used for conciliating degrees below ¹ε_ω.
    Omega1,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Head {
    Eps(u32),
    Pow(Ordinal),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub head: Head,
    pub coeff: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ordinal {
    base: Base,
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cofinality {
    Zero,
    One,
    Omega,
    Omega1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdinalError {
    BaseMismatch,
    ZeroMultiplier,
    ZeroInput,
    Overflow,
    /// Terms handed to [`Ordinal::from_terms`] are not in normal form.
    NotNormal(&'static str),
    Parse { pos: usize, message: String },
}

impl fmt::Display for OrdinalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalError::BaseMismatch => f.write_str("ordinals have different bases"),
            OrdinalError::ZeroMultiplier => f.write_str("multiplier must be at least 1"),
            OrdinalError::ZeroInput => f.write_str("operation is undefined at 0"),
            OrdinalError::Overflow => f.write_str("coefficient overflow"),
            OrdinalError::NotNormal(why) => write!(f, "not in normal form: {why}"),
            OrdinalError::Parse { pos, message } => write!(f, "parse error at {pos}: {message}"),
        }
    }
}

impl core::error::Error for OrdinalError {}

fn cmp_head(a: &Head, b: &Head) -> Ordering {
    match (a, b) {
        (Head::Eps(i), Head::Eps(j)) => i.cmp(j),
        (Head::Eps(i), Head::Pow(e)) => cmp_with_eps(e, *i).reverse(),
        (Head::Pow(e), Head::Eps(i)) => cmp_with_eps(e, *i),
        (Head::Pow(e), Head::Pow(g)) => cmp_terms(&e.terms, &g.terms),
    }
}

// base^e against ε_i has the same outcome as e against ε_i, because ε_i = base^ε_i.
fn cmp_with_eps(e: &Ordinal, i: u32) -> Ordering {
    let Some(lead) = e.terms.first() else {
        return Ordering::Less;
    };
    match cmp_head(&lead.head, &Head::Eps(i)) {
        Ordering::Equal if lead.coeff == 1 && e.terms.len() == 1 => Ordering::Equal,
        Ordering::Equal => Ordering::Greater,
        other => other,
    }
}

fn cmp_terms(a: &[Term], b: &[Term]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = cmp_head(&x.head, &y.head).then(x.coeff.cmp(&y.coeff));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

impl Ordinal {
    pub fn zero(base: Base) -> Self {
        Ordinal { base, terms: Vec::new() }
    }

    pub fn finite(base: Base, n: u64) -> Self {
        if n == 0 {
            return Self::zero(base);
        }
        Ordinal { base, terms: vec![Term { head: Head::Pow(Self::zero(base)), coeff: n }] }
    }

    /// The base itself, `w`.
    pub fn omega(base: Base) -> Self {
        Self::finite(base, 1).base_pow()
    }

    pub fn eps(base: Base, i: u32) -> Self {
        Ordinal { base, terms: vec![Term { head: Head::Eps(i), coeff: 1 }] }
    }

    /// Builds an ordinal from terms, rejecting anything outside normal form.
    pub fn from_terms(base: Base, terms: Vec<Term>) -> Result<Self, OrdinalError> {
        for t in &terms {
            if t.coeff == 0 {
                return Err(OrdinalError::NotNormal("zero coefficient"));
            }
            if let Head::Pow(e) = &t.head {
                if e.base != base {
                    return Err(OrdinalError::BaseMismatch);
                }
                if e.is_fixed_point() {
                    return Err(OrdinalError::NotNormal("power of an epsilon atom"));
                }
            }
        }
        if terms.windows(2).any(|w| cmp_head(&w[0].head, &w[1].head) != Ordering::Greater) {
            return Err(OrdinalError::NotNormal("terms are not strictly decreasing"));
        }
        Ok(Ordinal { base, terms })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [Term { head: Head::Pow(e), coeff }] if e.is_zero() => Some(*coeff),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some(Term { head: Head::Pow(e), .. }) if e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// Writes `self = limit + n` with `limit` zero or a limit ordinal.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        if self.is_successor() {
            let mut terms = self.terms.clone();
            let last = terms.pop().map(|t| t.coeff).unwrap_or(0);
            (Ordinal { base: self.base, terms }, last)
        } else {
            (self.clone(), 0)
        }
    }

    /// The ε-index when `self` is exactly an ε-atom.
    pub fn eps_index(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [Term { head: Head::Eps(i), coeff: 1 }] => Some(*i),
            _ => None,
        }
    }

    pub fn succ(&self) -> Ordinal {
        let mut out = self.clone();
        match out.terms.last_mut() {
            Some(Term { head: Head::Pow(e), coeff }) if e.is_zero() => *coeff += 1,
            _ => out.terms.push(Term { head: Head::Pow(Self::zero(self.base)), coeff: 1 }),
        }
        out
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut out = self.clone();
        let last = out.terms.last_mut()?;
        if last.coeff == 1 {
            out.terms.pop();
        } else {
            last.coeff -= 1;
        }
        Some(out)
    }

    pub fn compare(&self, other: &Ordinal) -> Result<Ordering, OrdinalError> {
        if self.base != other.base {
            return Err(OrdinalError::BaseMismatch);
        }
        Ok(cmp_terms(&self.terms, &other.terms))
    }

    pub fn add(&self, other: &Ordinal) -> Result<Ordinal, OrdinalError> {
        if self.base != other.base {
            return Err(OrdinalError::BaseMismatch);
        }
        let Some(lead) = other.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| cmp_head(&t.head, &lead.head) == Ordering::Greater)
            .cloned()
            .collect();
        let mut rest = other.terms.iter();
        if let Some(same) = self.terms.get(terms.len()).filter(|t| t.head == lead.head) {
            let coeff = same.coeff.checked_add(lead.coeff).ok_or(OrdinalError::Overflow)?;
            terms.push(Term { head: lead.head.clone(), coeff });
            rest.next();
        }
        terms.extend(rest.cloned());
        Ok(Ordinal { base: self.base, terms })
    }

    pub fn mul_nat(&self, m: u64) -> Result<Ordinal, OrdinalError> {
        if m == 0 {
            return Err(OrdinalError::ZeroMultiplier);
        }
        let mut out = self.clone();
        if let Some(lead) = out.terms.first_mut() {
            lead.coeff = lead.coeff.checked_mul(m).ok_or(OrdinalError::Overflow)?;
        }
        Ok(out)
    }

    /// `base^self`.
    pub fn base_pow(&self) -> Ordinal {
        if self.is_fixed_point() {
            return self.clone();
        }
        Ordinal { base: self.base, terms: vec![Term { head: Head::Pow(self.clone()), coeff: 1 }] }
    }

    pub fn cofinality(&self) -> Cofinality {
        match self.terms.last() {
            None => Cofinality::Zero,
            Some(Term { head: Head::Pow(e), .. }) if e.is_zero() => Cofinality::One,
            Some(Term { head: Head::Eps(_), .. }) => Cofinality::Omega,
            Some(Term { head: Head::Pow(e), .. }) => match self.base {
                Base::Omega => Cofinality::Omega,
                Base::Omega1 if e.is_successor() => Cofinality::Omega1,
                Base::Omega1 => e.cofinality(),
            },
        }
    }

    pub fn is_fixed_point(&self) -> bool {
        self.eps_index().is_some()
    }

    /// Smallest ε-atom `>= self`, or `> self` when `strict`.
    pub fn next_fixed_point(&self, strict: bool) -> Ordinal {
        let mut i = 0u32;
        loop {
            match cmp_with_eps(self, i) {
                Ordering::Less => return Self::eps(self.base, i),
                Ordering::Equal if !strict => return Self::eps(self.base, i),
                _ => i += 1,
            }
        }
    }

    /// Largest ε-index occurring anywhere in the hereditary normal form.
    pub fn max_eps_index(&self) -> Option<u32> {
        self.terms
            .iter()
            .filter_map(|t| match &t.head {
                Head::Eps(i) => Some(*i),
                Head::Pow(e) => e.max_eps_index(),
            })
            .max()
    }

    /// Depth of the exponent tower (0 for finite ordinals).
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .map(|t| match &t.head {
                Head::Eps(_) => 1,
                Head::Pow(e) if e.is_zero() => 0,
                Head::Pow(e) => 1 + e.height(),
            })
            .max()
            .unwrap_or(0)
    }

    /// Same ordinal structure under a different base tag.
    pub fn rebase(&self, base: Base) -> Ordinal {
        Ordinal {
            base,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    head: match &t.head {
                        Head::Eps(i) => Head::Eps(*i),
                        Head::Pow(e) => Head::Pow(e.rebase(base)),
                    },
                    coeff: t.coeff,
                })
                .collect(),
        }
    }

    /// Renders with ω/ω₁ and ε/¹ε symbols.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        write_pretty(self, &mut s);
        s
    }

    pub fn parse(base: Base, text: &str) -> Result<Ordinal, OrdinalError> {
        parse::evaluate(base, text, false)
    }

    /// Parses text that is already a Cantor normal form, rejecting anything that
    /// would need arithmetic to normalize (absorbed or repeated terms).
    pub fn parse_cnf(base: Base, text: &str) -> Result<Ordinal, OrdinalError> {
        parse::evaluate(base, text, true)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

/// The `H′` map from base-ω to base-ω₁ normal forms: every exponent is sent
/// through [`h_map`], every ε-atom to the matching ω₁ atom.
pub fn h_prime(a: &Ordinal) -> Result<Ordinal, OrdinalError> {
    if a.base != Base::Omega {
        return Err(OrdinalError::BaseMismatch);
    }
    if a.is_zero() {
        return Err(OrdinalError::ZeroInput);
    }
    Ok(h_prime_unchecked(a))
}

fn h_prime_unchecked(a: &Ordinal) -> Ordinal {
    let terms = a
        .terms
        .iter()
        .map(|t| {
            let head = match &t.head {
                Head::Eps(i) => Head::Eps(*i),
                Head::Pow(e) => match h_map_unchecked(e) {
                    img if img.is_fixed_point() => img.terms[0].head.clone(),
                    img => Head::Pow(img),
                },
            };
            Term { head, coeff: t.coeff }
        })
        .collect();
    Ordinal { base: Base::Omega1, terms }
}

/// The strictly increasing embedding `H` of ε_ω into ¹ε_ω. Shifts by one exactly
/// when the limit part of `H′(a)` has cofinality ω without being an ε-atom.
pub fn h_map(a: &Ordinal) -> Result<Ordinal, OrdinalError> {
    if a.base != Base::Omega {
        return Err(OrdinalError::BaseMismatch);
    }
    if a.is_zero() {
        return Err(OrdinalError::ZeroInput);
    }
    Ok(h_map_unchecked(a))
}

fn h_map_unchecked(a: &Ordinal) -> Ordinal {
    if let Some(n) = a.as_finite() {
        return Ordinal::finite(Base::Omega1, n);
    }
    let image = h_prime_unchecked(a);
    let (limit, _) = image.split_finite();
    if needs_shift(&limit) {
        image.succ()
    } else {
        image
    }
}

fn needs_shift(limit: &Ordinal) -> bool {
    limit.cofinality() == Cofinality::Omega && !limit.is_fixed_point()
}

/// Inverse of [`h_map`]; `Ok(None)` when `d` is not in the image.
pub fn h_preimage(d: &Ordinal) -> Result<Option<Ordinal>, OrdinalError> {
    if d.base != Base::Omega1 {
        return Err(OrdinalError::BaseMismatch);
    }
    if d.is_zero() {
        return Err(OrdinalError::ZeroInput);
    }
    Ok(preimage(d))
}

fn preimage(d: &Ordinal) -> Option<Ordinal> {
    if let Some(n) = d.as_finite() {
        return Some(Ordinal::finite(Base::Omega, n));
    }
    let mut candidates = Vec::with_capacity(2);
    candidates.extend(prime_preimage(d));
    if let Some(p) = d.pred() {
        candidates.extend(prime_preimage(&p));
    }
    candidates.into_iter().find(|c| !c.is_zero() && h_map_unchecked(c) == *d)
}

fn prime_preimage(d: &Ordinal) -> Option<Ordinal> {
    let mut terms = Vec::with_capacity(d.terms.len());
    for t in &d.terms {
        let head = match &t.head {
            Head::Eps(i) => Head::Eps(*i),
            Head::Pow(e) if e.is_zero() => Head::Pow(Ordinal::zero(Base::Omega)),
            Head::Pow(e) => Head::Pow(preimage(e)?),
        };
        terms.push(Term { head, coeff: t.coeff });
    }
    Ordinal::from_terms(Base::Omega, terms).ok()
}

fn exponent_is_atomic(e: &Ordinal) -> bool {
    e.is_finite()
        || e.is_fixed_point()
        || matches!(e.terms.as_slice(), [Term { head: Head::Pow(x), coeff: 1 }] if x.as_finite() == Some(1))
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match &t.head {
                Head::Pow(e) if e.is_zero() => {
                    write!(f, "{}", t.coeff)?;
                    continue;
                }
                Head::Eps(i) => write!(f, "e{i}")?,
                Head::Pow(e) if e.as_finite() == Some(1) => f.write_str("w")?,
                Head::Pow(e) if exponent_is_atomic(e) => write!(f, "w^{e}")?,
                Head::Pow(e) => write!(f, "w^({e})")?,
            }
            if t.coeff > 1 {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

fn write_pretty(o: &Ordinal, s: &mut String) {
    use core::fmt::Write;
    let (w, eps) = match o.base {
        Base::Omega => ("ω", "ε"),
        Base::Omega1 => ("ω₁", "¹ε"),
    };
    if o.terms.is_empty() {
        s.push('0');
        return;
    }
    for (k, t) in o.terms.iter().enumerate() {
        if k > 0 {
            s.push_str(" + ");
        }
        match &t.head {
            Head::Pow(e) if e.is_zero() => {
                let _ = write!(s, "{}", t.coeff);
                continue;
            }
            Head::Eps(i) => {
                let _ = write!(s, "{eps}{}", subscript(*i));
            }
            Head::Pow(e) if e.as_finite() == Some(1) => s.push_str(w),
            Head::Pow(e) => {
                s.push_str(w);
                s.push('^');
                let atomic = exponent_is_atomic(e);
                if !atomic {
                    s.push('(');
                }
                write_pretty(e, s);
                if !atomic {
                    s.push(')');
                }
            }
        }
        if t.coeff > 1 {
            let _ = write!(s, "·{}", t.coeff);
        }
    }
}

fn subscript(i: u32) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    alloc::format!("{i}").chars().map(|c| DIGITS[c as usize - '0' as usize]).collect()
}

mod parse {
    use super::*;

    enum Expr {
        Int(u64),
        W,
        Eps(u32),
        Add(Box<Expr>, Box<Expr>),
        Mul(Box<Expr>, u64),
        Pow(Box<Expr>, Box<Expr>),
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Tok {
        Int(u64),
        W,
        Eps(u32),
        Plus,
        Star,
        Caret,
        Open,
        Close,
    }

    fn err(pos: usize, message: &str) -> OrdinalError {
        OrdinalError::Parse { pos, message: String::from(message) }
    }

    fn lex(text: &str) -> Result<Vec<(usize, Tok)>, OrdinalError> {
        let bytes = text.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        let number = |i: &mut usize| -> Result<u64, OrdinalError> {
            let start = *i;
            let mut v: u64 = 0;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(u64::from(bytes[*i] - b'0')))
                    .ok_or_else(|| err(start, "integer too large"))?;
                *i += 1;
            }
            if *i == start {
                return Err(err(start, "expected digits"));
            }
            Ok(v)
        };
        while i < bytes.len() {
            let c = bytes[i];
            let pos = i;
            let tok = match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    i += 1;
                    continue;
                }
                b'0'..=b'9' => Tok::Int(number(&mut i)?),
                b'w' => {
                    i += 1;
                    Tok::W
                }
                b'e' => {
                    i += 1;
                    let k = number(&mut i)?;
                    Tok::Eps(u32::try_from(k).map_err(|_| err(pos, "epsilon index too large"))?)
                }
                b'+' | b'*' | b'^' | b'(' | b')' => {
                    i += 1;
                    match c {
                        b'+' => Tok::Plus,
                        b'*' => Tok::Star,
                        b'^' => Tok::Caret,
                        b'(' => Tok::Open,
                        _ => Tok::Close,
                    }
                }
                _ => return Err(err(pos, "unexpected character")),
            };
            out.push((pos, tok));
        }
        Ok(out)
    }

    struct Parser {
        toks: Vec<(usize, Tok)>,
        at: usize,
        end: usize,
    }

    impl Parser {
        fn peek(&self) -> Option<Tok> {
            self.toks.get(self.at).map(|t| t.1)
        }
        fn pos(&self) -> usize {
            self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
        }
        fn sum(&mut self) -> Result<Expr, OrdinalError> {
            let mut lhs = self.product()?;
            while self.peek() == Some(Tok::Plus) {
                self.at += 1;
                let rhs = self.product()?;
                lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
            }
            Ok(lhs)
        }
        fn product(&mut self) -> Result<Expr, OrdinalError> {
            let mut lhs = self.power()?;
            while self.peek() == Some(Tok::Star) {
                self.at += 1;
                match self.peek() {
                    Some(Tok::Int(n)) => {
                        self.at += 1;
                        lhs = Expr::Mul(Box::new(lhs), n);
                    }
                    _ => return Err(err(self.pos(), "coefficients must be integers")),
                }
            }
            Ok(lhs)
        }
        fn power(&mut self) -> Result<Expr, OrdinalError> {
            let base = self.atom()?;
            if self.peek() == Some(Tok::Caret) {
                self.at += 1;
                let exp = self.power()?;
                return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
            }
            Ok(base)
        }
        fn atom(&mut self) -> Result<Expr, OrdinalError> {
            let pos = self.pos();
            let tok = self.peek().ok_or_else(|| err(pos, "unexpected end of input"))?;
            self.at += 1;
            match tok {
                Tok::Int(n) => Ok(Expr::Int(n)),
                Tok::W => Ok(Expr::W),
                Tok::Eps(i) => Ok(Expr::Eps(i)),
                Tok::Open => {
                    let inner = self.sum()?;
                    if self.peek() != Some(Tok::Close) {
                        return Err(err(self.pos(), "expected ')'"));
                    }
                    self.at += 1;
                    Ok(inner)
                }
                _ => Err(err(pos, "expected an ordinal")),
            }
        }
    }

    fn eval(e: &Expr, base: Base, strict: bool) -> Result<Ordinal, OrdinalError> {
        match e {
            Expr::Int(n) => Ok(Ordinal::finite(base, *n)),
            Expr::W => Ok(Ordinal::omega(base)),
            Expr::Eps(i) => Ok(Ordinal::eps(base, *i)),
            Expr::Mul(x, n) => {
                let v = eval(x, base, strict)?;
                if strict && v.terms.len() > 1 {
                    return Err(err(0, "coefficient applied to a sum"));
                }
                v.mul_nat(*n)
            }
            Expr::Pow(b, x) => {
                if !matches!(**b, Expr::W) {
                    return Err(err(0, "only the base w can be exponentiated"));
                }
                Ok(eval(x, base, strict)?.base_pow())
            }
            Expr::Add(..) if strict => {
                let mut parts = Vec::new();
                flatten(e, &mut parts);
                let mut terms = Vec::new();
                for p in parts {
                    let v = eval(p, base, strict)?;
                    match v.terms.len() {
                        1 => terms.push(v.terms[0].clone()),
                        0 => return Err(err(0, "zero term inside a sum")),
                        _ => return Err(err(0, "nested sum inside a sum")),
                    }
                }
                Ordinal::from_terms(base, terms)
            }
            Expr::Add(a, b) => eval(a, base, strict)?.add(&eval(b, base, strict)?),
        }
    }

    fn flatten<'a>(e: &'a Expr, out: &mut Vec<&'a Expr>) {
        match e {
            Expr::Add(a, b) => {
                flatten(a, out);
                flatten(b, out);
            }
            other => out.push(other),
        }
    }

    pub(super) fn evaluate(base: Base, text: &str, strict: bool) -> Result<Ordinal, OrdinalError> {
        let toks = lex(text)?;
        let mut p = Parser { toks, at: 0, end: text.len() };
        let e = p.sum()?;
        if p.at != p.toks.len() {
            return Err(err(p.pos(), "trailing input"));
        }
        eval(&e, base, strict)
    }
}
