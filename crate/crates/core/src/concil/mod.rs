//! Conciliating-set expressions: degrees, the `Ω` constructor, membership of
//! finite and ultimately periodic words, and automata for the expressions.

use alloc::{boxed::Box, collections::BTreeMap, collections::BTreeSet, string::String, vec::Vec};
use core::fmt;

use crate::ordinal::{Base, Cofinality, Head, Ordinal, OrdinalError};
use crate::pda::PdaError;
use crate::words::{EvalError, Letter};

mod automata;
mod member;
mod syntax;

pub use automata::{to_pda, to_pda_complement};
pub use member::member;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Empty,
    Atom { id: String, degree: Option<Ordinal> },
    /// `big + small`; empty letter lists ask for fresh sign letters.
    Sum { big: Box<Expr>, small: Box<Expr>, plus: Vec<Letter>, minus: Vec<Letter> },
    Scalar(Box<Expr>, u32),
    Tilde(Box<Expr>),
    Approx(Box<Expr>),
    Bullet(Box<Expr>),
    /// `A^• ∪ a^{≤ω}`, the stand-in for the complement of a bullet.
    BulletDual(Box<Expr>),
    DFlag(Box<Expr>, Letter),
    Complement(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConcilError {
    UnknownAtom(String),
    UnknownDegree(String),
    /// An operand of an exponentiation has degree below 2.
    Precondition(&'static str),
    /// `Ω` met an exponent of cofinality ω that is neither an ε-atom nor a
    /// successor, which cannot come from the `H` map.
    CaseH(Ordinal),
    ForeignLetter(Letter),
    BadAlphabet(&'static str),
    Unsupported(&'static str),
    Eval(EvalError),
    Ordinal(OrdinalError),
    Pda(PdaError),
    Parse { pos: usize, message: String },
}

impl fmt::Display for ConcilError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConcilError::UnknownAtom(id) => write!(f, "unknown atom {id}"),
            ConcilError::UnknownDegree(id) => write!(f, "atom {id} has no degree annotation"),
            ConcilError::Precondition(why) => write!(f, "precondition failed: {why}"),
            ConcilError::CaseH(b) => write!(f, "exponent {b} has cofinality omega and is not reachable"),
            ConcilError::ForeignLetter(l) => write!(f, "letter {l} is not in the alphabet"),
            ConcilError::BadAlphabet(why) => write!(f, "bad alphabet: {why}"),
            ConcilError::Unsupported(why) => write!(f, "unsupported: {why}"),
            ConcilError::Eval(e) => write!(f, "{e}"),
            ConcilError::Ordinal(e) => write!(f, "{e}"),
            ConcilError::Pda(e) => write!(f, "{e}"),
            ConcilError::Parse { pos, message } => write!(f, "expression parse error at {pos}: {message}"),
        }
    }
}

impl core::error::Error for ConcilError {}

impl From<OrdinalError> for ConcilError {
    fn from(e: OrdinalError) -> Self {
        ConcilError::Ordinal(e)
    }
}
impl From<EvalError> for ConcilError {
    fn from(e: EvalError) -> Self {
        ConcilError::Eval(e)
    }
}
impl From<PdaError> for ConcilError {
    fn from(e: PdaError) -> Self {
        ConcilError::Pda(e)
    }
}

impl Expr {
    pub fn atom(id: &str, degree: Option<Ordinal>) -> Expr {
        Expr::Atom { id: String::from(id), degree }
    }
    pub fn sum(big: Expr, small: Expr) -> Expr {
        Expr::Sum { big: Box::new(big), small: Box::new(small), plus: Vec::new(), minus: Vec::new() }
    }
    pub fn scalar(base: Expr, n: u32) -> Expr {
        Expr::Scalar(Box::new(base), n)
    }
    pub fn tilde(base: Expr) -> Expr {
        Expr::Tilde(Box::new(base))
    }
    pub fn approx(base: Expr) -> Expr {
        Expr::Approx(Box::new(base))
    }
    pub fn bullet(base: Expr) -> Expr {
        Expr::Bullet(Box::new(base))
    }
    pub fn dflag(base: Expr, d: Letter) -> Expr {
        Expr::DFlag(Box::new(base), d)
    }
    /// Cancels a double complement.
    pub fn complement(base: Expr) -> Expr {
        match base {
            Expr::Complement(inner) => *inner,
            other => Expr::Complement(Box::new(other)),
        }
    }

    /// `BULLET(A)` becomes `A^• ∪ a^{≤ω}`, a complement undoes itself,
    /// anything else gets a complement node.
    pub fn complement_witness(&self) -> Expr {
        match self {
            Expr::Bullet(b) => Expr::BulletDual(b.clone()),
            Expr::Complement(b) => (**b).clone(),
            other => Expr::Complement(Box::new(other.clone())),
        }
    }

    /// The conciliating degree, an ordinal of base ω₁.
    pub fn degree(&self) -> Result<Ordinal, ConcilError> {
        match self {
            Expr::Empty => Ok(Ordinal::finite(Base::Omega1, 1)),
            Expr::Atom { id, degree } => match degree {
                Some(d) if d.base() == Base::Omega1 => Ok(d.clone()),
                Some(d) => Ok(d.rebase(Base::Omega1)),
                None => Err(ConcilError::UnknownDegree(id.clone())),
            },
            Expr::Sum { big, small, .. } => Ok(big.degree()?.add(&small.degree()?)?),
            Expr::Scalar(b, n) => Ok(b.degree()?.mul_nat(u64::from(*n))?),
            Expr::Tilde(b) | Expr::Approx(b) => {
                let d = at_least_two(b)?;
                let (limit, _) = d.split_finite();
                let exponent = match limit.cofinality() {
                    Cofinality::Zero => d.pred().expect("finite degree at least 2"),
                    Cofinality::Omega => d.succ(),
                    _ => d,
                };
                Ok(exponent.base_pow())
            }
            Expr::Bullet(b) | Expr::BulletDual(b) => Ok(at_least_two(b)?.next_fixed_point(true)),
            Expr::DFlag(b, _) | Expr::Complement(b) => b.degree(),
        }
    }
}

fn at_least_two(b: &Expr) -> Result<Ordinal, ConcilError> {
    let d = b.degree()?;
    if d < Ordinal::finite(Base::Omega1, 2) {
        return Err(ConcilError::Precondition("operand degree must be at least 2"));
    }
    Ok(d)
}

/// An expression of degree `d`, built by recursion on the normal form.
pub fn build_omega(d: &Ordinal) -> Result<Expr, ConcilError> {
    if d.base() != Base::Omega1 {
        return Err(OrdinalError::BaseMismatch.into());
    }
    if d.is_zero() {
        return Err(OrdinalError::ZeroInput.into());
    }
    let mut acc: Option<Expr> = None;
    for t in d.terms() {
        let part = match &t.head {
            Head::Eps(i) => bullet_tower(*i),
            Head::Pow(e) => omega_power(e)?,
        };
        let part = if t.coeff > 1 {
            let n = u32::try_from(t.coeff).map_err(|_| OrdinalError::Overflow)?;
            Expr::scalar(part, n)
        } else {
            part
        };
        acc = Some(match acc {
            None => part,
            Some(big) => Expr::sum(big, part),
        });
    }
    Ok(acc.expect("nonzero ordinal has a term"))
}

// `Ω(¹ε_i)`: i + 1 bullets over `∅ + ∅`.
fn bullet_tower(i: u32) -> Expr {
    let mut e = Expr::sum(Expr::Empty, Expr::Empty);
    for _ in 0..=i {
        e = Expr::bullet(e);
    }
    e
}

// `Ω(ω₁^β)`.
fn omega_power(beta: &Ordinal) -> Result<Expr, ConcilError> {
    let (limit, n) = beta.split_finite();
    if limit.is_zero() {
        return Ok(if n == 0 {
            Expr::Empty
        } else {
            let m = u32::try_from(n + 1).map_err(|_| OrdinalError::Overflow)?;
            Expr::tilde(Expr::scalar(Expr::Empty, m))
        });
    }
    if limit.cofinality() == Cofinality::Omega1 {
        return Ok(Expr::tilde(build_omega(beta)?));
    }
    if let Some(i) = limit.eps_index().filter(|_| n == 0) {
        return Ok(bullet_tower(i));
    }
    if n == 0 {
        return Err(ConcilError::CaseH(beta.clone()));
    }
    Ok(Expr::tilde(build_omega(&beta.pred().expect("successor"))?))
}

/// Atom automata by name, each optionally with an automaton for its complement.
#[derive(Clone, Debug, Default)]
pub struct Env {
    atoms: BTreeMap<String, (crate::pda::Pda, Option<crate::pda::Pda>)>,
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn insert(&mut self, id: &str, pda: crate::pda::Pda, complement: Option<crate::pda::Pda>) {
        self.atoms.insert(String::from(id), (pda, complement));
    }
    pub fn get(&self, id: &str) -> Option<&crate::pda::Pda> {
        self.atoms.get(id).map(|p| &p.0)
    }
    pub fn get_complement(&self, id: &str) -> Option<&crate::pda::Pda> {
        self.atoms.get(id).and_then(|p| p.1.as_ref())
    }
}

/// An expression with its alphabets and fresh letters resolved.
#[derive(Clone, Debug)]
pub struct Node<'e> {
    pub kind: Kind<'e>,
    pub alphabet: BTreeSet<Letter>,
}

#[derive(Clone, Debug)]
pub enum Kind<'e> {
    Empty,
    Atom { id: String, pda: &'e crate::pda::Pda, complement: Option<&'e crate::pda::Pda> },
    Sum { big: Box<Node<'e>>, small: Box<Node<'e>>, plus: BTreeSet<Letter>, minus: BTreeSet<Letter> },
    Erase { base: Box<Node<'e>>, index: u32, mode: crate::words::EraserMode },
    Bullet { base: Box<Node<'e>>, code: crate::words::EraserCode, dual: bool },
    DFlag { base: Box<Node<'e>>, d: Letter },
    Complement(Box<Node<'e>>),
}

fn max_level(alph: &BTreeSet<Letter>) -> u32 {
    alph.iter().filter_map(|l| if let Letter::Marker { level, .. } = l { Some(*level) } else { None }).max().unwrap_or(0)
}

fn max_eraser(alph: &BTreeSet<Letter>) -> u32 {
    alph.iter().filter_map(|l| if let Letter::Eraser(j) = l { Some(*j) } else { None }).max().unwrap_or(0)
}

impl Expr {
    /// Resolves atoms against `env` and allocates the fresh letters.
    pub fn compile<'e>(&self, env: &'e Env) -> Result<Node<'e>, ConcilError> {
        use crate::words::{EraserCode, EraserMode};
        Ok(match self {
            Expr::Empty => Node { kind: Kind::Empty, alphabet: BTreeSet::new() },
            Expr::Atom { id, .. } => {
                let pda = env.get(id).ok_or_else(|| ConcilError::UnknownAtom(id.clone()))?;
                let complement = env.get_complement(id);
                Node { alphabet: pda.alphabet().clone(), kind: Kind::Atom { id: id.clone(), pda, complement } }
            }
            Expr::Sum { big, small, plus, minus } => sum_node(big.compile(env)?, small.compile(env)?, plus, minus)?,
            Expr::Scalar(b, n) => {
                if *n == 0 {
                    return Err(OrdinalError::ZeroMultiplier.into());
                }
                let mut acc = b.compile(env)?;
                for _ in 1..*n {
                    acc = sum_node(acc, b.compile(env)?, &[], &[])?;
                }
                acc
            }
            Expr::Tilde(b) | Expr::Approx(b) => {
                let base = b.compile(env)?;
                let index = max_eraser(&base.alphabet) + 1;
                let mut alphabet = base.alphabet.clone();
                alphabet.insert(Letter::Eraser(index));
                let mode = if matches!(self, Expr::Tilde(_)) { EraserMode::Tilde } else { EraserMode::Approx };
                Node { kind: Kind::Erase { base: Box::new(base), index, mode }, alphabet }
            }
            Expr::Bullet(b) | Expr::BulletDual(b) => {
                let base = b.compile(env)?;
                let code = EraserCode { level: max_level(&base.alphabet) + 1, offset: max_eraser(&base.alphabet) };
                let mut alphabet = base.alphabet.clone();
                alphabet.extend(code.letters());
                alphabet.insert(Letter::marker('a', code.level));
                alphabet.insert(Letter::marker('b', code.level));
                let dual = matches!(self, Expr::BulletDual(_));
                Node { kind: Kind::Bullet { base: Box::new(base), code, dual }, alphabet }
            }
            Expr::DFlag(b, d) => {
                let base = b.compile(env)?;
                if base.alphabet.contains(d) {
                    return Err(ConcilError::BadAlphabet("flag letter already in the alphabet"));
                }
                let mut alphabet = base.alphabet.clone();
                alphabet.insert(*d);
                Node { kind: Kind::DFlag { base: Box::new(base), d: *d }, alphabet }
            }
            Expr::Complement(b) => {
                let base = b.compile(env)?;
                Node { alphabet: base.alphabet.clone(), kind: Kind::Complement(Box::new(base)) }
            }
        })
    }
}

fn sum_node<'e>(big: Node<'e>, small: Node<'e>, plus: &[Letter], minus: &[Letter]) -> Result<Node<'e>, ConcilError> {
    let (plus, minus): (BTreeSet<Letter>, BTreeSet<Letter>) = if plus.is_empty() && minus.is_empty() {
        let level = max_level(&big.alphabet).max(max_level(&small.alphabet)) + 1;
        (BTreeSet::from([Letter::marker('+', level)]), BTreeSet::from([Letter::marker('-', level)]))
    } else {
        (plus.iter().copied().collect(), minus.iter().copied().collect())
    };
    if plus.is_empty() || minus.is_empty() {
        return Err(ConcilError::BadAlphabet("sign letter sets must both be nonempty"));
    }
    if !plus.is_disjoint(&minus) {
        return Err(ConcilError::BadAlphabet("sign letter sets overlap"));
    }
    if plus.iter().chain(&minus).any(|l| small.alphabet.contains(l)) {
        return Err(ConcilError::BadAlphabet("sign letters must be outside the small alphabet"));
    }
    let mut alphabet: BTreeSet<Letter> = big.alphabet.union(&small.alphabet).copied().collect();
    alphabet.extend(plus.iter().chain(&minus).copied());
    Ok(Node { kind: Kind::Sum { big: Box::new(big), small: Box::new(small), plus, minus }, alphabet })
}
