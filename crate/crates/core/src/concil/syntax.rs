//! Text form of expressions:
//! `empty`, `atom(id[,degree=<ordinal>])`, `sum(B,A[,plus=<letters>,minus=<letters>])`,
//! `scalar(A,n)`, `tilde(A)`, `approx(A)`, `bullet(A)`, `bulletdual(A)`,
//! `dflag(A,<letter>)`, `complement(A)`.

use alloc::{boxed::Box, format, string::String, vec::Vec};
use core::{fmt, str::FromStr};

use super::{ConcilError, Expr};
use crate::ordinal::{Base, Ordinal};
use crate::words::{letters_to_string, parse_letters, Letter};

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Empty => f.write_str("empty"),
            Expr::Atom { id, degree: None } => write!(f, "atom({id})"),
            Expr::Atom { id, degree: Some(d) } => write!(f, "atom({id},degree={d})"),
            Expr::Sum { big, small, plus, minus } => {
                write!(f, "sum({big},{small}")?;
                if !plus.is_empty() || !minus.is_empty() {
                    write!(f, ",plus={},minus={}", letters_to_string(plus), letters_to_string(minus))?;
                }
                f.write_str(")")
            }
            Expr::Scalar(b, n) => write!(f, "scalar({b},{n})"),
            Expr::Tilde(b) => write!(f, "tilde({b})"),
            Expr::Approx(b) => write!(f, "approx({b})"),
            Expr::Bullet(b) => write!(f, "bullet({b})"),
            Expr::BulletDual(b) => write!(f, "bulletdual({b})"),
            Expr::DFlag(b, d) => write!(f, "dflag({b},{d})"),
            Expr::Complement(b) => write!(f, "complement({b})"),
        }
    }
}

impl FromStr for Expr {
    type Err = ConcilError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_at(s, 0)
    }
}

fn err(pos: usize, message: impl Into<String>) -> ConcilError {
    ConcilError::Parse { pos, message: message.into() }
}

type Call<'s> = (&'s str, Vec<(usize, &'s str)>);

// Splits `name(args)` into the name and the top-level comma separated
// arguments, each with its byte offset.
fn split_call(s: &str, offset: usize) -> Result<Call<'_>, ConcilError> {
    let Some(open) = s.find('(') else {
        return Ok((s, Vec::new()));
    };
    if !s.ends_with(')') {
        return Err(err(offset + s.len(), "expected ')' at the end"));
    }
    let inner = &s[open + 1..s.len() - 1];
    let base = offset + open + 1;
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err(base + i, "unbalanced ')'"));
                }
            }
            ',' if depth == 0 => {
                args.push((base + start, &inner[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(err(base + inner.len(), "unbalanced '('"));
    }
    args.push((base + start, &inner[start..]));
    Ok((&s[..open], args))
}

fn parse_at(s: &str, offset: usize) -> Result<Expr, ConcilError> {
    let (name, args) = split_call(s, offset)?;
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(err(offset, format!("{name} takes {n} argument(s), got {}", args.len())))
        }
    };
    let sub = |k: usize| -> Result<Box<Expr>, ConcilError> { Ok(Box::new(parse_at(args[k].1, args[k].0)?)) };
    match name {
        "empty" if !s.contains('(') => Ok(Expr::Empty),
        "atom" => {
            let (pos, id) = args[0];
            if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')) {
                return Err(err(pos, "bad atom id"));
            }
            let degree = match args.len() {
                1 => None,
                2 => {
                    let (pos, text) = args[1];
                    let d = text.strip_prefix("degree=").ok_or_else(|| err(pos, "expected degree=<ordinal>"))?;
                    Some(Ordinal::parse(Base::Omega1, d)?)
                }
                _ => return Err(err(offset, "atom takes at most 2 arguments")),
            };
            Ok(Expr::Atom { id: String::from(id), degree })
        }
        "sum" => {
            let (plus, minus) = match args.len() {
                2 => (Vec::new(), Vec::new()),
                4 => (letter_set(args[2], "plus=")?, letter_set(args[3], "minus=")?),
                _ => return Err(err(offset, "sum takes 2 or 4 arguments")),
            };
            Ok(Expr::Sum { big: sub(0)?, small: sub(1)?, plus, minus })
        }
        "scalar" => {
            arity(2)?;
            let n: u32 = args[1].1.parse().map_err(|_| err(args[1].0, "expected a positive integer"))?;
            if n == 0 {
                return Err(err(args[1].0, "scalar must be at least 1"));
            }
            Ok(Expr::Scalar(sub(0)?, n))
        }
        "tilde" | "approx" | "bullet" | "bulletdual" | "complement" => {
            arity(1)?;
            let b = sub(0)?;
            Ok(match name {
                "tilde" => Expr::Tilde(b),
                "approx" => Expr::Approx(b),
                "bullet" => Expr::Bullet(b),
                "bulletdual" => Expr::BulletDual(b),
                _ => Expr::Complement(b),
            })
        }
        "dflag" => {
            arity(2)?;
            let (pos, text) = args[1];
            match parse_letters(text, pos).map_err(|e| err(pos, format!("{e}")))?.as_slice() {
                [d] => Ok(Expr::DFlag(sub(0)?, *d)),
                _ => Err(err(pos, "dflag needs exactly one letter")),
            }
        }
        _ => Err(err(offset, format!("unknown expression {s:?}"))),
    }
}

fn letter_set((pos, text): (usize, &str), key: &str) -> Result<Vec<Letter>, ConcilError> {
    let body = text.strip_prefix(key).ok_or_else(|| err(pos, format!("expected {key}<letters>")))?;
    let letters = parse_letters(body, pos + key.len()).map_err(|e| err(pos, format!("{e}")))?;
    if letters.is_empty() {
        return Err(err(pos, "letter set is empty"));
    }
    Ok(letters)
}
