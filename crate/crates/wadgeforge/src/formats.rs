//! Text formats for automata and grid prefixes.
//!
//! An automaton file looks like
//!
//! ```text
//! wadgeforge-pda 1
//! alphabet 0 1
//! states q0 q1
//! symbols Z X
//! initial q0
//! bottom Z
//! final q1
//! buchi q1
//! rule q0 0 Z q1 X Z
//! rule q1 λ X q1
//! ```
//!
//! A rule reads `from input top to push...`, with `λ` for a silent move and the
//! pushed symbols listed top first. Letters use the word syntax (`~2`, `[a1]`).
//! Blank lines and lines starting with `#` are ignored. Writing lists states,
//! symbols and rules in id order, so output is stable.

use std::collections::HashSet;
use std::fmt::Write;

use thiserror::Error;
use wadgeforge_core::pda::{Pda, PdaBuilder, PdaError};
use wadgeforge_core::words::{parse_letters, GridError, GridPrefix, Letter};

pub const PDA_HEADER: &str = "wadgeforge-pda 1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Pda(#[from] PdaError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

pub fn write_pda(p: &Pda) -> String {
    let mut s = String::new();
    let names = |ids: &mut dyn Iterator<Item = u32>| -> String {
        ids.map(|i| format!(" {}", p.states()[i as usize])).collect()
    };
    let _ = writeln!(s, "{PDA_HEADER}");
    let _ = writeln!(s, "alphabet{}", p.alphabet().iter().map(|l| format!(" {l}")).collect::<String>());
    let _ = writeln!(s, "states{}", p.states().iter().map(|n| format!(" {n}")).collect::<String>());
    let _ = writeln!(s, "symbols{}", p.symbols().iter().map(|n| format!(" {n}")).collect::<String>());
    let _ = writeln!(s, "initial {}", p.states()[p.initial() as usize]);
    let _ = writeln!(s, "bottom {}", p.symbols()[p.bottom() as usize]);
    let _ = writeln!(s, "final{}", names(&mut p.finals().iter().copied()));
    let _ = writeln!(s, "buchi{}", names(&mut p.buchi().iter().copied()));
    for r in p.rules() {
        let input = r.input.map_or_else(|| String::from("λ"), |l| l.to_string());
        let _ = write!(
            s,
            "rule {} {input} {} {}",
            p.states()[r.from as usize],
            p.symbols()[r.top as usize],
            p.states()[r.to as usize]
        );
        for &y in &r.push {
            let _ = write!(s, " {}", p.symbols()[y as usize]);
        }
        s.push('\n');
    }
    s
}

fn one_letter(line: usize, token: &str) -> Result<Letter, FormatError> {
    match parse_letters(token, 0).map_err(|e| syntax(line, e.to_string()))?.as_slice() {
        [l] => Ok(*l),
        _ => Err(syntax(line, format!("{token:?} is not a single letter"))),
    }
}

pub fn read_pda(text: &str) -> Result<Pda, FormatError> {
    let mut b = PdaBuilder::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, PDA_HEADER)) => {}
        Some((n, _)) => return Err(syntax(n, format!("expected header {PDA_HEADER:?}"))),
        None => return Err(syntax(0, "empty automaton file")),
    }
    let mut states: HashSet<String> = HashSet::new();
    let mut symbols: HashSet<String> = HashSet::new();
    let state = |n: usize, name: &str, states: &HashSet<String>, b: &mut PdaBuilder| {
        if states.contains(name) {
            Ok(b.state(name))
        } else {
            Err(syntax(n, format!("undeclared state {name}")))
        }
    };
    let symbol = |n: usize, name: &str, symbols: &HashSet<String>, b: &mut PdaBuilder| {
        if symbols.contains(name) {
            Ok(b.symbol(name))
        } else {
            Err(syntax(n, format!("undeclared stack symbol {name}")))
        }
    };
    for (n, line) in lines {
        let mut tokens = line.split_whitespace();
        let key = tokens.next().unwrap_or_default();
        let args: Vec<&str> = tokens.collect();
        match key {
            "alphabet" => {
                for t in &args {
                    b.letter(one_letter(n, t)?);
                }
            }
            "states" => {
                for t in &args {
                    if !states.insert(String::from(*t)) {
                        return Err(syntax(n, format!("state {t} declared twice")));
                    }
                    b.state(t);
                }
            }
            "symbols" => {
                for t in &args {
                    if !symbols.insert(String::from(*t)) {
                        return Err(syntax(n, format!("stack symbol {t} declared twice")));
                    }
                    b.symbol(t);
                }
            }
            "initial" | "bottom" => {
                let [name] = args.as_slice() else {
                    return Err(syntax(n, format!("{key} takes one name")));
                };
                if key == "initial" {
                    let s = state(n, name, &states, &mut b)?;
                    b.set_initial(s);
                } else {
                    let s = symbol(n, name, &symbols, &mut b)?;
                    b.set_bottom(s);
                }
            }
            "final" | "buchi" => {
                for t in &args {
                    let s = state(n, t, &states, &mut b)?;
                    if key == "final" {
                        b.add_final(s);
                    } else {
                        b.add_buchi(s);
                    }
                }
            }
            "rule" => {
                if args.len() < 4 {
                    return Err(syntax(n, "rule needs from, input, top and to"));
                }
                let from = state(n, args[0], &states, &mut b)?;
                let input = if args[1] == "λ" { None } else { Some(one_letter(n, args[1])?) };
                let top = symbol(n, args[2], &symbols, &mut b)?;
                let to = state(n, args[3], &states, &mut b)?;
                let push = args[4..].iter().map(|t| symbol(n, t, &symbols, &mut b)).collect::<Result<Vec<_>, _>>()?;
                b.rule(from, input, top, to, &push);
            }
            other => return Err(syntax(n, format!("unknown directive {other:?}"))),
        }
    }
    Ok(b.build()?)
}

/// One row per line, `x(m,1) … x(m, depth+1-m)` on line `m`. Blank lines and
/// `#` comments are skipped.
pub fn read_grid(text: &str) -> Result<GridPrefix, FormatError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rows.push(parse_letters(line, 0).map_err(|e| syntax(i + 1, e.to_string()))?);
    }
    Ok(GridPrefix::new(rows)?)
}

pub fn write_grid(g: &GridPrefix) -> String {
    g.rows().iter().map(|r| r.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ") + "\n").collect()
}
