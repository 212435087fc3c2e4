//! A referee for conciliating Wadge games cut off after a number of rounds.
//!
//! Player 1 builds `x`, player 2 builds `y`, and player 2 wins when
//! `x ∈ A ↔ y ∈ B`. Either player may skip. To get an infinite word out of a
//! finite play a player may once declare a tail: its word becomes the letters
//! played so far followed by the tail repeated forever, and it moves no more.

use alloc::{boxed::Box, collections::BTreeSet, format, string::String, vec::Vec};
use core::fmt;

use crate::concil::{member, ConcilError, Node};
use crate::words::{letters_to_string, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Letter(Letter),
    Skip,
    DeclareTail(Vec<Letter>),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Letter(l) => write!(f, "letter:{l}"),
            Move::Skip => f.write_str("skip"),
            Move::DeclareTail(p) => write!(f, "tail:{}", letters_to_string(p)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    P1Wins,
    P2Wins,
    Undecided,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P1Wins => "P1_WINS",
            Outcome::P2Wins => "P2_WINS",
            Outcome::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameError {
    NoRounds,
    ForeignLetter { player: Player, letter: Letter },
    EmptyTail(Player),
    /// Player 1 opened with a skip while the strict rule is on.
    OpeningSkip,
    UnknownStrategy(String),
    Concil(ConcilError),
}

impl fmt::Display for GameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameError::NoRounds => f.write_str("round bound must be at least 1"),
            GameError::ForeignLetter { player, letter } => write!(f, "{player:?} played {letter} outside its alphabet"),
            GameError::EmptyTail(p) => write!(f, "{p:?} declared an empty tail"),
            GameError::OpeningSkip => f.write_str("player 1 must open with a letter"),
            GameError::UnknownStrategy(s) => write!(f, "unknown strategy {s}"),
            GameError::Concil(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GameError {}

/// A deterministic rule choosing the next move from both move histories.
/// Player 2 sees player 1's move of the current round; player 1 sees player
/// 2's moves of earlier rounds only.
pub trait Strategy {
    fn next(&self, own: &[Move], opponent: &[Move]) -> Move;
}

impl<F: Fn(&[Move], &[Move]) -> Move> Strategy for F {
    fn next(&self, own: &[Move], opponent: &[Move]) -> Move {
        self(own, opponent)
    }
}

/// Echoes the opponent's latest move, tails included.
#[derive(Clone, Copy, Debug, Default)]
pub struct CopyStrategy;

impl Strategy for CopyStrategy {
    fn next(&self, _own: &[Move], opponent: &[Move]) -> Move {
        opponent.last().cloned().unwrap_or(Move::Skip)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SkipForever;

impl Strategy for SkipForever {
    fn next(&self, _own: &[Move], _opponent: &[Move]) -> Move {
        Move::Skip
    }
}

/// Copies letters of a sub-alphabet and skips the rest; a tail is copied
/// with the other letters dropped.
#[derive(Clone, Debug)]
pub struct EmbedCopy {
    pub keep: BTreeSet<Letter>,
}

impl Strategy for EmbedCopy {
    fn next(&self, own: &[Move], opponent: &[Move]) -> Move {
        match opponent.last() {
            Some(Move::Letter(l)) if self.keep.contains(l) => Move::Letter(*l),
            Some(Move::DeclareTail(p)) => {
                let p: Vec<Letter> = p.iter().copied().filter(|l| self.keep.contains(l)).collect();
                if p.is_empty() || own.iter().any(|m| matches!(m, Move::DeclareTail(_))) {
                    Move::Skip
                } else {
                    Move::DeclareTail(p)
                }
            }
            _ => Move::Skip,
        }
    }
}

/// Plays a fixed list of moves, then skips.
#[derive(Clone, Debug)]
pub struct Scripted(pub Vec<Move>);

impl Strategy for Scripted {
    fn next(&self, own: &[Move], _opponent: &[Move]) -> Move {
        self.0.get(own.len()).cloned().unwrap_or(Move::Skip)
    }
}

/// `copy`, `skip_forever`, or `embed_copy` over `keep`.
pub fn builtin_strategy(name: &str, keep: &BTreeSet<Letter>) -> Result<Box<dyn Strategy>, GameError> {
    match name {
        "copy" => Ok(Box::new(CopyStrategy)),
        "skip_forever" => Ok(Box::new(SkipForever)),
        "embed_copy" => Ok(Box::new(EmbedCopy { keep: keep.clone() })),
        other => Err(GameError::UnknownStrategy(String::from(other))),
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rules {
    /// Player 1's first move must be a letter.
    pub strict_opening: bool,
}

#[derive(Clone, Debug)]
pub struct PlayRecord {
    pub outcome: Outcome,
    pub x: Word,
    pub y: Word,
    /// `(round, player, move)`, rounds counted from 1.
    pub transcript: Vec<(usize, Player, Move)>,
}

impl PlayRecord {
    /// One `round=.. player=.. move=..` line per move.
    pub fn transcript_text(&self) -> String {
        let mut s = String::new();
        for (r, p, m) in &self.transcript {
            let p = if *p == Player::One { 1 } else { 2 };
            s.push_str(&format!("round={r} player={p} move={m}\n"));
        }
        s
    }
}

#[derive(Default)]
struct Side {
    moves: Vec<Move>,
    letters: Vec<Letter>,
    tail: Option<Vec<Letter>>,
}

impl Side {
    fn apply(&mut self, who: Player, m: Move, alphabet: &BTreeSet<Letter>) -> Result<(), GameError> {
        match &m {
            Move::Letter(l) if !alphabet.contains(l) => return Err(GameError::ForeignLetter { player: who, letter: *l }),
            Move::Letter(l) => self.letters.push(*l),
            Move::Skip => {}
            Move::DeclareTail(p) => {
                if p.is_empty() {
                    return Err(GameError::EmptyTail(who));
                }
                if let Some(l) = p.iter().find(|l| !alphabet.contains(l)) {
                    return Err(GameError::ForeignLetter { player: who, letter: *l });
                }
                self.tail = Some(p.clone());
            }
        }
        self.moves.push(m);
        Ok(())
    }

    fn word(&self) -> Word {
        Word::from_parts(self.letters.clone(), self.tail.clone().unwrap_or_default())
    }
}

/// Plays `rounds` rounds, player 1 on `a` and player 2 on `b`. A player who
/// has declared a tail is not asked again and is recorded as skipping.
pub fn play(
    a: &Node<'_>,
    b: &Node<'_>,
    s1: &dyn Strategy,
    s2: &dyn Strategy,
    rounds: usize,
    rules: Rules,
) -> Result<PlayRecord, GameError> {
    if rounds == 0 {
        return Err(GameError::NoRounds);
    }
    let (mut p1, mut p2) = (Side::default(), Side::default());
    let mut transcript = Vec::new();
    for r in 1..=rounds {
        let m = if p1.tail.is_some() { Move::Skip } else { s1.next(&p1.moves, &p2.moves) };
        if r == 1 && rules.strict_opening && !matches!(m, Move::Letter(_)) {
            return Err(GameError::OpeningSkip);
        }
        transcript.push((r, Player::One, m.clone()));
        p1.apply(Player::One, m, &a.alphabet)?;
        let m = if p2.tail.is_some() { Move::Skip } else { s2.next(&p2.moves, &p1.moves) };
        transcript.push((r, Player::Two, m.clone()));
        p2.apply(Player::Two, m, &b.alphabet)?;
    }
    let (x, y) = (p1.word(), p2.word());
    let outcome = match (member(a, &x), member(b, &y)) {
        (Ok(in_a), Ok(in_b)) => {
            if in_a == in_b {
                Outcome::P2Wins
            } else {
                Outcome::P1Wins
            }
        }
        (Err(e), _) | (_, Err(e)) => match e {
            ConcilError::Unsupported(_) | ConcilError::Eval(_) => Outcome::Undecided,
            other => return Err(GameError::Concil(other)),
        },
    };
    Ok(PlayRecord { outcome, x, y, transcript })
}
