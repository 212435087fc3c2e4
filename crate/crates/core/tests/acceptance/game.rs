use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wadgeforge_core::concil::{to_pda, Env, Expr, Node};
use wadgeforge_core::game::{play, CopyStrategy, Move, Outcome as GameOutcome, Rules, Scripted, Strategy};
use wadgeforge_core::pda::FiniteAutomaton;
use wadgeforge_core::words::{Letter, Word};

use crate::{Outcome, Tally};

const P: Letter = Letter::Plain('p');
const M: Letter = Letter::Plain('m');

fn signed(plus: Letter, minus: Letter) -> Expr {
    Expr::Sum { big: Box::new(Expr::Empty), small: Box::new(Expr::Empty), plus: vec![plus], minus: vec![minus] }
}

fn random_move(rng: &mut ChaCha8Rng, letters: &[Letter]) -> Move {
    match rng.gen_range(0..10) {
        0..=2 => Move::Skip,
        3 => Move::DeclareTail((0..rng.gen_range(1..4)).map(|_| letters[rng.gen_range(0..letters.len())]).collect()),
        _ => Move::Letter(letters[rng.gen_range(0..letters.len())]),
    }
}

/// Reacts to the opponent: a seeded hash of both histories picks the move.
struct Reactive {
    seed: u64,
    letters: Vec<Letter>,
}

impl Strategy for Reactive {
    fn next(&self, own: &[Move], opponent: &[Move]) -> Move {
        let mut h = DefaultHasher::new();
        (self.seed, own, opponent).hash(&mut h);
        random_move(&mut ChaCha8Rng::seed_from_u64(h.finish()), &self.letters)
    }
}

fn copy_wins(t: &mut Tally, rng: &mut ChaCha8Rng, e: &Expr, env: &Env) -> Result<(), String> {
    let node = e.compile(env).map_err(|e| e.to_string())?;
    let letters: Vec<Letter> = node.alphabet.iter().copied().collect();
    for k in 0..120 {
        let rounds = rng.gen_range(1..=100);
        let s1: Box<dyn Strategy> = if k % 2 == 0 {
            Box::new(Scripted((0..rounds).map(|_| random_move(rng, &letters)).collect()))
        } else {
            Box::new(Reactive { seed: rng.gen(), letters: letters.clone() })
        };
        let rec = play(&node, &node, &*s1, &CopyStrategy, rounds, Rules::default()).map_err(|e| e.to_string())?;
        t.check(rec.outcome == GameOutcome::P2Wins && rec.x == rec.y, || {
            format!("{e}: copy gets {} with x = {}, y = {}", rec.outcome, rec.x, rec.y)
        });
    }
    Ok(())
}

// The word a script produces when nothing after a declared tail counts.
fn script_word(moves: &[Move]) -> Word {
    let mut letters = Vec::new();
    for m in moves {
        match m {
            Move::Letter(l) => letters.push(*l),
            Move::Skip => {}
            Move::DeclareTail(p) => return Word::from_parts(letters, p.clone()),
        }
    }
    Word::finite(letters)
}

fn scripts(len: usize, moves: &[Move]) -> Vec<Vec<Move>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.iter().flat_map(|s| moves.iter().map(move |m| [s.clone(), vec![m.clone()]].concat())).collect();
    }
    out
}

fn brute_force(t: &mut Tally, a: &Node<'_>, b: &Node<'_>) -> Result<(), String> {
    let (pa, pb) = (to_pda(a).map_err(|e| e.to_string())?, to_pda(b).map_err(|e| e.to_string())?);
    let moves = [Move::Skip, Move::Letter(P), Move::Letter(M), Move::DeclareTail(vec![P]), Move::DeclareTail(vec![M, P])];
    for rounds in 1..=4 {
        let all = scripts(rounds, &moves);
        let in_a: Vec<bool> = all.iter().map(|s| pa.accepts(&script_word(s))).collect();
        let in_b: Vec<bool> = all.iter().map(|s| pb.accepts(&script_word(s))).collect();
        for (i, s1) in all.iter().enumerate() {
            for (j, s2) in all.iter().enumerate() {
                let want = if in_a[i] == in_b[j] { GameOutcome::P2Wins } else { GameOutcome::P1Wins };
                let rec = play(a, b, &Scripted(s1.clone()), &Scripted(s2.clone()), rounds, Rules::default())
                    .map_err(|e| e.to_string())?;
                t.check(rec.outcome == want, || format!("{s1:?} vs {s2:?}: referee {}, brute force {want}", rec.outcome));
            }
        }
    }
    Ok(())
}

pub fn run() -> Outcome {
    let mut env = Env::new();
    // finite words ending in m, infinite words with infinitely many m
    let mut fa = FiniteAutomaton::new(2, 0);
    for s in 0..2 {
        fa.add(s, P, 0);
        fa.add(s, M, 1);
    }
    fa.finals.insert(1);
    fa.buchi.insert(1);
    env.insert("ends_m", fa.to_pda(), None);

    let two = Expr::sum(Expr::Empty, Expr::Empty);
    let exprs = [
        signed(P, M),
        Expr::scalar(Expr::Empty, 3),
        Expr::tilde(two.clone()),
        Expr::approx(two.clone()),
        Expr::bullet(two),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut t = Tally::new();
    for e in &exprs {
        copy_wins(&mut t, &mut rng, e, &env)?;
    }
    let copy_plays = t.checked;
    let sum = signed(P, M).compile(&env).map_err(|e| e.to_string())?;
    let co = Expr::complement(signed(P, M)).compile(&env).map_err(|e| e.to_string())?;
    let atom = Expr::atom("ends_m", None).compile(&env).map_err(|e| e.to_string())?;
    brute_force(&mut t, &sum, &co)?;
    brute_force(&mut t, &atom, &sum)?;
    t.finish(&format!("plays ({copy_plays} copy plays)"))
}
