//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod bullet;
mod ce;
mod eraser;
mod game;
mod grid;
mod laws;
mod named;
mod small;

use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "H map worked examples", budget: secs(1), run: small::h_examples },
        Criterion { id: 2, name: "eraser worked examples", budget: secs(1), run: small::eraser_examples },
        Criterion { id: 3, name: "degree chain", budget: secs(1), run: small::degree_chain },
        Criterion { id: 4, name: "omega round trip", budget: secs(10), run: small::omega_round_trip },
        Criterion { id: 5, name: "UP eraser evaluation vs prefix simulation", budget: secs(30), run: eraser::run },
        Criterion { id: 6, name: "named languages vs definitions", budget: secs(60), run: named::run },
        Criterion { id: 7, name: "C^e shape witnesses", budget: None, run: ce::run },
        Criterion { id: 8, name: "bullet automaton vs membership", budget: None, run: bullet::run },
        Criterion { id: 9, name: "h coding", budget: None, run: grid::run },
        Criterion { id: 10, name: "ordinal laws", budget: secs(10), run: laws::run },
        Criterion { id: 11, name: "game harness", budget: None, run: game::run },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.id.to_string() == *f) {
            continue;
        }
        let start = Instant::now();
        let res = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let res = match (res, c.budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("took {took:.2?}, budget {b:?}")),
            (r, _) => r,
        };
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {} ({detail}; {took:.2?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} ({why}; {took:.2?})", c.id, c.name);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}

/// Collects up to a few disagreement descriptions and turns them into an outcome.
pub struct Tally {
    pub checked: usize,
    pub failures: usize,
    pub bad: Vec<String>,
}

impl Default for Tally {
    fn default() -> Self {
        Self::new()
    }
}

impl Tally {
    pub fn new() -> Self {
        Tally { checked: 0, failures: 0, bad: Vec::new() }
    }
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.bad.len() < 5 {
                self.bad.push(what());
            }
        }
    }
    pub fn finish(self, label: &str) -> Outcome {
        if self.failures == 0 {
            Ok(format!("{} {label}", self.checked))
        } else {
            Err(format!("{} of {} {label} disagree: {}", self.failures, self.checked, self.bad.join("; ")))
        }
    }
}
