use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wadgeforge_core::pda::named::{make_named, CodeAlphabet, Named};
use wadgeforge_core::words::{h_decode, h_prefix, EraserCode, GridPrefix, Letter, Word, SEP_B, SEP_C};

use crate::{Outcome, Tally};

const SIGMA: [Letter; 2] = [Letter::Plain('0'), Letter::Plain('1')];

// Block p lists the p-th anti-diagonal, from row 1 down for odd p and from
// column 1 up for even p; blocks end in C, B, C, … in turn.
fn expected_prefix(g: &GridPrefix) -> Vec<Letter> {
    let mut out = Vec::new();
    for p in 1..=g.depth() {
        let cells: Vec<Letter> = (1..=p).map(|m| g.get(m, p + 1 - m).unwrap()).collect();
        if p % 2 == 1 {
            out.extend(&cells);
            out.push(SEP_C);
        } else {
            out.extend(cells.iter().rev());
            out.push(SEP_B);
        }
    }
    out
}

fn grid_from_bits(depth: usize, mut bits: impl FnMut() -> bool) -> GridPrefix {
    let rows = (0..depth).map(|m| (0..depth - m).map(|_| SIGMA[bits() as usize]).collect()).collect();
    GridPrefix::new(rows).expect("triangular")
}

fn check_grid(t: &mut Tally, g: &GridPrefix) {
    let w = h_prefix(g);
    t.check(w == expected_prefix(g), || format!("h_prefix of depth {} grid: {w:?}", g.depth()));
    t.check(h_decode(&w).as_ref() == Some(g), || format!("h_decode does not invert {w:?}"));
}

pub fn run() -> Outcome {
    let mut t = Tally::new();
    let mut grids = Vec::new();
    for depth in 1..=4 {
        let cells = depth * (depth + 1) / 2;
        for mask in 0u32..(1 << cells) {
            let mut k = 0;
            let g = grid_from_bits(depth, || {
                k += 1;
                mask >> (k - 1) & 1 == 1
            });
            check_grid(&mut t, &g);
            grids.push(g);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let depth = rng.gen_range(1..=8);
        let g = grid_from_bits(depth, || rng.gen_bool(0.5));
        check_grid(&mut t, &g);
        grids.push(g);
    }
    // no ultimately periodic word codes an ω²-word, so every continuation
    // of a code prefix must be accepted by the complement automaton
    let alph = CodeAlphabet::new(SIGMA.to_vec(), EraserCode { level: 0, offset: 0 });
    let hc = make_named(Named::HComplement, &alph).map_err(|e| e.to_string())?;
    let letters = [SIGMA[0], SIGMA[1], SEP_B, SEP_C];
    for _ in 0..300 {
        let g = &grids[rng.gen_range(0..grids.len())];
        let mut stem = h_prefix(g);
        let (ls, lp) = (rng.gen_range(0..6), rng.gen_range(1..8));
        stem.extend((0..ls).map(|_| letters[rng.gen_range(0..4)]));
        let period: Vec<Letter> = (0..lp).map(|_| letters[rng.gen_range(0..4)]).collect();
        let w = Word::from_parts(stem, period);
        t.check(hc.accepts(&w), || format!("h_complement rejects {w}"));
    }
    t.finish("checks")
}
