use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wadgeforge_core::concil::{member, to_pda, Env, Expr, Kind};
use wadgeforge_core::words::{encode_erasers, Letter, Word};

use crate::{Outcome, Tally};

fn corrupt(rng: &mut ChaCha8Rng, w: &[Letter], level: u32) -> Option<(Vec<Letter>, usize)> {
    // pick one code segment and make two neighbouring runs differ
    let alpha = Letter::marker('α', level);
    let starts: Vec<usize> = (0..w.len()).filter(|&i| w[i] == alpha).collect();
    if starts.is_empty() {
        return None;
    }
    let s = starts[rng.gen_range(0..starts.len())];
    let tag = ['B', 'C', 'D', 'E'][rng.gen_range(0..4)];
    let at = (s..w.len()).find(|&i| w[i] == Letter::marker(tag, level))?;
    let mut v = w.to_vec();
    v.insert(at, Letter::marker(tag, level));
    Some((v, at))
}

pub fn run() -> Outcome {
    let env = Env::new();
    let two = Expr::sum(Expr::Empty, Expr::Empty);
    let mut t = Tally::new();
    let (mut decodable, mut junk) = (0, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for base in [two.clone(), Expr::tilde(two)] {
        let e = Expr::bullet(base);
        let node = e.compile(&env).map_err(|e| e.to_string())?;
        let Kind::Bullet { base: inner, code, .. } = &node.kind else { unreachable!() };
        let code = *code;
        let sigma: Vec<Letter> = inner.alphabet.iter().copied().collect();
        let pda = to_pda(&node).map_err(|e| e.to_string())?;
        let (a, b) = (Letter::marker('a', code.level), Letter::marker('b', code.level));
        let part = |rng: &mut ChaCha8Rng, n: u32, len: usize| -> Vec<Letter> {
            (0..len)
                .map(|_| {
                    if rng.gen_bool(0.35) {
                        Letter::Eraser(code.offset + rng.gen_range(1..=n))
                    } else {
                        sigma[rng.gen_range(0..sigma.len())]
                    }
                })
                .collect()
        };
        let mut seen = [0usize; 2];
        for k in 0..160 {
            let n = rng.gen_range(1..=3u32);
            let (ls, lp) = (rng.gen_range(0..6), rng.gen_range(1..4));
            let raw = Word::from_parts(part(&mut rng, n, ls), part(&mut rng, n, lp));
            let body = encode_erasers(&raw, code);
            let mut head = vec![a; n as usize];
            head.push(b);
            let w = body.prepend(&head);
            let want = member(&node, &w).map_err(|e| e.to_string())?;
            seen[want as usize] += 1;
            let got = pda.accepts(&w);
            decodable += 1;
            t.check(got == want, || format!("{e} on {w}: automaton {got}, member {want}"));
            // junk: the same word with one segment spoiled, or coding an index above n
            let spoiled = if k % 2 == 0 {
                let mut stem = w.stem().to_vec();
                let cut = stem.len();
                stem.extend(w.period());
                corrupt(&mut rng, &stem, code.level).map(|(v, at)| {
                    let split = if at < cut { cut + 1 } else { cut };
                    Word::from_parts(v[..split].to_vec(), v[split..].to_vec())
                })
            } else {
                let mut stem = head.clone();
                stem.extend(encode_erasers(&Word::finite(part(&mut rng, n, 2)), code).stem());
                stem.extend(code.encode_one(n + 1));
                Some(Word::from_parts(stem, w.period().to_vec()))
            };
            if let Some(j) = spoiled {
                // a spoiled segment that breaks the frame is not junk, but must still agree
                let want = member(&node, &j).map_err(|e| e.to_string())?;
                let got = pda.accepts(&j);
                junk += want as usize;
                t.check(want == got, || format!("{e} spoiled {j}: automaton {got}, member {want}"));
            }
        }
        if seen[0] < 20 || seen[1] < 20 {
            return Err(format!("{e}: unbalanced sample, {} members of {}", seen[1], seen[0] + seen[1]));
        }
    }
    if decodable < 200 || junk < 50 {
        return Err(format!("only {decodable} decodable and {junk} junk words"));
    }
    t.finish(&format!("words ({decodable} decodable, {junk} junk)"))
}
