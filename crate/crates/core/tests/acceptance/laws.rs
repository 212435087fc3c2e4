use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wadgeforge_core::ordinal::{h_map, Base, Head, Ordinal};

use crate::small::random_ordinal;
use crate::{Outcome, Tally};

fn lead(a: &Ordinal) -> Ordinal {
    match a.terms().first().map(|t| &t.head) {
        Some(Head::Eps(i)) => Ordinal::eps(a.base(), *i),
        Some(Head::Pow(e)) => e.base_pow(),
        None => Ordinal::zero(a.base()),
    }
}

pub fn run() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut t = Tally::new();
    for k in 0..10_000 {
        let base = if k % 2 == 0 { Base::Omega } else { Base::Omega1 };
        let depth = rng.gen_range(1..=4);
        let [a, b, c] = [0, 1, 2].map(|_| random_ordinal(&mut rng, base, depth, 3));
        let ab = a.compare(&b).unwrap();
        t.check(ab == b.compare(&a).unwrap().reverse() && (ab == Ordering::Equal) == (a == b), || {
            format!("compare not total/antisymmetric on {a}, {b}")
        });
        let bc = b.compare(&c).unwrap();
        if ab != Ordering::Greater && bc != Ordering::Greater {
            t.check(a <= c, || format!("transitivity fails: {a} ≤ {b} ≤ {c}"));
        }
        let l = a.add(&b).unwrap().add(&c).unwrap();
        let r = a.add(&b.add(&c).unwrap()).unwrap();
        t.check(l == r, || format!("({a} + {b}) + {c} = {l} but {a} + ({b} + {c}) = {r}"));
        // a term below the leading power of b disappears
        if lead(&a) < lead(&b) {
            t.check(a.add(&b).unwrap() == b, || format!("{a} + {b} does not absorb"));
        }
        t.check(a.add(&b).unwrap() >= b && a.add(&b).unwrap() >= a, || format!("{a} + {b} is not an upper bound"));
        if a != b {
            let (lo, hi) = if a < b { (&a, &b) } else { (&b, &a) };
            t.check(lo.base_pow() < hi.base_pow(), || format!("base_pow not increasing at {lo} < {hi}"));
            if base == Base::Omega {
                let (hl, hh) = (h_map(lo).unwrap(), h_map(hi).unwrap());
                t.check(hl < hh, || format!("H({lo}) = {hl} not below H({hi}) = {hh}"));
            }
        }
    }
    t.finish("law instances")
}
