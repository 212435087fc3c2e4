use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wadgeforge_core::concil::{build_omega, Expr};
use wadgeforge_core::ordinal::{h_map, Base, Ordinal};
use wadgeforge_core::words::{eraser_eval, EraserMode, Word};

use crate::{Outcome, Tally};

pub fn h_examples() -> Outcome {
    // (input, ascii form, printed form as displayed in the worked examples)
    let cases = [
        ("e2 + 4", "e2 + 4", "¹ε₂ + 4"),
        ("e2 + e1 + 4", "e2 + e1 + 5", "¹ε₂ + ¹ε₁ + 5"),
        (
            "e2*3 + w^(e1 + w^w) + w^(w^w + 2)",
            "e2*3 + w^(e1 + w^w) + w^(w^w + 2)",
            "¹ε₂·3 + ω₁^(¹ε₁ + ω₁^ω₁) + ω₁^(ω₁^ω₁ + 2)",
        ),
        (
            "e4*3 + w^(e3 + e1) + w^(e2 + e1 + 5) + e2 + 3",
            "e4*3 + w^(e3 + e1 + 1) + w^(e2 + e1 + 6) + e2 + 4",
            "¹ε₄·3 + ω₁^(¹ε₃ + ¹ε₁ + 1) + ω₁^(¹ε₂ + ¹ε₁ + 6) + ¹ε₂ + 4",
        ),
    ];
    let mut t = Tally::new();
    for (input, ascii, pretty) in cases {
        let a = Ordinal::parse(Base::Omega, input).map_err(|e| e.to_string())?;
        let h = h_map(&a).map_err(|e| e.to_string())?;
        t.check(h.to_string() == ascii && h.pretty() == pretty, || format!("H({input}) = {} / {}", h, h.pretty()));
    }
    t.finish("examples")
}

pub fn eraser_examples() -> Outcome {
    let cases = [("(a~)^w", "λ"), ("(a~~)^w", "λ"), ("(ab~)^w", "(a)^w"), ("bb(~a)^w", "b")];
    let mut t = Tally::new();
    for (input, expect) in cases {
        let w = Word::parse(input).map_err(|e| e.to_string())?;
        let got = eraser_eval(&w, EraserMode::Tilde).map_err(|e| e.to_string())?;
        t.check(got.to_string() == expect, || format!("{input} -> {got}, expected {expect}"));
    }
    t.finish("examples")
}

pub fn degree_chain() -> Outcome {
    let mut t = Tally::new();
    let mut e = Expr::sum(Expr::Empty, Expr::Empty);
    let d = e.degree().map_err(|e| e.to_string())?;
    t.check(d == Ordinal::finite(Base::Omega1, 2), || format!("degree(∅+∅) = {d}"));
    for j in 1..=5u32 {
        e = Expr::bullet(e);
        let d = e.degree().map_err(|e| e.to_string())?;
        t.check(d == Ordinal::eps(Base::Omega1, j - 1), || format!("bullet^{j} has degree {d}"));
    }
    t.finish("degrees")
}

/// A random nonzero ordinal below ε_ω with nesting depth at most `depth`.
pub fn random_ordinal(rng: &mut ChaCha8Rng, base: Base, depth: u32, max_eps: u32) -> Ordinal {
    let terms = rng.gen_range(1..=3);
    let mut acc = Ordinal::zero(base);
    for _ in 0..terms {
        let coeff = rng.gen_range(1..=5u64);
        let head = match rng.gen_range(0..4) {
            0 => Ordinal::eps(base, rng.gen_range(0..=max_eps)),
            1 | 2 if depth > 1 => random_ordinal(rng, base, depth - 1, max_eps).base_pow(),
            _ => Ordinal::finite(base, 1),
        };
        let term = head.mul_nat(coeff).expect("small coefficients");
        acc = acc.add(&term).expect("same base");
    }
    acc
}

pub fn omega_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut t = Tally::new();
    for _ in 0..600 {
        let a = random_ordinal(&mut rng, Base::Omega, 4, 4);
        let h = h_map(&a).map_err(|e| e.to_string())?;
        let back = build_omega(&h).and_then(|e| e.degree());
        t.check(back.as_ref() == Ok(&h), || format!("α = {a}: H = {h}, got {back:?}"));
    }
    t.finish("ordinals")
}
