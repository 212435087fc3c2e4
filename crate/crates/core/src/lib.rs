//! Executable model of the Wadge hierarchy of omega context free languages.
//!
//! * [`ordinal`]: Cantor normal forms below ε_ω and ¹ε_ω, plus the `H` embedding.
//! * [`words`]: finite and ultimately periodic words, eraser evaluation, codings.
//! * [`concil`]: conciliating-set expressions with degrees and membership.
//! * [`pda`]: Büchi pushdown automata, closure constructions, named languages.
//! * [`game`]: a bounded referee for the conciliating Wadge game.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod concil;
pub mod game;
pub mod ordinal;
pub mod pda;
pub mod words;
