//! Exact computation with real Bruhat cells: spin lifts of reduced words,
//! their sign-vector strata, the graphs those strata form, and triangular
//! matrix factorizations, all in exact arithmetic.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] — scalars `a * 2^(-h/2)`, the only numbers the algebraic
//!   layers need.
//! * [`words`] — permutations, reduced words in adjacent transpositions,
//!   and the bounded faces of a word's wiring diagram.
//! * [`clifford`] — the even Clifford algebra with `e_i^2 = -1`: products,
//!   reversal, sign conjugation, and the vector representation.
//! * [`spin`] — the finite spin lift of the signed permutation group: cosets
//!   of words, stratum counts `N(z)`, and orbits under sign conjugation.
//! * [`strata`] — sign vectors of a word bucketed by their lift, the click
//!   moves along faces, the resulting one-skeleton per lift, and
//!   dimension-two preancestries.
//! * [`matrix`] — exact rational unipotent factorizations, Bruhat position
//!   of a matrix by rank jumps, and a rational transversal slice.
//! * [`report`] — assembled analysis reports plus DOT/JSON export.
//! * [`checks`] — the self-check suite behind `check` in the CLI.

pub mod checks;
pub mod clifford;
pub mod error;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod spin;
pub mod strata;
pub mod words;

pub use error::{Error, Result};
