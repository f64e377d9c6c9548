//! Clocked Turing machines over binary words, verifier predicates, Kleene's
//! normal form and a diagonalization engine over permuted machine
//! enumerations.

pub mod cli;
pub mod clocks;
pub mod diagonal;
pub mod kleene;
pub mod machine;
pub mod verify;
pub mod words;
