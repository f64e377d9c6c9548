//! Verifier machines and the predicates built on them.
//!
//! A verifier is a total 0/1 check on (instance, candidate) pairs with the
//! boundary behaviour
//!
//! * `check(∅, s) = 1` for every nonempty `s`,
//! * `check(x, ∅) = 0` for every `x`, including `x = ∅`,
//!
//! and, for well-behaved instances, both an accepted and a rejected candidate.

mod axioms;
mod np;
mod search;

pub use axioms::{check_axioms, AxiomReport, AxiomViolation};
pub use np::{
    np_member, sat_member, SatRelation, WitnessRelation, DEFAULT_ENUMERATION_CEILING, SAT_MAX_VARS,
};
pub use search::{acceptable_machines, Predicates, SearchOutcome, SearchResult};

use thiserror::Error;

use crate::words::{decode_cnf, BinaryWord, LongWord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("no candidate accepted instance {instance} among the first {searched} words")]
    NoWitness { instance: String, searched: u64 },
    #[error("enumerating {words} candidate words exceeds the ceiling of {ceiling}")]
    InfeasibleBound { words: String, ceiling: u64 },
}

pub trait Verifier: Send + Sync {
    fn name(&self) -> &str;

    /// `V(⟨x, s⟩)`, as a boolean.
    fn check(&self, x: &BinaryWord, s: &BinaryWord) -> bool;

    /// [`Verifier::check`] on a candidate that may be too long to store;
    /// `None` when the verifier cannot decide it in that form.
    fn check_long(&self, x: &BinaryWord, s: &LongWord) -> Option<bool> {
        s.as_word().map(|w| self.check(x, w))
    }

    /// Index of a polynomial clock under which `check` runs; both built-ins
    /// are linear or quadratic in `|x| + |s|`.
    fn cost_index(&self) -> u64 {
        0
    }

    /// True when no candidate at all is accepted for `x`, so the instance is
    /// exempt from the richness clause.
    fn richness_exempt(&self, _x: &BinaryWord) -> bool {
        false
    }
}

/// Accepts `s` iff `s` is nonempty and either `x = ∅` or `s` has an even
/// canonical index.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParityVerifier;

impl Verifier for ParityVerifier {
    fn name(&self) -> &str {
        "parity"
    }

    fn check(&self, x: &BinaryWord, s: &BinaryWord) -> bool {
        !s.is_empty() && (x.is_empty() || s.index_is_even())
    }

    fn check_long(&self, x: &BinaryWord, s: &LongWord) -> Option<bool> {
        Some(!s.is_empty() && (x.is_empty() || s.index_is_even()))
    }
}

/// Decodes `x` as a CNF formula and accepts the assignment `s` (bit `i` is
/// variable `i`, missing variables false) iff it satisfies every clause.
/// The empty-word rules take precedence.
#[derive(Clone, Copy, Debug, Default)]
pub struct CnfSatVerifier;

impl Verifier for CnfSatVerifier {
    fn name(&self) -> &str {
        "cnf"
    }

    fn check(&self, x: &BinaryWord, s: &BinaryWord) -> bool {
        if s.is_empty() {
            return false;
        }
        if x.is_empty() {
            return true;
        }
        decode_cnf(x).satisfied_by(s)
    }

    fn check_long(&self, x: &BinaryWord, s: &LongWord) -> Option<bool> {
        if s.is_empty() || x.is_empty() {
            return Some(!s.is_empty());
        }
        let formula = decode_cnf(x);
        Some(formula.satisfied_by(&s.prefix(formula.var_count() as usize)))
    }

    fn cost_index(&self) -> u64 {
        0
    }

    fn richness_exempt(&self, x: &BinaryWord) -> bool {
        sat_member(x) == Ok(false)
    }
}

pub fn parity_verifier() -> ParityVerifier {
    ParityVerifier
}

pub fn cnf_sat_verifier() -> CnfSatVerifier {
    CnfSatVerifier
}

pub const VERIFIER_NAMES: [&str; 2] = ["parity", "cnf"];

pub fn verifier_by_name(name: &str) -> Option<Box<dyn Verifier>> {
    match name {
        "parity" => Some(Box::new(ParityVerifier)),
        "cnf" => Some(Box::new(CnfSatVerifier)),
        _ => None,
    }
}
