//! Kleene's `T` predicate and `U` extraction over computation-history codes,
//! the normal form `φ_e(x) = U(μy T(e, x, y))` and the totalized variant
//! `U(μy (T(e, x, y) ∨ Q(y)))`.
//!
//! A halting run has exactly one valid history code (see [`history`]), so
//! `μy T(e, x, y)` is found by simulating the run and encoding it. The search
//! gives up once the history seen so far is too long for any code `<= budget`.

pub mod history;

pub use history::{CanonicalConfig, HistoryCode};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::machine::{decode_machine, TuringMachine};
use crate::words::BinaryWord;

/// Why a μ-search stopped at its witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StopReason {
    /// The witness is the code of a halting history.
    Halted,
    /// The caller's predicate holds at the witness, which is not a history.
    Predicate,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Halted => "halted",
            StopReason::Predicate => "predicate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KleeneResult {
    Found {
        witness: BigUint,
        output: BinaryWord,
        reason: StopReason,
    },
    BudgetExhausted,
}

impl KleeneResult {
    pub fn witness(&self) -> Option<&BigUint> {
        match self {
            KleeneResult::Found { witness, .. } => Some(witness),
            KleeneResult::BudgetExhausted => None,
        }
    }

    pub fn output(&self) -> Option<&BinaryWord> {
        match self {
            KleeneResult::Found { output, .. } => Some(output),
            KleeneResult::BudgetExhausted => None,
        }
    }

    pub fn reason(&self) -> Option<StopReason> {
        match self {
            KleeneResult::Found { reason, .. } => Some(*reason),
            KleeneResult::BudgetExhausted => None,
        }
    }

    pub fn found(&self) -> bool {
        self.witness().is_some()
    }
}

/// A total predicate `Q` on naturals that can report its least true point
/// below a bound.
pub trait SearchPredicate {
    fn holds(&self, y: &BigUint) -> bool;

    /// Least `y <= bound` with `holds(y)`.
    fn first_at_most(&self, bound: &BigUint) -> Option<BigUint>;
}

/// `Q(y) = false`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Never;

impl SearchPredicate for Never {
    fn holds(&self, _: &BigUint) -> bool {
        false
    }

    fn first_at_most(&self, _: &BigUint) -> Option<BigUint> {
        None
    }
}

/// `Q(y) = (y = y0)`.
#[derive(Clone, Debug)]
pub struct TrueAt(pub BigUint);

impl SearchPredicate for TrueAt {
    fn holds(&self, y: &BigUint) -> bool {
        *y == self.0
    }

    fn first_at_most(&self, bound: &BigUint) -> Option<BigUint> {
        (self.0 <= *bound).then(|| self.0.clone())
    }
}

/// `Q(y) = (y >= y0)`.
#[derive(Clone, Debug)]
pub struct TrueFrom(pub BigUint);

impl SearchPredicate for TrueFrom {
    fn holds(&self, y: &BigUint) -> bool {
        *y >= self.0
    }

    fn first_at_most(&self, bound: &BigUint) -> Option<BigUint> {
        (self.0 <= *bound).then(|| self.0.clone())
    }
}

/// `Q(y) = y < limit ∧ f(y)`, searched by scanning.
#[derive(Clone, Debug)]
pub struct Scanned<F> {
    pub f: F,
    pub limit: u64,
}

impl<F: Fn(u64) -> bool> SearchPredicate for Scanned<F> {
    fn holds(&self, y: &BigUint) -> bool {
        y.to_u64().is_some_and(|y| y < self.limit && (self.f)(y))
    }

    fn first_at_most(&self, bound: &BigUint) -> Option<BigUint> {
        let end = bound
            .to_u64()
            .map_or(self.limit, |b| b.saturating_add(1).min(self.limit));
        (0..end).find(|&y| (self.f)(y)).map(BigUint::from)
    }
}

fn initial_config(machine: &TuringMachine, x: &BigUint) -> CanonicalConfig {
    CanonicalConfig::from_configuration(&machine.initial(&BinaryWord::from_index(x)))
}

/// `T(e, x, z)`: `z` codes a halting computation of machine `e` on the word
/// of `x`. Work is bounded by the length of `z`.
pub fn kleene_t(e: &BigUint, x: &BigUint, z: &BigUint) -> bool {
    let Some(history) = HistoryCode::decode(z) else {
        return false;
    };
    let machine = decode_machine(e);
    let configs = history.configs();
    if configs[0] != initial_config(&machine, x) {
        return false;
    }
    let steps_valid = configs.windows(2).all(|pair| {
        let mut c = pair[0].to_configuration(0);
        machine.step(&mut c).is_ok() && CanonicalConfig::from_configuration(&c) == pair[1]
    });
    steps_valid && history.last().state == 0
}

/// `U(z)`: the output word of the last configuration of the history coded by
/// `z`, or `∅` when `z` codes no history.
pub fn kleene_u(z: &BigUint) -> BinaryWord {
    HistoryCode::decode(z).map_or_else(BinaryWord::empty, |h| h.last().output_word())
}

/// Runs machine `e` on `x` for at most `max_steps` steps and returns the code
/// of the halting history, if the run halts in time.
pub fn encode_history(e: &BigUint, x: &BigUint, max_steps: u64) -> Option<HistoryCode> {
    let machine = decode_machine(e);
    let mut c = machine.initial(&BinaryWord::from_index(x));
    let mut configs = vec![CanonicalConfig::from_configuration(&c)];
    while !c.is_halted() {
        if c.steps >= max_steps {
            return None;
        }
        machine.step(&mut c).ok()?;
        configs.push(CanonicalConfig::from_configuration(&c));
    }
    HistoryCode::from_configs(configs)
}

/// The unique `z <= budget` with `T(e, x, z)`, if there is one.
pub fn minimal_history(e: &BigUint, x: &BigUint, budget: &BigUint) -> Option<HistoryCode> {
    // A word of length L has index at least 2^L - 1, so codes <= budget have
    // fewer than bits(budget + 1) bits.
    let max_len = (budget + 1u32).bits();
    let machine = decode_machine(e);
    let mut c = machine.initial(&BinaryWord::from_index(x));
    let mut configs = Vec::new();
    // the count prefix takes at least one bit
    let mut len = 1u64;
    loop {
        let canon = CanonicalConfig::from_configuration(&c);
        len += canon.encoded_len();
        if len >= max_len {
            return None;
        }
        configs.push(canon);
        if c.is_halted() {
            break;
        }
        machine.step(&mut c).ok()?;
    }
    HistoryCode::from_configs(configs).filter(|h| h.code() <= budget)
}

/// `φ_e(x) = U(μy <= budget . T(e, x, y))`.
pub fn phi(e: &BigUint, x: &BigUint, budget: &BigUint) -> KleeneResult {
    match minimal_history(e, x, budget) {
        Some(h) => KleeneResult::Found {
            output: h.last().output_word(),
            witness: h.code().clone(),
            reason: StopReason::Halted,
        },
        None => KleeneResult::BudgetExhausted,
    }
}

/// `U(μy <= budget . (T(e, x, y) ∨ Q(y)))`. A stop caused by `Q` alone
/// yields `∅`.
pub fn unsound_total(
    e: &BigUint,
    q: &dyn SearchPredicate,
    x: &BigUint,
    budget: &BigUint,
) -> KleeneResult {
    let q_first = q.first_at_most(budget);
    let history_bound = q_first.as_ref().unwrap_or(budget);
    if let Some(h) = minimal_history(e, x, history_bound) {
        return KleeneResult::Found {
            output: h.last().output_word(),
            witness: h.code().clone(),
            reason: StopReason::Halted,
        };
    }
    match q_first {
        Some(y) => KleeneResult::Found {
            witness: y,
            output: BinaryWord::empty(),
            reason: StopReason::Predicate,
        },
        None => KleeneResult::BudgetExhausted,
    }
}
