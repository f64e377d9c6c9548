use num_bigint::BigUint;
use serde::Serialize;

use super::{Verifier, VerifyError};
use crate::clocks::{ClockedMachine, GrowthFamily, Unresolved};
use crate::diagonal::{Permutation, Representation};
use crate::machine::{constant_machine, encode_machine};
use crate::words::{pair, BinaryWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found(u64),
    BudgetExhausted,
    /// The clocked run on this `x` hit the simulation ceiling.
    Unresolved(u64),
}

/// Result of a budgeted μ-search over `x = 0, 1, ..., budget`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    #[serde(flatten)]
    pub outcome: SearchOutcome,
    /// Search points examined.
    pub probes: u64,
}

impl SearchResult {
    pub fn witness(&self) -> Option<u64> {
        match self.outcome {
            SearchOutcome::Found(x) => Some(x),
            _ => None,
        }
    }

    pub fn found(&self) -> bool {
        self.witness().is_some()
    }
}

/// `P^φ(m, x)` and `A^φ(m, x)` for a fixed verifier and growth family, with the
/// μ-search functions built on them.
///
/// Clocked runs are exact. An optional simulation ceiling bounds the steps any
/// single run may simulate directly; runs that need more are reported as
/// [`Unresolved`] instead of being waited for.
#[derive(Clone, Copy)]
pub struct Predicates<'a> {
    verifier: &'a dyn Verifier,
    family: &'a dyn GrowthFamily,
    ceiling: Option<u64>,
}

impl<'a> Predicates<'a> {
    pub fn new(verifier: &'a dyn Verifier, family: &'a dyn GrowthFamily) -> Self {
        Self {
            verifier,
            family,
            ceiling: None,
        }
    }

    pub fn with_simulation_ceiling(self, ceiling: Option<u64>) -> Self {
        Self { ceiling, ..self }
    }

    pub fn verifier(&self) -> &'a dyn Verifier {
        self.verifier
    }

    pub fn family(&self) -> &'a dyn GrowthFamily {
        self.family
    }

    pub fn simulation_ceiling(&self) -> Option<u64> {
        self.ceiling
    }

    /// The clocked machine at position `m` of the enumeration permuted by `phi`.
    pub fn machine_at(&self, phi: &impl Permutation, m: &BigUint) -> ClockedMachine<'a> {
        ClockedMachine::from_code(&phi.apply(m), self.family)
    }

    /// `V(⟨x, P_p(x)⟩)` for an explicit clocked machine.
    pub fn accepts(
        &self,
        machine: &ClockedMachine<'_>,
        x: &BinaryWord,
    ) -> Result<bool, Unresolved> {
        let run = machine.run_within(x, self.ceiling)?;
        self.verifier
            .check_long(x, &run.output)
            .ok_or_else(|| Unresolved::OutputTooLong {
                verifier: self.verifier.name().to_string(),
                code: machine.code().to_string(),
                input: x.to_string(),
                len: run.output.len().to_string(),
            })
    }

    /// `P^φ(m, x)`: the verifier rejects the machine's output on `x`.
    pub fn pred_p(
        &self,
        phi: &impl Permutation,
        m: &BigUint,
        x: &BigUint,
    ) -> Result<bool, Unresolved> {
        let word = BinaryWord::from_index(x);
        Ok(!self.accepts(&self.machine_at(phi, m), &word)?)
    }

    /// `A^φ(m, x)`: the verifier accepts the machine's output on `x`.
    pub fn pred_a(
        &self,
        phi: &impl Permutation,
        m: &BigUint,
        x: &BigUint,
    ) -> Result<bool, Unresolved> {
        Ok(!self.pred_p(phi, m, x)?)
    }

    /// `f^φ_P(m) = μx P^φ(m, x)`, searched over `0..=budget`.
    pub fn f_p(&self, phi: &impl Permutation, m: &BigUint, budget: u64) -> SearchResult {
        let machine = self.machine_at(phi, m);
        for x in 0..=budget {
            let outcome = match self.accepts(&machine, &BinaryWord::from_index_u64(x)) {
                Ok(true) => continue,
                Ok(false) => SearchOutcome::Found(x),
                Err(_) => SearchOutcome::Unresolved(x),
            };
            return SearchResult {
                outcome,
                probes: x + 1,
            };
        }
        SearchResult {
            outcome: SearchOutcome::BudgetExhausted,
            probes: budget.saturating_add(1),
        }
    }

    /// `f^0_{¬A}(m) = μx ¬A^0(m, x)`, which coincides with `f^0_P`.
    pub fn f_neg_a(&self, m: &BigUint, budget: u64) -> SearchResult {
        self.f_p(&Representation::identity(), m, budget)
    }
}

/// Clocked-machine codes for which `x0` is acceptable.
///
/// Finds the first `s` (by canonical index, up to `search_bound`) with
/// `V(⟨x0, s⟩) = 1`, builds the constant machine `C_s` with running time
/// `c = c_s(|x0|)` and returns `pair(C_s, c + k)` for `k = 0..count`.
pub fn acceptable_machines(
    verifier: &dyn Verifier,
    x0: &BigUint,
    count: u64,
    family: &dyn GrowthFamily,
    search_bound: u64,
) -> Result<Vec<BigUint>, VerifyError> {
    let x_word = BinaryWord::from_index(x0);
    let s = (0..=search_bound)
        .map(BinaryWord::from_index_u64)
        .find(|s| verifier.check(&x_word, s))
        .ok_or_else(|| VerifyError::NoWitness {
            instance: x0.to_string(),
            searched: search_bound.saturating_add(1),
        })?;
    let constant = constant_machine(&s);
    let i = encode_machine(constant.machine());
    let running_time = constant.step_bound(x_word.len() as u64);
    // g_c(n) >= c + 3 for any lawful family, so c = c_s(|x0|) already suffices;
    // the loop only matters for families that break the laws.
    let mut c = running_time;
    while family.clock_steps(&BigUint::from(c), x_word.len() as u64) < running_time {
        c += 1;
    }
    Ok((0..count)
        .map(|k| pair(&i, &BigUint::from(c + k)))
        .collect())
}
