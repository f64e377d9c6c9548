use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use super::{Permutation, Representation};
use crate::machine::decode_machine;
use crate::verify::{Predicates, SearchOutcome, SearchResult};
use crate::words::BinaryWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Steps allowed for each supplied machine on its diagonal input.
    pub meta_steps: u64,
    /// Positions scanned past `m` for an accepting machine.
    pub scan_ceiling: u64,
    /// Largest `x` probed by the `f_P` searches.
    pub search_budget: u64,
    /// Steps any single clocked run may simulate directly.
    pub simulation_ceiling: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            meta_steps: 100_000,
            scan_ceiling: 1_000_000,
            search_budget: 10_000,
            simulation_ceiling: 10_000_000,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagonalError {
    #[error("step {step}: machine {e} did not halt on position {m} within {steps} steps")]
    TotalityViolation {
        step: u64,
        e: String,
        m: u64,
        steps: u64,
    },
    #[error("step {step}: no machine within {ceiling} positions after {m} accepts {y_prime}")]
    ScanCeiling {
        step: u64,
        m: u64,
        y_prime: String,
        ceiling: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub i: u64,
    /// Machine index computing `F_i`.
    pub e: BigUint,
    /// Diagonal position.
    pub m: u64,
    /// `F_i(m)` as a canonical index.
    pub y_prime: BigUint,
    pub swapped: bool,
    /// Position whose machine was swapped into `m`.
    pub k: Option<u64>,
    /// `f_P(m)` was not found within the search budget before this step.
    pub provisional_partial: bool,
    /// Scanned positions whose clocked run hit the simulation ceiling.
    pub unresolved: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagonalState {
    pub phi: Representation,
    pub m_next: u64,
    pub steps: Vec<StepRecord>,
}

impl DiagonalState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "phi_prefix": self.phi.prefix(),
            "steps": self.steps.iter().map(|s| json!({
                "i": s.i,
                "e": s.e.to_string(),
                "m": s.m,
                "y_prime": s.y_prime.to_string(),
                "swapped": s.swapped,
                "k": s.k,
                "provisional_partial": s.provisional_partial,
                "unresolved": s.unresolved,
            })).collect::<Vec<_>>(),
        })
    }

    /// One row per step: `i,e,m,y_prime,swapped,k,provisional_partial`.
    pub fn witness_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "i",
            "e",
            "m",
            "y_prime",
            "swapped",
            "k",
            "provisional_partial",
        ])
        .expect("in-memory write");
        for s in &self.steps {
            w.write_record([
                s.i.to_string(),
                s.e.to_string(),
                s.m.to_string(),
                s.y_prime.to_string(),
                s.swapped.to_string(),
                s.k.map(|k| k.to_string()).unwrap_or_default(),
                s.provisional_partial.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

/// One diagonalization step against the function computed by machine `e`.
pub fn diagonal_step(
    mut state: DiagonalState,
    e: &BigUint,
    preds: &Predicates<'_>,
    budgets: &Budgets,
) -> Result<DiagonalState, DiagonalError> {
    let preds = &preds.with_simulation_ceiling(Some(budgets.simulation_ceiling));
    let i = state.steps.len() as u64;
    let m = state.m_next;
    let m_big = BigUint::from(m);
    let provisional_partial = !preds.f_p(&state.phi, &m_big, budgets.search_budget).found();

    let run = decode_machine(e).run(&BinaryWord::from_index_u64(m), budgets.meta_steps);
    let Some(output) = run.output() else {
        return Err(DiagonalError::TotalityViolation {
            step: i,
            e: e.to_string(),
            m,
            steps: budgets.meta_steps,
        });
    };
    let y_prime = output.index();
    let y_word = output.clone();

    // A run past the ceiling is never certified as accepting, so it is skipped.
    let mut unresolved = 0;
    let mut accepts_at = |phi: &Representation, position: u64| {
        preds
            .accepts(&preds.machine_at(phi, &BigUint::from(position)), &y_word)
            .unwrap_or_else(|_| {
                unresolved += 1;
                false
            })
    };

    let k = if accepts_at(&state.phi, m) {
        None
    } else {
        let found = (m + 1..=m.saturating_add(budgets.scan_ceiling))
            .find(|&j| accepts_at(&state.phi, j))
            .ok_or_else(|| DiagonalError::ScanCeiling {
                step: i,
                m,
                y_prime: y_prime.to_string(),
                ceiling: budgets.scan_ceiling,
            })?;
        state.phi.transpose(m, found);
        Some(found)
    };
    let last = k.unwrap_or(m);
    state.phi.extend_to(last as usize + 1);
    state.m_next = last + 1;
    state.steps.push(StepRecord {
        i,
        e: e.clone(),
        m,
        y_prime,
        swapped: k.is_some(),
        k,
        provisional_partial,
        unresolved,
    });
    Ok(state)
}

/// Folds [`diagonal_step`] over the stream, starting from the identity.
pub fn run_diagonalization(
    stream: &[BigUint],
    preds: &Predicates<'_>,
    budgets: &Budgets,
) -> Result<DiagonalState, DiagonalError> {
    stream.iter().try_fold(DiagonalState::new(), |state, e| {
        diagonal_step(state, e, preds, budgets)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    /// `f_P(m)` was found and differs from `F_i(m)`.
    Diverges,
    /// `f_P(m)` was not found within the budget; `F_i(m)` is still accepted.
    DivergenceByAcceptanceOnly,
    /// `A^φ(m, y')` could not be evaluated under the simulation ceiling.
    Unresolved,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergenceVerdict {
    pub i: u64,
    pub m: u64,
    pub y_prime: BigUint,
    /// `A^φ(m, y')` under the final representation, if it was evaluated.
    pub accepted: Option<bool>,
    pub f_p: SearchResult,
    pub kind: VerdictKind,
}

impl DivergenceVerdict {
    pub fn pass(&self) -> bool {
        matches!(
            self.kind,
            VerdictKind::Diverges | VerdictKind::DivergenceByAcceptanceOnly
        )
    }
}

/// Rechecks every step against the final representation.
pub fn check_divergence(
    state: &DiagonalState,
    preds: &Predicates<'_>,
    budget: u64,
) -> Vec<DivergenceVerdict> {
    state
        .steps
        .iter()
        .map(|s| {
            let m = BigUint::from(s.m);
            let accepted = preds.pred_a(&state.phi, &m, &s.y_prime).ok();
            let f_p = preds.f_p(&state.phi, &m, budget);
            let kind = match (accepted, f_p.outcome) {
                (None, _) => VerdictKind::Unresolved,
                (Some(false), _) => VerdictKind::Fails,
                (Some(true), SearchOutcome::Found(y)) if BigUint::from(y) == s.y_prime => {
                    VerdictKind::Fails
                }
                (Some(true), SearchOutcome::Found(_)) => VerdictKind::Diverges,
                (Some(true), _) => VerdictKind::DivergenceByAcceptanceOnly,
            };
            DivergenceVerdict {
                i: s.i,
                m: s.m,
                y_prime: s.y_prime.clone(),
                accepted,
                f_p,
                kind,
            }
        })
        .collect()
}

/// Positions `0..len` under `phi` decoded back to themselves.
pub fn is_permutation_on(phi: &impl Permutation, len: u64) -> bool {
    (0..len).all(|p| {
        let p = BigUint::from(p);
        phi.inverse(&phi.apply(&p)) == p && phi.apply(&phi.inverse(&p)) == p
    })
}
