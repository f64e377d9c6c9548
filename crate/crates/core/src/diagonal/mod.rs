//! Representations of the clocked-machine enumeration and the diagonalization
//! engine that builds one against a supplied stream of total functions.

mod engine;
mod representation;
mod stream;

pub use engine::{
    check_divergence, diagonal_step, is_permutation_on, run_diagonalization, Budgets,
    DiagonalError, DiagonalState, DivergenceVerdict, StepRecord, VerdictKind,
};
pub use representation::{apply, inverse, Permutation, Representation, RepresentationError};
pub use stream::{builtin_constants, parse_stream, read_stream, StreamError};

use num_bigint::BigUint;

use crate::verify::Predicates;

/// Tally of an [`equivalence_check`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct EquivalenceReport {
    pub checked: u64,
    pub mismatches: u64,
    /// Samples skipped because a clocked run hit the simulation ceiling.
    pub unresolved: u64,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.mismatches == 0
    }
}

/// Checks `P^φ(m, x) ↔ P^0(φ⁻¹ m, x)` on every sample, from both sides: the
/// code at position `m` must map back to `m`, and each side's predicate value
/// must match the identity enumeration at the translated position.
pub fn equivalence_check(
    preds: &Predicates<'_>,
    phi: &impl Permutation,
    samples: &[(BigUint, BigUint)],
) -> EquivalenceReport {
    let id = Representation::identity();
    let mut report = EquivalenceReport::default();
    for (m, x) in samples {
        let code = phi.apply(m);
        let position = phi.inverse(m);
        let values = (|| {
            Ok::<_, crate::clocks::Unresolved>((
                preds.pred_p(phi, m, x)? == preds.pred_p(&id, &code, x)?,
                preds.pred_p(&id, m, x)? == preds.pred_p(phi, &position, x)?,
            ))
        })();
        let Ok((forward, backward)) = values else {
            report.unresolved += 1;
            continue;
        };
        report.checked += 1;
        let roundtrip = phi.inverse(&code) == *m && phi.apply(&position) == *m;
        if !(roundtrip && forward && backward) {
            report.mismatches += 1;
        }
    }
    report
}
