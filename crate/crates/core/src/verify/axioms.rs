use serde::Serialize;

use super::Verifier;
use crate::words::BinaryWord;

/// A failed verifier clause, with the canonical indices involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "kebab-case")]
pub enum AxiomViolation {
    /// `check(∅, s) = 0` for a nonempty `s`.
    EmptyInstanceRejects { s: u64 },
    /// `check(x, ∅) = 1`.
    EmptyCandidateAccepts { x: u64 },
    /// No candidate `s <= smax` is accepted for `x`.
    NoAcceptedCandidate { x: u64 },
    /// No candidate `s <= smax` is rejected for `x`.
    NoRejectedCandidate { x: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub boundary_checks: u64,
    pub richness_checks: u64,
    /// Instances the verifier declares to have no accepted candidate at all.
    pub richness_exempt: u64,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the boundary clauses for every `x <= xmax` and `s <= smax` and
/// looks for an accepted and a rejected candidate `s <= smax` for each
/// `x <= xmax`.
pub fn check_axioms(verifier: &dyn Verifier, xmax: u64, smax: u64) -> AxiomReport {
    let mut report = AxiomReport::default();
    let empty = BinaryWord::empty();
    for s in 1..=smax {
        report.boundary_checks += 1;
        if !verifier.check(&empty, &BinaryWord::from_index_u64(s)) {
            report
                .violations
                .push(AxiomViolation::EmptyInstanceRejects { s });
        }
    }
    for x in 0..=xmax {
        report.boundary_checks += 1;
        let word = BinaryWord::from_index_u64(x);
        if verifier.check(&word, &empty) {
            report
                .violations
                .push(AxiomViolation::EmptyCandidateAccepts { x });
        }
        report.richness_checks += 1;
        let mut accepted = false;
        let mut rejected = false;
        for s in 0..=smax {
            if verifier.check(&word, &BinaryWord::from_index_u64(s)) {
                accepted = true;
            } else {
                rejected = true;
            }
            if accepted && rejected {
                break;
            }
        }
        if !accepted {
            if verifier.richness_exempt(&word) {
                report.richness_exempt += 1;
            } else {
                report
                    .violations
                    .push(AxiomViolation::NoAcceptedCandidate { x });
            }
        }
        if !rejected {
            report
                .violations
                .push(AxiomViolation::NoRejectedCandidate { x });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{CnfSatVerifier, ParityVerifier};

    struct AcceptsEverything;

    impl Verifier for AcceptsEverything {
        fn name(&self) -> &str {
            "accepts-everything"
        }

        fn check(&self, _x: &BinaryWord, _s: &BinaryWord) -> bool {
            true
        }
    }

    #[test]
    fn parity_satisfies_every_clause() {
        let report = check_axioms(&ParityVerifier, 1024, 1024);
        assert!(report.holds(), "{:?}", report.violations);
        assert_eq!(report.boundary_checks, 1024 + 1025);
        assert_eq!(report.richness_exempt, 0);
    }

    #[test]
    fn cnf_exempts_only_unsatisfiable_instances() {
        let report = check_axioms(&CnfSatVerifier, 2048, 1024);
        assert!(report.holds(), "{:?}", report.violations);
        let unsat = (1..=2048u64)
            .filter(|&x| {
                let f = crate::words::decode_cnf(&BinaryWord::from_index_u64(x));
                let vars = f.var_count();
                !(0u64..1 << vars).any(|a| f.eval_with(|v| a >> (v - 1) & 1 == 1))
            })
            .count() as u64;
        assert!(unsat > 0);
        assert_eq!(report.richness_exempt, unsat);
    }

    #[test]
    fn broken_verifier_is_caught() {
        let report = check_axioms(&AcceptsEverything, 3, 3);
        assert!(report
            .violations
            .contains(&AxiomViolation::EmptyCandidateAccepts { x: 0 }));
        assert!(report
            .violations
            .contains(&AxiomViolation::NoRejectedCandidate { x: 2 }));
        assert!(!report.holds());
    }
}
