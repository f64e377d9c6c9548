use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use serde_json::{json, Value};

use super::report::ReportDocument;
use super::sampling;
use crate::clocks::{ClockedMachine, GrowthFamily};
use crate::diagonal::{
    check_divergence, equivalence_check, is_permutation_on, run_diagonalization, Budgets,
    DiagonalError, DivergenceVerdict,
};
use crate::kleene::{self, KleeneResult, Never, SearchPredicate, TrueAt};
use crate::machine::decode_machine;
use crate::verify::{check_axioms, sat_member, Predicates, Verifier, VerifyError};
use crate::words::{encode_cnf, unpair, BinaryWord, CnfFormula};

pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_TOTALITY_VIOLATION: i32 = 2;
pub const EXIT_SCAN_CEILING: i32 = 3;
pub const EXIT_INFEASIBLE_BOUND: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

fn kleene_json(result: &KleeneResult) -> Value {
    match result {
        KleeneResult::Found {
            witness,
            output,
            reason,
        } => json!({
            "status": "found",
            "witness_bits": witness.bits(),
            "output": output.to_string(),
            "reason": reason.as_str(),
        }),
        KleeneResult::BudgetExhausted => json!({ "status": "budget-exhausted" }),
    }
}

/// The first `count` clocked-machine codes with their `(i, n)` splits.
pub fn cmd_enumerate(count: u64, family: &dyn GrowthFamily, seed: u64) -> ReportDocument {
    let mut report = ReportDocument::new("enumerate", seed)
        .with_config("count", count)
        .with_config("family", family.name());
    for p in 0..count {
        let (i, n) = unpair(&BigUint::from(p));
        report.rows.push(json!({
            "p": p,
            "i": i.to_string(),
            "n": n.to_string(),
        }));
        report
            .summary
            .record(crate::words::pair(&i, &n) == BigUint::from(p));
    }
    report.finish()
}

#[derive(Clone, Debug)]
pub struct DiagonalConfig {
    pub stream: String,
    pub budgets: Budgets,
    pub equivalence_samples: u64,
}

/// Runs the diagonalization over `stream`, rechecks every step under the final
/// representation and samples the equivalence between the representation and
/// the plain enumeration.
pub fn cmd_diagonal(
    stream: &[BigUint],
    config: &DiagonalConfig,
    verifier: &dyn Verifier,
    family: &dyn GrowthFamily,
    seed: u64,
) -> (ReportDocument, Option<String>) {
    let budgets = &config.budgets;
    let mut report = ReportDocument::new("diagonal", seed)
        .with_config("stream", config.stream.as_str())
        .with_config("verifier", verifier.name())
        .with_config("family", family.name())
        .with_config("budget", budgets.search_budget)
        .with_config("meta_budget", budgets.meta_steps)
        .with_config("scan_ceiling", budgets.scan_ceiling)
        .with_config("simulation_ceiling", budgets.simulation_ceiling)
        .with_config("equivalence_samples", config.equivalence_samples);
    let preds =
        Predicates::new(verifier, family).with_simulation_ceiling(Some(budgets.simulation_ceiling));
    let state = match run_diagonalization(stream, &preds, budgets) {
        Ok(state) => state,
        Err(err) => {
            let code = match err {
                DiagonalError::TotalityViolation { .. } => EXIT_TOTALITY_VIOLATION,
                DiagonalError::ScanCeiling { .. } => EXIT_SCAN_CEILING,
            };
            return (report.fail_with(code, err), None);
        }
    };
    let verdicts = check_divergence(&state, &preds, budgets.search_budget);
    for (step, verdict) in state.steps.iter().zip(&verdicts) {
        report.summary.record(verdict.pass());
        report.rows.push(verdict_row(step, verdict));
    }

    let bound = state.phi.len() as u64 * 2 + 1;
    let permutation_ok = is_permutation_on(&state.phi, bound);
    report.summary.record(permutation_ok);

    let mut rng = sampling::rng(seed);
    let samples: Vec<_> = (0..config.equivalence_samples)
        .map(|_| {
            (
                BigUint::from(rng.gen_range(0..bound)),
                BigUint::from(rng.gen_range(0u64..256)),
            )
        })
        .collect();
    let equivalence = equivalence_check(&preds, &state.phi, &samples);
    if !samples.is_empty() {
        report.summary.record(equivalence.holds());
    }
    report.summary.skipped += equivalence.unresolved;
    report.details = json!({
        "prefix_len": state.phi.len(),
        "m_next": state.m_next,
        "permutation_checked_below": bound,
        "permutation_ok": permutation_ok,
        "equivalence": equivalence,
    });
    let csv = state.witness_csv();
    (report.finish(), Some(csv))
}

fn verdict_row(step: &crate::diagonal::StepRecord, v: &DivergenceVerdict) -> Value {
    json!({
        "i": v.i,
        "e": step.e.to_string(),
        "m": v.m,
        "y_prime": v.y_prime.to_string(),
        "swapped": step.swapped,
        "k": step.k,
        "provisional_partial": step.provisional_partial,
        "scan_unresolved": step.unresolved,
        "accepted": v.accepted,
        "f_p": v.f_p,
        "kind": v.kind,
        "pass": v.pass(),
    })
}

/// Boundary clauses for `x <= xmax` and `s <= smax` plus the richness search.
pub fn cmd_verify_axioms(
    verifier: &dyn Verifier,
    xmax: u64,
    smax: u64,
    seed: u64,
) -> ReportDocument {
    let mut report = ReportDocument::new("verify-axioms", seed)
        .with_config("verifier", verifier.name())
        .with_config("xmax", xmax)
        .with_config("smax", smax);
    let axioms = check_axioms(verifier, xmax, smax);
    let failed = axioms.violations.len() as u64;
    report.summary.passed = axioms.boundary_checks + axioms.richness_checks
        - failed.min(axioms.boundary_checks + axioms.richness_checks);
    report.summary.failed = failed;
    report.rows = axioms
        .violations
        .iter()
        .map(|v| serde_json::to_value(v).expect("violation serializes"))
        .collect();
    report.details = json!({
        "boundary_checks": axioms.boundary_checks,
        "richness_checks": axioms.richness_checks,
        "richness_exempt": axioms.richness_exempt,
    });
    report.finish()
}

/// Exhaustive search over every assignment to the formula's variables.
pub fn truth_table_sat(formula: &CnfFormula) -> bool {
    let vars = formula.var_count();
    (0u64..1 << vars).any(|a| formula.eval_with(|v| a >> (v - 1) & 1 == 1))
}

fn sat_row(report: &mut ReportDocument, x: &BinaryWord) -> Result<(), VerifyError> {
    let formula = crate::words::decode_cnf(x);
    let member = sat_member(x)?;
    let oracle = x.is_empty() || truth_table_sat(&formula);
    report.summary.record(member == oracle);
    report.rows.push(json!({
        "word": x.to_string(),
        "dimacs": formula.to_dimacs(),
        "vars": formula.var_count(),
        "sat_member": member,
        "truth_table": oracle,
        "agree": member == oracle,
    }));
    Ok(())
}

pub enum SatInput {
    Formula(CnfFormula),
    Word(BinaryWord),
    Random { count: u64, vars: u32 },
}

/// `sat_member` against a truth-table oracle.
pub fn cmd_sat(input: &SatInput, seed: u64) -> ReportDocument {
    let mut report = ReportDocument::new("sat", seed);
    let words = match input {
        SatInput::Formula(f) => {
            report = report.with_config("formula", f.to_dimacs());
            match encode_cnf(f) {
                Ok(w) => vec![w],
                Err(err) => return report.fail_with(EXIT_USAGE, err),
            }
        }
        SatInput::Word(w) => {
            report = report.with_config("word", w.to_string());
            vec![w.clone()]
        }
        SatInput::Random { count, vars } => {
            report = report
                .with_config("random", *count)
                .with_config("vars", *vars);
            let mut rng = sampling::rng(seed);
            (0..*count)
                .map(|_| {
                    encode_cnf(&sampling::random_formula(&mut rng, *vars))
                        .expect("generated formulas encode")
                })
                .collect()
        }
    };
    for w in &words {
        if let Err(err) = sat_row(&mut report, w) {
            return report.fail_with(EXIT_INFEASIBLE_BOUND, err);
        }
    }
    report.finish()
}

#[derive(Clone, Debug)]
pub struct KleeneConfig {
    pub budget: BigUint,
    /// Steps of direct simulation used as the reference.
    pub steps: u64,
}

/// Compares `φ_e(x)` and the totalized search with a direct run of machine
/// `e` on `x`. Returns whether the row agrees.
fn kleene_row(
    report: &mut ReportDocument,
    e: &BigUint,
    x: &BigUint,
    q: Option<&BigUint>,
    config: &KleeneConfig,
) -> bool {
    let run = decode_machine(e).run(&BinaryWord::from_index(x), config.steps);
    let reference = run.output().cloned();
    let result = kleene::phi(e, x, &config.budget);
    let phi_ok = match (&result, &reference) {
        (
            KleeneResult::Found {
                witness, output, ..
            },
            Some(out),
        ) => output == out && kleene::kleene_t(e, x, witness) && kleene::kleene_u(witness) == *out,
        (KleeneResult::BudgetExhausted, None) => true,
        // halts beyond the reference run, or its history exceeds the budget
        _ => false,
    };
    let mut row = json!({
        "e": e.to_string(),
        "x": x.to_string(),
        "run_output": reference.as_ref().map(ToString::to_string),
        "run_steps": run.steps,
        "phi": kleene_json(&result),
        "phi_agrees": phi_ok,
    });
    let mut ok = phi_ok;
    if let Some(y0) = q {
        let total = kleene::unsound_total(e, &TrueAt(y0.clone()), x, &config.budget);
        let expected = match result.witness() {
            Some(w) if w <= y0 => result.clone(),
            _ => TrueAt(y0.clone()).first_at_most(&config.budget).map_or(
                KleeneResult::BudgetExhausted,
                |witness| KleeneResult::Found {
                    witness,
                    output: BinaryWord::empty(),
                    reason: kleene::StopReason::Predicate,
                },
            ),
        };
        let total_ok = total == expected && total.witness().is_some_and(|w| w <= y0);
        row["unsound_total"] = kleene_json(&total);
        row["unsound_agrees"] = json!(total_ok);
        ok &= total_ok;
    } else {
        let total = kleene::unsound_total(e, &Never, x, &config.budget);
        let total_ok = total == result;
        row["unsound_total"] = kleene_json(&total);
        row["unsound_agrees"] = json!(total_ok);
        ok &= total_ok;
    }
    row["pass"] = json!(ok);
    report.rows.push(row);
    report.summary.record(ok);
    ok
}

pub enum KleeneTarget {
    Single {
        e: BigUint,
        x: BigUint,
    },
    /// Random halting pairs, with the number of pairs and the step bound.
    Sampled {
        count: u64,
        halting_within: u64,
    },
}

/// `φ_e(x)` and `U(μy (T ∨ Q))` against direct simulation. `q_true_at`
/// selects `Q` true exactly at that point; without it `Q` is false.
pub fn cmd_kleene(
    command: &str,
    target: &KleeneTarget,
    q_true_at: Option<&BigUint>,
    config: &KleeneConfig,
    seed: u64,
) -> ReportDocument {
    let mut report = ReportDocument::new(command, seed)
        .with_config("budget_bits", config.budget.bits())
        .with_config("steps", config.steps)
        .with_config("q_true_at", q_true_at.map(ToString::to_string));
    let pairs = match target {
        KleeneTarget::Single { e, x } => {
            report = report
                .with_config("e", e.to_string())
                .with_config("x", x.to_string());
            vec![(e.clone(), x.clone())]
        }
        KleeneTarget::Sampled {
            count,
            halting_within,
        } => {
            report = report
                .with_config("samples", *count)
                .with_config("halting_within", *halting_within);
            let mut rng = sampling::rng(seed);
            sampling::halting_pairs(&mut rng, *count as usize, *halting_within, 1 << 10)
        }
    };
    for (e, x) in &pairs {
        kleene_row(&mut report, e, x, q_true_at, config);
    }
    report.finish()
}

/// One clocked run `P_p(x)`.
pub fn cmd_run(
    p: &BigUint,
    x: &BinaryWord,
    family: &dyn GrowthFamily,
    simulation_ceiling: u64,
    seed: u64,
) -> ReportDocument {
    let mut report = ReportDocument::new("run", seed)
        .with_config("p", p.to_string())
        .with_config("x", x.to_string())
        .with_config("family", family.name())
        .with_config("simulation_ceiling", simulation_ceiling);
    let machine = ClockedMachine::from_code(p, family);
    let limit = machine.step_limit(x.len() as u64);
    let mut row = json!({
        "p": p.to_string(),
        "i": machine.machine_index().to_string(),
        "n": machine.clock_index().to_string(),
        "step_limit": limit.as_ref().map(ToString::to_string),
    });
    match machine.run_within(x, Some(simulation_ceiling)) {
        Ok(run) => {
            row["output"] = json!(run.output.to_string());
            row["steps"] = json!(run
                .steps
                .to_u64()
                .map_or_else(|| json!(run.steps.to_string()), |s| json!(s)));
            row["halted_naturally"] = json!(run.halted_naturally);
            report.summary.record(true);
        }
        Err(err) => {
            row["unresolved"] = json!(err.to_string());
            report.summary.skipped += 1;
        }
    }
    report.rows.push(row);
    report.finish()
}
