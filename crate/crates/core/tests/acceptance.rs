//! End-to-end acceptance suite. Prints one line per criterion and exits
//! nonzero if any criterion fails or overruns its time budget.

use std::collections::{HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use diaglab::cli::{cmd_verify_axioms, sampling, EXIT_CHECK_FAILED};
use diaglab::clocks::{ClockedMachine, GrowthFamily, Polynomial};
use diaglab::diagonal::{
    builtin_constants, check_divergence, diagonal_step, equivalence_check, is_permutation_on,
    run_diagonalization, Budgets, DiagonalError, DiagonalState, Permutation, Representation,
};
use diaglab::kleene::{encode_history, kleene_t, kleene_u, phi, unsound_total, Never, TrueAt};
use diaglab::machine::{
    constant_machine, decode_machine, encode_machine, Move, Symbol, Transition, TuringMachine,
};
use diaglab::verify::{
    acceptable_machines, check_axioms, sat_member, CnfSatVerifier, ParityVerifier, Predicates,
    SearchOutcome, Verifier,
};
use diaglab::words::{
    decode_cnf, encode_cnf, pair, pair_u64, unpair, unpair_u64, BinaryWord, CnfFormula,
};
use num_bigint::BigUint;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn encoding_suite() -> Outcome {
    let mut seen = HashSet::new();
    let mut prev_len = 0;
    for n in 0u64..1 << 16 {
        let w = BinaryWord::from_index_u64(n);
        ensure(w.index_u64() == Some(n), || {
            format!("index roundtrip fails at {n}")
        })?;
        ensure(w.len() >= prev_len, || format!("length drops at {n}"))?;
        prev_len = w.len();
        seen.insert(w);
    }
    // every word of length < 16 appears exactly once
    ensure(seen.len() == 1 << 16, || "words repeat".into())?;
    let full_levels: usize = (0..16).map(|l| 1usize << l).sum();
    ensure(
        seen.iter().filter(|w| w.len() < 16).count() == full_levels,
        || "short words missing".into(),
    )?;

    let mut codes = HashSet::new();
    for i in 0u64..512 {
        for n in 0u64..512 {
            let p = pair_u64(i, n).ok_or("pair overflow")?;
            ensure(unpair_u64(p) == (i, n), || format!("unpair(pair({i},{n}))"))?;
            ensure(pair(&big(i), &big(n)) == big(p), || {
                format!("big pair({i},{n})")
            })?;
            ensure(unpair(&big(p)) == (big(i), big(n)), || {
                format!("big unpair {p}")
            })?;
            codes.insert(p);
        }
    }
    ensure(codes.len() == 512 * 512, || "pair not injective".into())?;
    // the grid contains every diagonal below 512, so every code below 512*513/2
    ensure((0..512 * 513 / 2).all(|p| codes.contains(&p)), || {
        "pair misses a code".into()
    })?;

    let mut rng = sampling::rng(1);
    for _ in 0..10_000 {
        let len = rng.gen_range(0..=128);
        let w = BinaryWord::from_bits((0..len).map(|_| rng.gen()).collect());
        let f = decode_cnf(&w);
        ensure(
            !f.clauses.is_empty()
                && f.clauses
                    .iter()
                    .all(|c| !c.is_empty() && c.iter().all(|l| l.var > 0)),
            || format!("decode_cnf({w}) is malformed"),
        )?;
        ensure(CnfFormula::new(f.clauses.clone()).is_ok(), || {
            format!("{w} invalid")
        })?;
    }
    Ok("2^16 indices, 512x512 pairs, 10^4 CNF words".into())
}

fn family_laws() -> Outcome {
    let g = Polynomial;
    let oracle = |n: u64, x: u64| {
        let mut v = BigUint::from(1u32);
        for _ in 0..n + 3 {
            v *= x;
        }
        v + n + 3u32
    };
    for n in 0u64..16 {
        for x in 0u64..64 {
            let v = g.eval(n, x).map_err(|e| e.to_string())?;
            ensure(v == oracle(n, x), || format!("p_{n}({x})"))?;
            ensure(g.eval(n, x + 1).unwrap() > v, || {
                format!("p_{n} not increasing at {x}")
            })?;
            for m in 0..n {
                ensure(v > g.eval(m, x).unwrap(), || {
                    format!("p_{n}({x}) <= p_{m}({x})")
                })?;
            }
        }
    }
    for x in 0u64..64 {
        ensure(g.eval(0, x).unwrap() > big(2), || format!("p_0({x}) <= 2"))?;
    }
    ensure(g.eval(0, 0).unwrap() == big(3), || "p_0(0) != 3".into())?;
    Ok("n, m < 16, x < 64".into())
}

/// A direct simulator over a hash-map tape, independent of the crate's
/// machinery. Returns the word under the head after at most `limit` steps.
fn hand_simulate(m: &TuringMachine, x: &BinaryWord, limit: u64) -> BinaryWord {
    let mut tape: HashMap<i64, Symbol> = x
        .bits()
        .iter()
        .enumerate()
        .map(|(i, &b)| (i as i64, if b { Symbol::One } else { Symbol::Zero }))
        .collect();
    let (mut head, mut state) = (0i64, 1usize);
    for _ in 0..limit {
        if state == 0 {
            break;
        }
        let read = *tape.get(&head).unwrap_or(&Symbol::Blank);
        let t = m.transition(state, read).unwrap();
        tape.insert(head, t.write);
        head += if t.movement == Move::Right { 1 } else { -1 };
        state = t.next;
    }
    let cell = |p: i64| *tape.get(&p).unwrap_or(&Symbol::Blank);
    if cell(head) == Symbol::Blank {
        return BinaryWord::empty();
    }
    let (mut lo, mut hi) = (head, head);
    while cell(lo - 1) != Symbol::Blank {
        lo -= 1;
    }
    while cell(hi + 1) != Symbol::Blank {
        hi += 1;
    }
    BinaryWord::from_bits((lo..=hi).map(|p| cell(p) == Symbol::One).collect())
}

fn machine(states: usize, rules: &[(usize, Symbol, usize, Symbol, Move)]) -> TuringMachine {
    rules.iter().fold(
        TuringMachine::halting(states).unwrap(),
        |m, &(s, r, next, write, movement)| {
            m.with_transition(
                s,
                r,
                Transition {
                    next,
                    write,
                    movement,
                },
            )
            .unwrap()
        },
    )
}

fn hand_built() -> Vec<(&'static str, TuringMachine)> {
    use Move::{Left as L, Right as R};
    use Symbol::{Blank as B, One as I, Zero as O};
    vec![
        // flips a cell on the way right, bounces off the blank
        (
            "flipper",
            machine(1, &[(1, O, 1, I, R), (1, I, 1, O, R), (1, B, 1, I, L)]),
        ),
        // two states writing 1 back and forth over cells 0 and 1
        (
            "oscillator",
            machine(
                2,
                &[
                    (1, O, 2, I, R),
                    (1, I, 2, I, R),
                    (1, B, 2, I, R),
                    (2, O, 1, I, L),
                    (2, I, 1, I, L),
                    (2, B, 1, I, L),
                ],
            ),
        ),
        // sweeps the input, flipping it on every rightward pass
        (
            "shuttle",
            machine(
                2,
                &[
                    (1, O, 1, I, R),
                    (1, I, 1, O, R),
                    (1, B, 2, B, L),
                    (2, O, 2, O, L),
                    (2, I, 2, I, L),
                    (2, B, 1, B, R),
                ],
            ),
        ),
    ]
}

fn clock_totality() -> Outcome {
    let g = Polynomial;
    let mut rng = sampling::rng(3);
    let mut natural = 0;
    for _ in 0..1000 {
        let p = big(rng.gen_range(0..10_000));
        let len = rng.gen_range(0..=16);
        let x = BinaryWord::from_bits((0..len).map(|_| rng.gen()).collect());
        let clocked = ClockedMachine::from_code(&p, &g);
        let run = clocked.run(&x);
        let limit = clocked
            .step_limit(len as u64)
            .ok_or("clock not evaluable")?;
        ensure(run.steps <= limit, || {
            format!("P_{p}({x}) ran {} > {limit}", run.steps)
        })?;
        if run.halted_naturally {
            natural += 1;
            let plain = clocked
                .machine()
                .run(&x, u64::try_from(&run.steps).unwrap());
            ensure(plain.output() == run.output.as_word(), || {
                format!("P_{p}({x}) output")
            })?;
        }
    }

    let literal = [
        ("flipper", "0", 0, "01"),
        ("oscillator", "", 0, "11"),
        ("shuttle", "01", 0, "01"),
    ];
    let machines = hand_built();
    for (name, x, n, expected) in literal {
        let m = &machines.iter().find(|(k, _)| *k == name).unwrap().1;
        let clocked = ClockedMachine::from_parts(&encode_machine(m), &big(n), &g);
        let x: BinaryWord = x.parse().unwrap();
        ensure(clocked.run(&x).output.to_string() == expected, || {
            format!("{name} on {x}")
        })?;
    }
    for (name, m) in &machines {
        let e = encode_machine(m);
        for n in 0u64..4 {
            for xi in 0u64..40 {
                let x = BinaryWord::from_index_u64(xi);
                let clocked = ClockedMachine::from_parts(&e, &big(n), &g);
                let limit = g.clock_steps(&big(n), x.len() as u64);
                let run = clocked.run(&x);
                ensure(!run.halted_naturally, || format!("{name} halted"))?;
                ensure(run.output == hand_simulate(m, &x, limit), || {
                    format!("{name} with clock {n} on {x}")
                })?;
            }
        }
    }
    Ok(format!(
        "1000 random runs ({natural} halted on their own), 3 hand-built machines"
    ))
}

/// Satisfiability by trying every assignment, evaluating clauses directly.
fn truth_table(f: &CnfFormula) -> bool {
    let vars = f.clauses.iter().flatten().map(|l| l.var).max().unwrap_or(0);
    (0u64..1 << vars).any(|a| {
        f.clauses.iter().all(|c| {
            c.iter()
                .any(|l| ((a >> (l.var - 1)) & 1 == 1) == l.positive)
        })
    })
}

fn verifier_suite() -> Outcome {
    let parity = check_axioms(&ParityVerifier, 1024, 1024);
    ensure(parity.holds() && parity.richness_exempt == 0, || {
        format!("parity: {:?}", parity.violations)
    })?;
    let cnf = check_axioms(&CnfSatVerifier, 1024, 1024);
    ensure(cnf.holds(), || format!("cnf: {:?}", cnf.violations))?;
    let exempt_ok = (0u64..=1024)
        .map(BinaryWord::from_index_u64)
        .filter(|x| !x.is_empty() && !truth_table(&decode_cnf(x)))
        .count() as u64
        == cnf.richness_exempt;
    ensure(exempt_ok, || {
        "cnf exemptions differ from the truth table".into()
    })?;

    let mut rng = sampling::rng(4);
    let mut satisfiable = 0;
    for _ in 0..200 {
        let vars = rng.gen_range(1..=12);
        let f = sampling::random_formula(&mut rng, vars);
        let x = encode_cnf(&f).map_err(|e| e.to_string())?;
        let oracle = truth_table(&f);
        satisfiable += u32::from(oracle);
        let member = sat_member(&x).map_err(|e| e.to_string())?;
        ensure(member == oracle, || {
            format!("sat_member disagrees on {}", f.to_dimacs())
        })?;
    }
    Ok(format!(
        "boundary and richness on x, s <= 1024; 200/200 formulas agree ({satisfiable} satisfiable)"
    ))
}

fn kleene_suite() -> Outcome {
    let mut rng = sampling::rng(5);
    let mut pairs = sampling::halting_pairs(&mut rng, 200, 1000, 1 << 10);
    // a few longer runs: constant machines writing 24 bits over 16-bit inputs
    let extra: Vec<_> = (0..4u64)
        .map(|k| {
            let s = BinaryWord::from_index_u64((1 << 24) + 977 * k);
            (
                encode_machine(constant_machine(&s).machine()),
                big((1 << 16) + k),
            )
        })
        .collect();
    pairs.extend(extra);
    let budget = BigUint::from(1u32) << (1u32 << 22);
    let y0 = big(50);
    let mut max_steps = 0;
    for (e, x) in &pairs {
        let run = decode_machine(e).run(&BinaryWord::from_index(x), 1000);
        let out = run
            .output()
            .ok_or_else(|| format!("({e}, {x}) did not halt"))?;
        max_steps = max_steps.max(run.steps);
        let z = encode_history(e, x, 1000).ok_or("no history")?;
        ensure(kleene_t(e, x, z.code()), || {
            format!("T fails for ({e}, {x})")
        })?;
        ensure(kleene_u(z.code()) == *out, || {
            format!("U mismatch for ({e}, {x})")
        })?;
        let direct = phi(e, x, &budget);
        ensure(direct.witness() == Some(z.code()), || {
            format!("phi witness ({e}, {x})")
        })?;
        ensure(direct.output() == Some(out), || {
            format!("phi output ({e}, {x})")
        })?;
        ensure(unsound_total(e, &Never, x, &budget) == direct, || {
            format!("Q = false differs from phi at ({e}, {x})")
        })?;
        let forced = unsound_total(e, &TrueAt(y0.clone()), x, &budget);
        ensure(forced.witness().is_some_and(|w| *w <= y0), || {
            format!("Q true at 50 gave {forced:?} for ({e}, {x})")
        })?;
    }
    Ok(format!(
        "{} pairs, longest run {max_steps} steps",
        pairs.len()
    ))
}

fn diagonalization_suite() -> Outcome {
    let family = Polynomial;
    let preds = Predicates::new(&ParityVerifier, &family);
    let budgets = Budgets::default();
    let stream = builtin_constants(10);

    let mut state = DiagonalState::new();
    let mut frozen = Vec::new();
    for e in &stream {
        state = diagonal_step(state, e, &preds, &budgets).map_err(|e| e.to_string())?;
        frozen.push(state.phi.clone());
    }
    let direct = run_diagonalization(&stream, &preds, &budgets).map_err(|e| e.to_string())?;
    ensure(direct == state, || "stepwise and folded runs differ".into())?;

    for snapshot in &frozen {
        ensure(
            (0..snapshot.len() as u64).all(|p| state.phi.apply_u64(p) == snapshot.apply_u64(p)),
            || "a frozen prefix changed".into(),
        )?;
    }
    let verdicts = check_divergence(&state, &preds, budgets.search_budget);
    ensure(verdicts.len() == 10, || "missing verdicts".into())?;
    for (s, v) in state.steps.iter().zip(&verdicts) {
        ensure(v.pass(), || format!("step {} verdict {:?}", s.i, v.kind))?;
        ensure(v.accepted == Some(true), || {
            format!("A fails at step {}", s.i)
        })?;
        if let SearchOutcome::Found(y) = v.f_p.outcome {
            ensure(big(y) != s.y_prime, || format!("f_P = y' at step {}", s.i))?;
            ensure(
                preds.pred_p(&state.phi, &big(s.m), &big(y)) == Ok(true),
                || format!("P fails at the f_P witness of step {}", s.i),
            )?;
        }
    }
    let touched = state.phi.len() as u64;
    ensure(is_permutation_on(&state.phi, touched + 1000), || {
        "not a permutation".into()
    })?;

    let mut rng = sampling::rng(6);
    let samples: Vec<_> = (0..500)
        .map(|_| {
            (
                big(rng.gen_range(0..2 * touched + 1)),
                big(rng.gen_range(0..256)),
            )
        })
        .collect();
    let report = equivalence_check(
        &preds.with_simulation_ceiling(Some(budgets.simulation_ceiling)),
        &state.phi,
        &samples,
    );
    ensure(report.holds() && report.checked == 500, || {
        format!("equivalence {report:?}")
    })?;
    Ok(format!(
        "10/10 verdicts pass, prefix length {touched}, 500/500 equivalence samples"
    ))
}

fn acceptability() -> Outcome {
    let family = Polynomial;
    let verifiers: [&dyn Verifier; 2] = [&ParityVerifier, &CnfSatVerifier];
    for v in verifiers {
        for x0 in [0u64, 5, 17] {
            let codes =
                acceptable_machines(v, &big(x0), 5, &family, 1 << 16).map_err(|e| e.to_string())?;
            let distinct: HashSet<_> = codes.iter().collect();
            ensure(distinct.len() == 5, || {
                format!("{} x0={x0}: duplicate codes", v.name())
            })?;
            let x = BinaryWord::from_index_u64(x0);
            for p in &codes {
                let out = ClockedMachine::from_code(p, &family).run(&x).output;
                ensure(v.check_long(&x, &out) == Some(true), || {
                    format!("{} x0={x0}: P_{p} rejected", v.name())
                })?;
            }
        }
    }
    Ok("x0 in {0, 5, 17} for both verifiers".into())
}

/// Swaps positions but claims the identity as its inverse.
struct CorruptInverse(Representation);

impl Permutation for CorruptInverse {
    fn apply(&self, position: &BigUint) -> BigUint {
        self.0.apply(position)
    }

    fn inverse(&self, code: &BigUint) -> BigUint {
        code.clone()
    }
}

struct AcceptsEmptyCandidate;

impl Verifier for AcceptsEmptyCandidate {
    fn name(&self) -> &str {
        "accepts-empty-candidate"
    }

    fn check(&self, _x: &BinaryWord, _s: &BinaryWord) -> bool {
        true
    }
}

fn negative_controls() -> Outcome {
    let family = Polynomial;
    let preds = Predicates::new(&ParityVerifier, &family);
    let budgets = Budgets::default();
    let state =
        run_diagonalization(&builtin_constants(2), &preds, &budgets).map_err(|e| e.to_string())?;
    let swapped: Vec<_> = state
        .steps
        .iter()
        .filter_map(|s| s.k.map(|k| (s.m, k)))
        .collect();
    let samples: Vec<_> = swapped
        .iter()
        .flat_map(|&(m, k)| [(big(m), big(0)), (big(k), big(1))])
        .collect();
    let honest = equivalence_check(&preds, &state.phi, &samples);
    let corrupt = equivalence_check(&preds, &CorruptInverse(state.phi.clone()), &samples);
    ensure(honest.holds() && !corrupt.holds(), || {
        format!("equivalence honest {honest:?} corrupt {corrupt:?}")
    })?;

    let mover = machine(
        1,
        &[
            (1, Symbol::Blank, 1, Symbol::One, Move::Right),
            (1, Symbol::Zero, 1, Symbol::One, Move::Right),
            (1, Symbol::One, 1, Symbol::One, Move::Right),
        ],
    );
    let mut stream = builtin_constants(1);
    stream.push(encode_machine(&mover));
    let err = run_diagonalization(&stream, &preds, &budgets).unwrap_err();
    ensure(
        matches!(err, DiagonalError::TotalityViolation { step: 1, .. }),
        || format!("unexpected {err}"),
    )?;

    let report = cmd_verify_axioms(&AcceptsEmptyCandidate, 64, 64, 0);
    ensure(
        report.exit_code == EXIT_CHECK_FAILED && report.summary.failed > 0,
        || "broken verifier passed".into(),
    )?;
    Ok(format!(
        "corrupt inverse: {} mismatches; totality violation; broken verifier: {} violations",
        corrupt.mismatches, report.summary.failed
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 encoding suite", 5, encoding_suite),
        ("2 family laws", 1, family_laws),
        ("3 clock totality", 30, clock_totality),
        ("4 verifier suite", 60, verifier_suite),
        ("5 kleene suite", 60, kleene_suite),
        ("6 diagonalization suite", 120, diagonalization_suite),
        ("7 acceptability", 10, acceptability),
        ("8 negative controls", 60, negative_controls),
    ];
    let mut failures = 0;
    for (name, seconds, check) in criteria {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(seconds);
        let (status, detail) = match result {
            Ok(detail) if elapsed <= budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("over the {seconds} s budget; {detail}")),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {name}: {status} ({:.2} s) {detail}",
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {}/8 criteria pass", 8 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
