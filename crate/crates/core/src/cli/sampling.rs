//! Seeded generators for the sampled checks.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::machine::{encode_machine, Move, Symbol, Transition, TuringMachine};
use crate::words::{CnfFormula, Literal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A machine with `1..=max_states` working states and a uniformly random table.
pub fn random_machine(rng: &mut impl Rng, max_states: usize) -> TuringMachine {
    let states = rng.gen_range(1..=max_states);
    let table = (0..states * 3)
        .map(|_| Transition {
            next: rng.gen_range(0..=states),
            write: Symbol::from_code(rng.gen_range(0..3)),
            movement: if rng.gen() { Move::Right } else { Move::Left },
        })
        .collect();
    TuringMachine::new(states, table).expect("random table is well formed")
}

/// Random `(e, x)` pairs whose run halts within `max_steps` steps.
pub fn halting_pairs(
    rng: &mut impl Rng,
    count: usize,
    max_steps: u64,
    max_input: u64,
) -> Vec<(BigUint, BigUint)> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let machine = random_machine(rng, 4);
        let x = rng.gen_range(0..=max_input);
        let word = crate::words::BinaryWord::from_index_u64(x);
        if machine.run(&word, max_steps).halted() {
            out.push((encode_machine(&machine), BigUint::from(x)));
        }
    }
    out
}

/// A formula over variables `1..=vars` with up to `3 * vars` clauses of one
/// to three literals.
pub fn random_formula(rng: &mut impl Rng, vars: u32) -> CnfFormula {
    let clauses = (0..rng.gen_range(1..=3 * vars as usize))
        .map(|_| {
            (0..rng.gen_range(1..=3))
                .map(|_| Literal {
                    var: rng.gen_range(1..=vars),
                    positive: rng.gen(),
                })
                .collect()
        })
        .collect();
    CnfFormula::new(clauses).expect("clauses are nonempty with positive variables")
}
