//! Growth families and clocked machines.
//!
//! A clocked machine `P_p` pairs the machine `M_i` with the clock `[g_n]`,
//! where `(i, n) = unpair(p)`. On input `x` the clock lets `M_i` take at most
//! `g_n(|x|) - 1` steps; if `M_i` has not reached `s_0` by then, the clock moves
//! it to `s_0` without spending a step and the output is the word under the
//! head. Boundedness witnesses use the looser "halts within `g_n(|x|)` steps"
//! reading, so a machine needing exactly `g_n(|x|)` steps is bounded by `g_n`
//! yet still cut off by the clock `[g_n]`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::machine::{decode_machine, LongStatus, TuringMachine};
use crate::words::{pair, unpair, BinaryWord, LongWord};

/// Results larger than this many bits are reported as overflow.
pub const MAX_EVAL_BITS: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("g_{n}({x}) exceeds {MAX_EVAL_BITS} bits")]
    Overflow { n: u64, x: u64 },
}

/// A clocked-run question that could not be settled.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Unresolved {
    #[error("clocked machine {code} on input {input:?} is still running after {simulated} simulated steps")]
    SimulationCeiling {
        code: String,
        input: String,
        simulated: u64,
    },
    #[error("verifier {verifier} cannot check the {len}-cell output of clocked machine {code} on input {input:?}")]
    OutputTooLong {
        verifier: String,
        code: String,
        input: String,
        len: String,
    },
}

/// A family `g_0, g_1, ...` of total functions with `g_0(x) > 2`,
/// `g_n(x + 1) > g_n(x)` and `g_n(x) > g_m(x)` for `n > m`.
pub trait GrowthFamily: Send + Sync {
    fn name(&self) -> &str;

    fn eval(&self, n: u64, x: u64) -> Result<BigUint, FamilyError>;

    /// Steps the clock `[g_n]` allows on inputs of length `len`, that is
    /// `g_n(len) - 1`; `None` when `g_n(len)` is too large to evaluate.
    fn clock_limit(&self, n: &BigUint, len: u64) -> Option<BigUint> {
        let v = self.eval(n.to_u64()?, len).ok()?;
        Some(v - 1u32)
    }

    /// [`GrowthFamily::clock_limit`] saturated to `u64::MAX`.
    fn clock_steps(&self, n: &BigUint, len: u64) -> u64 {
        self.clock_limit(n, len)
            .and_then(|v| v.to_u64())
            .unwrap_or(u64::MAX)
    }
}

/// `p_n(x) = x^(n+3) + (n+3)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Polynomial;

impl GrowthFamily for Polynomial {
    fn name(&self) -> &str {
        "polynomial"
    }

    fn eval(&self, n: u64, x: u64) -> Result<BigUint, FamilyError> {
        let shift = BigUint::from(n) + 3u32;
        let power = match x {
            0 => BigUint::ZERO,
            1 => BigUint::one(),
            _ => {
                let bits_per = 64 - u64::from(x.leading_zeros());
                let exp = n
                    .checked_add(3)
                    .filter(|e| e.saturating_mul(bits_per - 1) <= MAX_EVAL_BITS)
                    .ok_or(FamilyError::Overflow { n, x })?;
                num_traits::pow(BigUint::from(x), exp as usize)
            }
        };
        Ok(power + shift)
    }
}

/// `l_n(x) = (n+1) x + (n+3)`; a slow family for cheap experiments.
#[derive(Clone, Copy, Debug, Default)]
pub struct Linear;

impl GrowthFamily for Linear {
    fn name(&self) -> &str {
        "linear"
    }

    fn eval(&self, n: u64, x: u64) -> Result<BigUint, FamilyError> {
        Ok((BigUint::from(n) + 1u32) * x + n + 3u32)
    }
}

pub const FAMILY_NAMES: [&str; 2] = ["polynomial", "linear"];

pub fn polynomial_family() -> Polynomial {
    Polynomial
}

pub fn family_by_name(name: &str) -> Option<Box<dyn GrowthFamily>> {
    match name {
        "polynomial" => Some(Box::new(Polynomial)),
        "linear" => Some(Box::new(Linear)),
        _ => None,
    }
}

/// `P_p = ⟨M_i, [g_n]⟩`.
#[derive(Clone)]
pub struct ClockedMachine<'f> {
    code: BigUint,
    machine_index: BigUint,
    clock_index: BigUint,
    machine: TuringMachine,
    family: &'f dyn GrowthFamily,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClockedRun {
    pub output: LongWord,
    pub steps: BigUint,
    /// False when the clock forced the stop.
    pub halted_naturally: bool,
}

impl<'f> ClockedMachine<'f> {
    pub fn from_code(p: &BigUint, family: &'f dyn GrowthFamily) -> Self {
        let (i, n) = unpair(p);
        let machine = decode_machine(&i);
        Self {
            code: p.clone(),
            machine_index: i,
            clock_index: n,
            machine,
            family,
        }
    }

    pub fn from_parts(i: &BigUint, n: &BigUint, family: &'f dyn GrowthFamily) -> Self {
        Self {
            code: pair(i, n),
            machine_index: i.clone(),
            clock_index: n.clone(),
            machine: decode_machine(i),
            family,
        }
    }

    pub fn code(&self) -> &BigUint {
        &self.code
    }

    pub fn machine_index(&self) -> &BigUint {
        &self.machine_index
    }

    pub fn clock_index(&self) -> &BigUint {
        &self.clock_index
    }

    pub fn machine(&self) -> &TuringMachine {
        &self.machine
    }

    pub fn family(&self) -> &dyn GrowthFamily {
        self.family
    }

    /// `g_n(len) - 1`, or `None` when that is too large to evaluate.
    pub fn step_limit(&self, input_len: u64) -> Option<BigUint> {
        self.family.clock_limit(&self.clock_index, input_len)
    }

    /// Always terminates in principle (the clock bounds the run). Runs that
    /// settle into a detectable cycle are fast-forwarded exactly; others are
    /// simulated step by step.
    ///
    /// # Panics
    ///
    /// When the clock is too large to evaluate and the machine provably never
    /// halts.
    pub fn run(&self, x: &BinaryWord) -> ClockedRun {
        self.run_within(x, None).expect("no simulation ceiling")
    }

    /// [`ClockedMachine::run`] with at most `max_simulated` directly
    /// simulated steps.
    pub fn run_within(
        &self,
        x: &BinaryWord,
        max_simulated: Option<u64>,
    ) -> Result<ClockedRun, Unresolved> {
        let limit = self.step_limit(x.len() as u64);
        let out = self
            .machine
            .run_exact_within(x, limit.as_ref(), max_simulated);
        match out.status {
            LongStatus::Diverges => panic!(
                "clock index {} is too large to evaluate and machine {} never halts",
                self.clock_index, self.machine_index
            ),
            LongStatus::Unresolved => Err(Unresolved::SimulationCeiling {
                code: self.code.to_string(),
                input: x.to_string(),
                simulated: max_simulated.unwrap_or(u64::MAX),
            }),
            status => Ok(ClockedRun {
                output: out.head_word,
                steps: out.steps,
                halted_naturally: status == LongStatus::Halted,
            }),
        }
    }
}

/// Output of `P_p` on `x`.
pub fn clocked_run(p: &ClockedMachine<'_>, x: &BinaryWord) -> LongWord {
    p.run(x).output
}

/// Sample-based evidence that `M_i` halts within `g_n(|x|)` steps: true iff
/// the unclocked run halts within that many steps on every sample.
pub fn is_g_bounded_witness(
    i: &BigUint,
    n: u64,
    samples: &[BinaryWord],
    family: &dyn GrowthFamily,
) -> bool {
    let machine = decode_machine(i);
    samples.iter().all(|x| {
        let bound = family.eval(n, x.len() as u64).ok();
        machine.run_exact(x, bound.as_ref()).halted()
    })
}

/// Codes `pair(i, n), pair(i, n + 1), ..., pair(i, n + count - 1)`. When `M_i`
/// halts within `g_n(|x|) - 1` steps these all compute the same function.
pub fn same_function_pairs(i: &BigUint, n: &BigUint, count: u64) -> Vec<BigUint> {
    (0..count).map(|k| pair(i, &(n + k))).collect()
}
