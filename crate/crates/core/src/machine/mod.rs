//! Single-tape Turing machines over {0, 1, blank}.
//!
//! A machine has states `s_0, s_1, ..., s_k` with `k >= 1`; `s_0` is final and
//! has no transitions. Runs start in `s_1` with the input written on cells
//! `0..|x|` and the head on cell 0. The output is the maximal non-blank block
//! under the head when the machine stops (empty if the head is on a blank).
//!
//! # Gödel numbering
//!
//! [`decode_machine`] is total and onto. For a number `e`:
//!
//! 1. Take the canonical word `w` of `e`. Let `u` be the number of leading `1`
//!    bits of `w`; the machine has `k = 1 + u` non-final states.
//! 2. The bits after the first `0` that follows those ones form a word `r_w`
//!    (empty when `w` has no such `0`). Let `r` be the canonical index of `r_w`.
//! 3. Write `r` in base `B = 6(k + 1)`, least significant digit first. Digit
//!    `t` (missing digits are 0, surplus digits are ignored) describes the
//!    transition in slot `t = 3(j - 1) + c`, for state `s_j` reading the
//!    symbol with code `c` (blank = 0, `0` = 1, `1` = 2).
//! 4. A digit `d` splits as `next = d mod (k + 1)`, `q = d div (k + 1)`,
//!    `write = q mod 3` (same symbol codes), `move = q div 3` (0 = right,
//!    1 = left). Digit 0 is therefore `(s_0, blank, R)`.
//!
//! [`encode_machine`] inverts this with the word `1^(k-1) 0 r_w`.

mod constant;
mod exact;
mod tape;
mod text;

pub use constant::{constant_machine, ConstantMachine};
pub use exact::{LongRun, LongStatus, Shortcut, MAX_MATERIALIZED_CELLS};
pub use tape::Tape;
pub use text::ParseMachineError;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::words::BinaryWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Blank,
    Zero,
    One,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Blank, Symbol::Zero, Symbol::One];

    pub fn code(self) -> usize {
        match self {
            Symbol::Blank => 0,
            Symbol::Zero => 1,
            Symbol::One => 2,
        }
    }

    pub fn from_code(code: usize) -> Self {
        Self::ALL[code % 3]
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::Blank => "_",
            Symbol::Zero => "0",
            Symbol::One => "1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Right,
    Left,
}

impl Move {
    fn delta(self) -> i64 {
        match self {
            Move::Right => 1,
            Move::Left => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: usize,
    pub write: Symbol,
    pub movement: Move,
}

impl Transition {
    /// `(s_0, blank, R)`, the entry for missing digits.
    pub const HALT: Transition = Transition {
        next: 0,
        write: Symbol::Blank,
        movement: Move::Right,
    };
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MachineError {
    #[error("a machine needs at least one non-final state")]
    NoStates,
    #[error("transition table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("transition for s_{state} on {symbol} targets s_{target}, but the machine has {states} states")]
    InvalidTarget {
        state: usize,
        symbol: Symbol,
        target: usize,
        states: usize,
    },
    #[error("configuration is in the final state s_0")]
    Halted,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TuringMachine {
    states: usize,
    table: Vec<Transition>,
}

impl TuringMachine {
    /// `table[3(j - 1) + symbol.code()]` is the transition of `s_j`.
    pub fn new(states: usize, table: Vec<Transition>) -> Result<Self, MachineError> {
        if states == 0 {
            return Err(MachineError::NoStates);
        }
        if table.len() != 3 * states {
            return Err(MachineError::TableSize {
                expected: 3 * states,
                found: table.len(),
            });
        }
        for (slot, t) in table.iter().enumerate() {
            if t.next > states {
                return Err(MachineError::InvalidTarget {
                    state: slot / 3 + 1,
                    symbol: Symbol::from_code(slot % 3),
                    target: t.next,
                    states,
                });
            }
        }
        Ok(Self { states, table })
    }

    /// Machine with `states` non-final states whose transitions are all
    /// `(s_0, blank, R)`.
    pub fn halting(states: usize) -> Result<Self, MachineError> {
        Self::new(states, vec![Transition::HALT; 3 * states])
    }

    /// Number of non-final states `k`.
    pub fn states(&self) -> usize {
        self.states
    }

    pub fn transition(&self, state: usize, read: Symbol) -> Option<&Transition> {
        if state == 0 || state > self.states {
            return None;
        }
        self.table.get(3 * (state - 1) + read.code())
    }

    pub fn table(&self) -> &[Transition] {
        &self.table
    }

    /// Replaces one transition, returning the modified machine.
    pub fn with_transition(
        mut self,
        state: usize,
        read: Symbol,
        t: Transition,
    ) -> Result<Self, MachineError> {
        if state == 0 || state > self.states || t.next > self.states {
            return Err(MachineError::InvalidTarget {
                state,
                symbol: read,
                target: t.next,
                states: self.states,
            });
        }
        self.table[3 * (state - 1) + read.code()] = t;
        Ok(self)
    }

    pub fn initial(&self, x: &BinaryWord) -> Configuration {
        Configuration {
            tape: Tape::with_input(x),
            head: 0,
            state: 1,
            steps: 0,
        }
    }

    /// Applies one transition.
    #[inline]
    pub fn step(&self, c: &mut Configuration) -> Result<(), MachineError> {
        let t = self
            .transition(c.state, c.tape.get(c.head))
            .ok_or(MachineError::Halted)?;
        c.tape.set(c.head, t.write);
        c.head += t.movement.delta();
        c.state = t.next;
        c.steps += 1;
        Ok(())
    }

    /// Steps `c` until it reaches `s_0` or has taken `max_steps` steps in
    /// total.
    pub fn advance(&self, c: &mut Configuration, max_steps: u64) -> RunStatus {
        while c.state != 0 {
            if c.steps >= max_steps {
                return RunStatus::OutOfBudget;
            }
            self.step(c).expect("state checked non-final");
        }
        RunStatus::Halted
    }

    /// Runs on `x` for at most `max_steps` steps.
    pub fn run(&self, x: &BinaryWord, max_steps: u64) -> RunOutcome {
        let mut c = self.initial(x);
        let status = self.advance(&mut c, max_steps);
        RunOutcome {
            status,
            head_word: c.output_word(),
            steps: c.steps,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub tape: Tape,
    pub head: i64,
    pub state: usize,
    pub steps: u64,
}

impl Configuration {
    pub fn output_word(&self) -> BinaryWord {
        self.tape.block_at(self.head)
    }

    pub fn is_halted(&self) -> bool {
        self.state == 0
    }
}

/// Free-function form of [`Configuration::output_word`].
pub fn output_word(c: &Configuration) -> BinaryWord {
    c.output_word()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RunStatus {
    Halted,
    OutOfBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: RunStatus,
    /// Word under the head when the run stopped, halted or not.
    pub head_word: BinaryWord,
    pub steps: u64,
}

impl RunOutcome {
    /// The machine's output, defined only for halted runs.
    pub fn output(&self) -> Option<&BinaryWord> {
        match self.status {
            RunStatus::Halted => Some(&self.head_word),
            RunStatus::OutOfBudget => None,
        }
    }

    pub fn halted(&self) -> bool {
        self.status == RunStatus::Halted
    }
}

fn digit_to_transition(d: usize, states: usize) -> Transition {
    let next = d % (states + 1);
    let q = d / (states + 1);
    Transition {
        next,
        write: Symbol::from_code(q % 3),
        movement: if q / 3 == 0 { Move::Right } else { Move::Left },
    }
}

fn transition_to_digit(t: &Transition, states: usize) -> usize {
    let mv = match t.movement {
        Move::Right => 0,
        Move::Left => 1,
    };
    t.next + (states + 1) * (t.write.code() + 3 * mv)
}

/// Total, onto decoding of natural numbers into machines.
pub fn decode_machine(e: &BigUint) -> TuringMachine {
    let word = BinaryWord::from_index(e);
    let bits = word.bits();
    let ones = bits.iter().take_while(|&&b| b).count();
    let rest = if ones < bits.len() {
        &bits[ones + 1..]
    } else {
        &[][..]
    };
    let states = ones + 1;
    let base = BigUint::from(6 * (states + 1));
    let mut r = BinaryWord::from(rest).index();
    let mut table = Vec::with_capacity(3 * states);
    for _ in 0..3 * states {
        let digit = if r.is_zero() {
            0
        } else {
            let (q, d) = r.div_rem(&base);
            r = q;
            d.to_usize().expect("digit below base")
        };
        table.push(digit_to_transition(digit, states));
    }
    TuringMachine { states, table }
}

/// Injective section of [`decode_machine`].
pub fn encode_machine(m: &TuringMachine) -> BigUint {
    let base = BigUint::from(6 * (m.states + 1));
    let r = m.table.iter().rev().fold(BigUint::zero(), |acc, t| {
        acc * &base + transition_to_digit(t, m.states)
    });
    let mut word = BinaryWord::from_bits(vec![true; m.states - 1]);
    word.push(false);
    for &b in BinaryWord::from_index(&r).bits() {
        word.push(b);
    }
    word.index()
}
