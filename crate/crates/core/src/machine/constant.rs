use super::{Move, Symbol, Transition, TuringMachine};
use crate::words::BinaryWord;

/// A constant machine `C_s`: erases its input, writes `s` and halts with the
/// head on the last symbol of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantMachine {
    word: BinaryWord,
    machine: TuringMachine,
}

impl ConstantMachine {
    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn machine(&self) -> &TuringMachine {
        &self.machine
    }

    pub fn into_machine(self) -> TuringMachine {
        self.machine
    }

    /// Exact running time on an input of length `input_len`:
    /// `input_len + |s| + 1`.
    pub fn step_bound(&self, input_len: u64) -> u64 {
        input_len + self.word.len() as u64 + 1
    }
}

/// Builds `C_s`.
///
/// State `s_1` sweeps right blanking the input; on the first blank it writes
/// `s[0]`, states `s_2..s_|s|` write the rest moving right, and a last state
/// steps back onto `s[|s|-1]` and halts. For `s = ∅` the sweep halts on the
/// blank past the input.
pub fn constant_machine(s: &BinaryWord) -> ConstantMachine {
    let len = s.len();
    let states = if len == 0 { 1 } else { len + 1 };
    let erase = Transition {
        next: 1,
        write: Symbol::Blank,
        movement: Move::Right,
    };
    let mut machine = TuringMachine::halting(states)
        .expect("at least one state")
        .with_transition(1, Symbol::Zero, erase)
        .expect("valid")
        .with_transition(1, Symbol::One, erase)
        .expect("valid");
    if len > 0 {
        for (j, &bit) in s.bits().iter().enumerate() {
            machine = machine
                .with_transition(
                    j + 1,
                    Symbol::Blank,
                    Transition {
                        next: j + 2,
                        write: Symbol::from_bit(bit),
                        movement: Move::Right,
                    },
                )
                .expect("valid");
        }
        machine = machine
            .with_transition(
                len + 1,
                Symbol::Blank,
                Transition {
                    next: 0,
                    write: Symbol::Blank,
                    movement: Move::Left,
                },
            )
            .expect("valid");
    }
    ConstantMachine {
        word: s.clone(),
        machine,
    }
}
