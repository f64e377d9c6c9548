//! Plain-text machine tables.
//!
//! One transition per line, `state symbol -> state' symbol' move`, with
//! symbols `0`, `1` and `_` (blank) and moves `L`/`R`. `#` starts a comment.
//! An optional `states K` line fixes the number of non-final states; otherwise
//! it is the largest state mentioned. Unlisted entries are `0 _ R`.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::{MachineError, Move, Symbol, Transition, TuringMachine};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseMachineError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Machine(#[from] MachineError),
}

fn parse_symbol(tok: &str) -> Option<Symbol> {
    match tok {
        "0" => Some(Symbol::Zero),
        "1" => Some(Symbol::One),
        "_" | "B" | "b" => Some(Symbol::Blank),
        _ => None,
    }
}

impl FromStr for TuringMachine {
    type Err = ParseMachineError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut declared = None;
        let mut entries: Vec<(usize, Symbol, Transition)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |reason: &str| ParseMachineError::Syntax {
                line: idx + 1,
                reason: reason.to_string(),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if let ["states", k] = toks.as_slice() {
                declared = Some(k.parse::<usize>().map_err(|_| syntax("bad state count"))?);
                continue;
            }
            let [from, read, "->", to, write, mv] = toks.as_slice() else {
                return Err(syntax("expected `state symbol -> state symbol move`"));
            };
            let from: usize = from.parse().map_err(|_| syntax("bad source state"))?;
            if from == 0 {
                return Err(syntax("s_0 is final and has no transitions"));
            }
            let read = parse_symbol(read).ok_or_else(|| syntax("bad read symbol"))?;
            let next: usize = to.parse().map_err(|_| syntax("bad target state"))?;
            let write = parse_symbol(write).ok_or_else(|| syntax("bad write symbol"))?;
            let movement = match *mv {
                "L" | "l" => Move::Left,
                "R" | "r" => Move::Right,
                _ => return Err(syntax("move must be L or R")),
            };
            if entries.iter().any(|&(s, r, _)| s == from && r == read) {
                return Err(syntax("duplicate transition"));
            }
            entries.push((
                from,
                read,
                Transition {
                    next,
                    write,
                    movement,
                },
            ));
        }
        let states = declared.unwrap_or_else(|| {
            entries
                .iter()
                .flat_map(|(s, _, t)| [*s, t.next])
                .max()
                .unwrap_or(1)
                .max(1)
        });
        let mut machine = TuringMachine::halting(states)?;
        for (state, read, t) in entries {
            machine = machine.with_transition(state, read, t)?;
        }
        Ok(machine)
    }
}

impl TuringMachine {
    /// Renders the full table in the text format accepted by `FromStr`.
    pub fn to_text(&self) -> String {
        let mut out = format!("states {}\n", self.states);
        for state in 1..=self.states {
            for read in Symbol::ALL {
                let t = self.transition(state, read).expect("state in range");
                let mv = match t.movement {
                    Move::Left => "L",
                    Move::Right => "R",
                };
                writeln!(out, "{state} {read} -> {} {} {mv}", t.next, t.write)
                    .expect("string write");
            }
        }
        out
    }
}
