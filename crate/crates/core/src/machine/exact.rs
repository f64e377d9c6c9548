//! Runs under step limits far beyond what direct simulation can reach.
//!
//! The simulation watches for two shapes of non-halting behaviour and jumps
//! straight to the configuration at the limit when it sees one:
//!
//! * a configuration that repeats exactly (found with Brent's method), after
//!   which the run is periodic;
//! * a translated cycle: the head reaches fresh blank tape beyond everything
//!   visited so far in state `q` at time `t1` and position `h1`, then again in
//!   state `q` at time `t2` and position `h2`, having looked back at most `b`
//!   cells behind `h1` in between. If the `b` cells behind `h1` at `t1` match
//!   the `b` cells behind `h2` at `t2`, every later stretch of `t2 - t1` steps
//!   repeats the same work shifted by `h2 - h1` cells and freezes one more copy
//!   of the same tape segment behind it.
//!
//! Both jumps are exact: the state, head word and step count at the limit are
//! the ones plain simulation would reach.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use std::collections::VecDeque;

use super::{Configuration, Symbol, Tape, TuringMachine};
use crate::words::{BinaryWord, LongWord, PeriodicWord};

/// Longest head word stored explicitly; longer ones stay in periodic form.
pub const MAX_MATERIALIZED_CELLS: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LongStatus {
    Halted,
    /// Stopped by the step limit.
    LimitReached,
    /// No limit was given and the run was proven never to halt.
    Diverges,
    /// The simulation budget ran out before the run was settled.
    Unresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Shortcut {
    Cycle { start: u64, period: u64 },
    Translation { start: u64, period: u64, shift: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongRun {
    pub status: LongStatus,
    /// Word under the head when the run stopped. Empty for diverging runs.
    pub head_word: LongWord,
    pub steps: BigUint,
    pub shortcut: Option<Shortcut>,
}

impl LongRun {
    pub fn halted(&self) -> bool {
        self.status == LongStatus::Halted
    }
}

/// Longest look-back a translated cycle may use.
const MAX_LOOKBACK: i64 = 64;
/// Fresh-tape arrivals kept per direction.
const MAX_RECORDS: usize = 64;

struct Record {
    time: u64,
    /// Position in direction-adjusted coordinates.
    pos: i64,
    state: usize,
    /// The `MAX_LOOKBACK` cells behind `pos` at `time`, nearest last.
    behind: Vec<Symbol>,
    /// Lowest adjusted head position from `time` until the next record.
    low: i64,
}

struct Detection {
    time: u64,
    pos: i64,
    lookback: i64,
}

/// Fresh-tape arrivals in one direction. Positions are multiplied by `dir` so
/// that "forward" is always increasing.
struct Frontier {
    dir: i64,
    extreme: i64,
    low: i64,
    records: VecDeque<Record>,
}

impl Frontier {
    fn new(dir: i64, extreme: i64) -> Self {
        Self {
            dir,
            extreme,
            low: extreme,
            records: VecDeque::new(),
        }
    }

    fn behind(&self, tape: &Tape, pos: i64) -> Vec<Symbol> {
        (1..=MAX_LOOKBACK)
            .rev()
            .map(|k| tape.get(self.dir * (pos - k)))
            .collect()
    }

    /// Returns the matching earlier arrival when `c` closes a translated
    /// cycle.
    fn observe(&mut self, c: &Configuration) -> Option<Detection> {
        let pos = self.dir * c.head;
        self.low = self.low.min(pos);
        if pos <= self.extreme {
            return None;
        }
        self.extreme = pos;
        if let Some(last) = self.records.back_mut() {
            last.low = self.low;
        }
        let behind = self.behind(&c.tape, pos);
        let mut low = i64::MAX;
        for rec in self.records.iter().rev() {
            low = low.min(rec.low);
            let lookback = rec.pos - low;
            if rec.state == c.state
                && lookback <= MAX_LOOKBACK
                && rec.behind[(MAX_LOOKBACK - lookback) as usize..]
                    == behind[(MAX_LOOKBACK - lookback) as usize..]
            {
                return Some(Detection {
                    time: rec.time,
                    pos: self.dir * rec.pos,
                    lookback,
                });
            }
        }
        self.records.push_back(Record {
            time: c.steps,
            pos,
            state: c.state,
            behind,
            low: pos,
        });
        if self.records.len() > MAX_RECORDS {
            self.records.pop_front();
        }
        self.low = pos;
        None
    }
}

fn cells_word(cells: &[Symbol]) -> BinaryWord {
    BinaryWord::from_bits(cells.iter().map(|&s| s == Symbol::One).collect())
}

impl TuringMachine {
    /// Runs on `x` for at most `limit` steps (without limit when `None`).
    pub fn run_exact(&self, x: &BinaryWord, limit: Option<&BigUint>) -> LongRun {
        self.run_exact_within(x, limit, None)
    }

    /// [`TuringMachine::run_exact`], giving up with [`LongStatus::Unresolved`]
    /// after `max_simulated` directly simulated steps.
    pub fn run_exact_within(
        &self,
        x: &BinaryWord,
        limit: Option<&BigUint>,
        max_simulated: Option<u64>,
    ) -> LongRun {
        let mut c = self.initial(x);
        let small_limit = limit.map(|l| l.to_u64().unwrap_or(u64::MAX));
        let mut right = Frontier::new(1, (x.len() as i64 - 1).max(0));
        let mut left = Frontier::new(-1, 0);
        let mut saved = c.clone();
        let mut power = 1u64;
        loop {
            if c.is_halted() {
                return LongRun {
                    status: LongStatus::Halted,
                    head_word: c.output_word().into(),
                    steps: BigUint::from(c.steps),
                    shortcut: None,
                };
            }
            if small_limit.is_some_and(|l| c.steps >= l) {
                return LongRun {
                    status: LongStatus::LimitReached,
                    head_word: c.output_word().into(),
                    steps: BigUint::from(c.steps),
                    shortcut: None,
                };
            }
            if max_simulated.is_some_and(|m| c.steps >= m) {
                return LongRun {
                    status: LongStatus::Unresolved,
                    head_word: BinaryWord::empty().into(),
                    steps: BigUint::from(c.steps),
                    shortcut: None,
                };
            }
            self.step(&mut c).expect("state checked non-final");
            if c.is_halted() {
                continue;
            }

            if c.state == saved.state && c.head == saved.head && c.tape == saved.tape {
                let shortcut = Shortcut::Cycle {
                    start: saved.steps,
                    period: c.steps - saved.steps,
                };
                return self.finish_cycle(c, limit, shortcut);
            }
            if c.steps - saved.steps == power {
                saved = c.clone();
                power = power.saturating_mul(2);
            }

            for frontier in [&mut right, &mut left] {
                if let Some(d) = frontier.observe(&c) {
                    let shortcut = Shortcut::Translation {
                        start: d.time,
                        period: c.steps - d.time,
                        shift: c.head - d.pos,
                    };
                    return self.finish_translation(c, limit, d.pos, d.lookback, shortcut);
                }
            }
        }
    }

    fn diverges(c: &Configuration, shortcut: Shortcut) -> LongRun {
        LongRun {
            status: LongStatus::Diverges,
            head_word: BinaryWord::empty().into(),
            steps: BigUint::from(c.steps),
            shortcut: Some(shortcut),
        }
    }

    fn finish_cycle(
        &self,
        mut c: Configuration,
        limit: Option<&BigUint>,
        shortcut: Shortcut,
    ) -> LongRun {
        let Some(limit) = limit else {
            return Self::diverges(&c, shortcut);
        };
        let Shortcut::Cycle { period, .. } = shortcut else {
            unreachable!()
        };
        let remaining = limit - c.steps;
        let r = (remaining % period).to_u64().expect("below the period");
        for _ in 0..r {
            self.step(&mut c).expect("cycles never halt");
        }
        LongRun {
            status: LongStatus::LimitReached,
            head_word: c.output_word().into(),
            steps: limit.clone(),
            shortcut: Some(shortcut),
        }
    }

    fn finish_translation(
        &self,
        mut c: Configuration,
        limit: Option<&BigUint>,
        h1: i64,
        lookback: i64,
        shortcut: Shortcut,
    ) -> LongRun {
        let Some(limit) = limit else {
            return Self::diverges(&c, shortcut);
        };
        let Shortcut::Translation { period, shift, .. } = shortcut else {
            unreachable!()
        };
        let h2 = c.head;
        // Cells frozen by one period, in tape order, and the index before which
        // further copies are inserted.
        let (segment, cut) = if shift > 0 {
            (
                c.tape.window(h1 - lookback, h2 - lookback - 1),
                h2 - lookback,
            )
        } else {
            (
                c.tape.window(h2 + lookback + 1, h1 + lookback),
                h2 + lookback + 1,
            )
        };
        let (copies, r) = (limit - c.steps).div_rem(&BigUint::from(period));
        let r = r.to_u64().expect("below the period");
        for _ in 0..r {
            self.step(&mut c).expect("cycles never halt");
        }
        let head_word = match c.tape.block_bounds(c.head) {
            None => BinaryWord::empty().into(),
            Some((lo, hi)) => {
                let segment_full = segment.iter().all(|&s| s != Symbol::Blank);
                let crosses = lo < cut && cut <= hi;
                if segment_full && crosses && copies > BigUint::ZERO {
                    let word = PeriodicWord {
                        prefix: cells_word(&c.tape.window(lo, cut - 1)),
                        segment: cells_word(&segment),
                        copies,
                        suffix: cells_word(&c.tape.window(cut, hi)),
                    };
                    match word.expand(MAX_MATERIALIZED_CELLS) {
                        Some(w) => LongWord::Explicit(w),
                        None => LongWord::Periodic(word),
                    }
                } else {
                    c.tape.block_at(c.head).into()
                }
            }
        };
        LongRun {
            status: LongStatus::LimitReached,
            head_word,
            steps: limit.clone(),
            shortcut: Some(shortcut),
        }
    }
}
