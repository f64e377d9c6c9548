//! Computation-history codes.
//!
//! A configuration is stored up to translation as
//! `(state, head offset, window)`, where the window is the shortest run of
//! cells covering every non-blank cell and the head. A window is canonical
//! when each end cell is non-blank or carries the head.
//!
//! Bit layout of the word whose canonical index is the code `z`:
//!
//! ```text
//! history := gamma(count - 1) config^count
//! config  := gamma(state) gamma(offset) gamma(len - 1) cell^len
//! cell    := 00 (blank) | 01 (0) | 10 (1)
//! gamma(v):= (b - 1) zeros, then the b-bit binary form of v + 1
//! ```
//!
//! Decoding rejects `11` cells, non-canonical windows, offsets outside the
//! window and trailing bits, so every sequence of canonical configurations has
//! exactly one code.

use num_bigint::BigUint;

use crate::machine::{Configuration, Symbol, Tape};
use crate::words::BinaryWord;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalConfig {
    pub state: usize,
    pub offset: usize,
    pub cells: Vec<Symbol>,
}

impl CanonicalConfig {
    pub fn from_configuration(c: &Configuration) -> Self {
        let (lo, hi) = match c.tape.support() {
            Some((lo, hi)) => (lo.min(c.head), hi.max(c.head)),
            None => (c.head, c.head),
        };
        Self {
            state: c.state,
            offset: (c.head - lo) as usize,
            cells: c.tape.window(lo, hi),
        }
    }

    /// Places the window at cell 0.
    pub fn to_configuration(&self, steps: u64) -> Configuration {
        Configuration {
            tape: Tape::from_cells(0, &self.cells),
            head: self.offset as i64,
            state: self.state,
            steps,
        }
    }

    pub fn output_word(&self) -> BinaryWord {
        self.to_configuration(0).output_word()
    }

    fn is_canonical(&self) -> bool {
        let last = self.cells.len().wrapping_sub(1);
        !self.cells.is_empty()
            && self.offset <= last
            && (self.cells[0] != Symbol::Blank || self.offset == 0)
            && (self.cells[last] != Symbol::Blank || self.offset == last)
    }

    /// Bits this configuration occupies in a history word.
    pub fn encoded_len(&self) -> u64 {
        gamma_len(self.state as u64)
            + gamma_len(self.offset as u64)
            + gamma_len(self.cells.len() as u64 - 1)
            + 2 * self.cells.len() as u64
    }

    fn write(&self, out: &mut Vec<bool>) {
        write_gamma(out, self.state as u64);
        write_gamma(out, self.offset as u64);
        write_gamma(out, self.cells.len() as u64 - 1);
        for &cell in &self.cells {
            let (hi, lo) = match cell {
                Symbol::Blank => (false, false),
                Symbol::Zero => (false, true),
                Symbol::One => (true, false),
            };
            out.push(hi);
            out.push(lo);
        }
    }
}

fn gamma_len(v: u64) -> u64 {
    let b = 64 - u64::from((v + 1).leading_zeros());
    2 * b - 1
}

fn write_gamma(out: &mut Vec<bool>, v: u64) {
    let shifted = v + 1;
    let b = 64 - shifted.leading_zeros();
    out.extend(std::iter::repeat_n(false, b as usize - 1));
    out.extend((0..b).rev().map(|i| (shifted >> i) & 1 == 1));
}

struct Reader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl Reader<'_> {
    fn bit(&mut self) -> Option<bool> {
        let b = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    fn gamma(&mut self) -> Option<u64> {
        let mut zeros = 0u32;
        while !self.bit()? {
            zeros += 1;
            if zeros >= 63 {
                return None;
            }
        }
        let mut value = 1u64;
        for _ in 0..zeros {
            value = (value << 1) | u64::from(self.bit()?);
        }
        Some(value - 1)
    }

    fn config(&mut self) -> Option<CanonicalConfig> {
        let state = usize::try_from(self.gamma()?).ok()?;
        let offset = usize::try_from(self.gamma()?).ok()?;
        let len = usize::try_from(self.gamma()?).ok()?.checked_add(1)?;
        if len > self.bits.len() - self.pos {
            return None;
        }
        let mut cells = Vec::with_capacity(len);
        for _ in 0..len {
            cells.push(match (self.bit()?, self.bit()?) {
                (false, false) => Symbol::Blank,
                (false, true) => Symbol::Zero,
                (true, false) => Symbol::One,
                (true, true) => return None,
            });
        }
        let config = CanonicalConfig {
            state,
            offset,
            cells,
        };
        config.is_canonical().then_some(config)
    }
}

/// A decoded history code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistoryCode {
    code: BigUint,
    configs: Vec<CanonicalConfig>,
}

impl HistoryCode {
    pub fn from_configs(configs: Vec<CanonicalConfig>) -> Option<Self> {
        if configs.is_empty() || !configs.iter().all(CanonicalConfig::is_canonical) {
            return None;
        }
        let mut bits = Vec::new();
        write_gamma(&mut bits, configs.len() as u64 - 1);
        for c in &configs {
            c.write(&mut bits);
        }
        Some(Self {
            code: BinaryWord::from_bits(bits).index(),
            configs,
        })
    }

    /// Parses `z`; `None` when `z` is not the code of any configuration sequence.
    pub fn decode(z: &BigUint) -> Option<Self> {
        let word = BinaryWord::from_index(z);
        let mut reader = Reader {
            bits: word.bits(),
            pos: 0,
        };
        let count = usize::try_from(reader.gamma()?).ok()?.checked_add(1)?;
        // every configuration needs at least 5 bits
        if count > word.len() / 5 + 1 {
            return None;
        }
        let configs = (0..count)
            .map(|_| reader.config())
            .collect::<Option<Vec<_>>>()?;
        (reader.pos == word.len()).then(|| Self {
            code: z.clone(),
            configs,
        })
    }

    pub fn code(&self) -> &BigUint {
        &self.code
    }

    pub fn configs(&self) -> &[CanonicalConfig] {
        &self.configs
    }

    pub fn last(&self) -> &CanonicalConfig {
        self.configs.last().expect("histories are nonempty")
    }

    pub fn into_configs(self) -> Vec<CanonicalConfig> {
        self.configs
    }
}
