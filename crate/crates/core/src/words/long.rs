use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::BinaryWord;

/// The word `prefix · segment^copies · suffix`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicWord {
    pub prefix: BinaryWord,
    pub segment: BinaryWord,
    pub copies: BigUint,
    pub suffix: BinaryWord,
}

impl PeriodicWord {
    pub fn len(&self) -> BigUint {
        &self.copies * self.segment.len() + self.prefix.len() + self.suffix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == BigUint::ZERO
    }

    /// The word itself, if it has at most `max_len` bits.
    pub fn expand(&self, max_len: u64) -> Option<BinaryWord> {
        let len = self.len().to_u64().filter(|&l| l <= max_len)?;
        let mut bits = Vec::with_capacity(len as usize);
        bits.extend_from_slice(self.prefix.bits());
        let copies = self.copies.to_u64()?;
        for _ in 0..copies {
            bits.extend_from_slice(self.segment.bits());
        }
        bits.extend_from_slice(self.suffix.bits());
        Some(BinaryWord::from_bits(bits))
    }
}

/// A word held either explicitly or in periodic form when it is too long to
/// store.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LongWord {
    Explicit(BinaryWord),
    Periodic(PeriodicWord),
}

impl LongWord {
    pub fn len(&self) -> BigUint {
        match self {
            LongWord::Explicit(w) => BigUint::from(w.len()),
            LongWord::Periodic(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            LongWord::Explicit(w) => w.is_empty(),
            LongWord::Periodic(p) => p.is_empty(),
        }
    }

    pub fn as_word(&self) -> Option<&BinaryWord> {
        match self {
            LongWord::Explicit(w) => Some(w),
            LongWord::Periodic(_) => None,
        }
    }

    /// The first `n` bits, or the whole word if it is shorter.
    pub fn prefix(&self, n: usize) -> BinaryWord {
        let p = match self {
            LongWord::Explicit(w) => return BinaryWord::from(&w.bits()[..n.min(w.len())]),
            LongWord::Periodic(p) => p,
        };
        let mut bits: Vec<bool> = p.prefix.bits().iter().copied().take(n).collect();
        if !p.segment.is_empty() {
            let mut left = p.copies.clone();
            while bits.len() < n && left > BigUint::ZERO {
                let room = n - bits.len();
                bits.extend(p.segment.bits().iter().take(room));
                left -= 1u32;
            }
        }
        let room = n - bits.len();
        bits.extend(p.suffix.bits().iter().take(room));
        BinaryWord::from_bits(bits)
    }

    pub fn last(&self) -> Option<bool> {
        match self {
            LongWord::Explicit(w) => w.last(),
            LongWord::Periodic(p) => p
                .suffix
                .last()
                .or_else(|| {
                    (p.copies > BigUint::ZERO)
                        .then(|| p.segment.last())
                        .flatten()
                })
                .or_else(|| p.prefix.last()),
        }
    }

    /// See [`BinaryWord::index_is_even`].
    pub fn index_is_even(&self) -> bool {
        self.last().unwrap_or(true)
    }
}

impl From<BinaryWord> for LongWord {
    fn from(w: BinaryWord) -> Self {
        LongWord::Explicit(w)
    }
}

impl PartialEq<BinaryWord> for LongWord {
    fn eq(&self, other: &BinaryWord) -> bool {
        self.as_word() == Some(other)
    }
}

impl fmt::Display for LongWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LongWord::Explicit(w) => w.fmt(f),
            LongWord::Periodic(p) => {
                write!(f, "{}({})^{}{}", p.prefix, p.segment, p.copies, p.suffix)
            }
        }
    }
}
