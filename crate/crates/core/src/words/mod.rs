//! Binary words over {0,1}, the canonical word/number bijection, the pairing
//! function and the CNF formula codec.

mod cnf;
mod long;
mod pairing;

pub use cnf::{decode_cnf, encode_cnf, CnfError, CnfFormula, Literal};
pub use long::{LongWord, PeriodicWord};
pub use pairing::{pair, pair_u64, unpair, unpair_u64};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

/// A finite word over the binary alphabet. The empty word is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid binary word character {0:?}")]
pub struct ParseWordError(pub char);

impl BinaryWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn last(&self) -> Option<bool> {
        self.bits.last().copied()
    }

    /// The `n`-th word of the sequence ∅, 0, 1, 00, 01, 10, 11, 000, ...
    ///
    /// Realized as the binary expansion of `n + 1` with its leading 1 removed.
    pub fn from_index(n: &BigUint) -> Self {
        let shifted = n + 1u32;
        let width = shifted.bits();
        let bits = (0..width - 1).rev().map(|i| shifted.bit(i)).collect();
        Self { bits }
    }

    pub fn from_index_u64(n: u64) -> Self {
        let shifted = u128::from(n) + 1;
        let width = 128 - shifted.leading_zeros();
        let bits = (0..width - 1)
            .rev()
            .map(|i| (shifted >> i) & 1 == 1)
            .collect();
        Self { bits }
    }

    /// Position of this word in the canonical enumeration.
    pub fn index(&self) -> BigUint {
        // Pack "1" followed by the bits into big-endian bytes.
        let total = self.bits.len() + 1;
        let mut bytes = vec![0u8; total.div_ceil(8)];
        let pad = bytes.len() * 8 - total;
        let mut set = |pos: usize| bytes[pos / 8] |= 0x80 >> (pos % 8);
        set(pad);
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                set(pad + 1 + i);
            }
        }
        BigUint::from_bytes_be(&bytes) - BigUint::one()
    }

    /// Index as a `u64`, when it fits.
    pub fn index_u64(&self) -> Option<u64> {
        if self.bits.len() >= 64 {
            return None;
        }
        let shifted = self
            .bits
            .iter()
            .fold(1u64, |acc, &b| (acc << 1) | u64::from(b));
        Some(shifted - 1)
    }

    /// Parity of the canonical index without materializing it: the index is
    /// even exactly for the empty word and for words ending in 1.
    pub fn index_is_even(&self) -> bool {
        self.last().unwrap_or(true)
    }
}

/// The `n`-th word in the canonical enumeration of binary strings.
pub fn index_to_word(n: &BigUint) -> BinaryWord {
    BinaryWord::from_index(n)
}

/// Inverse of [`index_to_word`].
pub fn word_to_index(w: &BinaryWord) -> BigUint {
    w.index()
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = ParseWordError;

    /// Parses a string of `0`/`1`. The empty string and `∅` both denote the
    /// empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "∅" {
            return Ok(Self::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ParseWordError(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_bits)
    }
}

impl From<&[bool]> for BinaryWord {
    fn from(bits: &[bool]) -> Self {
        Self::from_bits(bits.to_vec())
    }
}

/// Parses a natural number written either in decimal or as `2^K` (optionally
/// `2^K-1`, `2^K+1` and so on), which is convenient for history-code budgets.
pub fn parse_natural(text: &str) -> Option<BigUint> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("2^") {
        let (exp, offset) = match rest.find(['+', '-']) {
            Some(pos) => (&rest[..pos], Some(&rest[pos..])),
            None => (rest, None),
        };
        let exp: u32 = exp.parse().ok()?;
        let base = BigUint::one() << exp;
        return match offset {
            None => Some(base),
            Some(off) => {
                let (sign, digits) = off.split_at(1);
                let delta: BigUint = digits.parse().ok()?;
                if sign == "+" {
                    Some(base + delta)
                } else if delta <= base {
                    Some(base - delta)
                } else {
                    None
                }
            }
        };
    }
    text.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_sequence_prefix() {
        let expected = ["", "0", "1", "00", "01", "10", "11", "000"];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(BinaryWord::from_index_u64(n as u64), w(e));
            assert_eq!(index_to_word(&BigUint::from(n)), w(e));
        }
    }

    #[test]
    fn spec_examples() {
        assert!(index_to_word(&BigUint::ZERO).is_empty());
        assert_eq!(index_to_word(&BigUint::from(3u32)), w("00"));
        assert_eq!(index_to_word(&BigUint::from(6u32)), w("11"));
        assert_eq!(word_to_index(&BinaryWord::empty()), BigUint::ZERO);
        assert_eq!(word_to_index(&w("00")), BigUint::from(3u32));
        let x = w("10110");
        assert_eq!(index_to_word(&word_to_index(&x)), x);
    }

    #[test]
    fn long_words_roundtrip() {
        let bits: Vec<bool> = (0..300).map(|i| i % 3 == 0 || i % 7 == 1).collect();
        let word = BinaryWord::from_bits(bits);
        assert_eq!(index_to_word(&word.index()), word);
        assert_eq!(word.index_u64(), None);
    }

    #[test]
    fn index_parity_shortcut() {
        for n in 0..200u64 {
            let word = BinaryWord::from_index_u64(n);
            assert_eq!(word.index_is_even(), n % 2 == 0, "n = {n}");
        }
    }

    #[test]
    fn parse_rejects_other_characters() {
        assert_eq!("012".parse::<BinaryWord>(), Err(ParseWordError('2')));
        assert_eq!("∅".parse::<BinaryWord>(), Ok(BinaryWord::empty()));
    }

    #[test]
    fn natural_notation() {
        assert_eq!(parse_natural("1000"), Some(BigUint::from(1000u32)));
        assert_eq!(parse_natural("2^10"), Some(BigUint::from(1024u32)));
        assert_eq!(parse_natural("2^10-1"), Some(BigUint::from(1023u32)));
        assert_eq!(parse_natural("2^3+2"), Some(BigUint::from(10u32)));
        assert_eq!(parse_natural("x"), None);
    }
}
