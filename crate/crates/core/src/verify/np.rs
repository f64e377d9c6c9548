//! Brute-force membership in `A_{p,R}` and SAT.

use num_traits::ToPrimitive;

use super::{CnfSatVerifier, Verifier, VerifyError};
use crate::clocks::GrowthFamily;
use crate::words::{decode_cnf, BinaryWord};

/// Largest number of candidate words `np_member` enumerates by default.
pub const DEFAULT_ENUMERATION_CEILING: u64 = 1 << 22;

/// `sat_member` refuses formulas with more variables than this.
pub const SAT_MAX_VARS: u32 = 20;

/// A two-place predicate `R(x, y)`.
pub trait WitnessRelation {
    fn holds(&self, x: &BinaryWord, y: &BinaryWord) -> bool;

    /// A length `L` such that for every `y` longer than `L`,
    /// `R(x, y) = R(x, y[..L])`. Lets the enumeration stop at `L` without
    /// changing the answer. `None` means no such promise.
    fn witness_support(&self, _x: &BinaryWord) -> Option<u64> {
        None
    }
}

impl<F> WitnessRelation for F
where
    F: Fn(&BinaryWord, &BinaryWord) -> bool,
{
    fn holds(&self, x: &BinaryWord, y: &BinaryWord) -> bool {
        self(x, y)
    }
}

/// `R(x, s) = V_cnf(⟨x, s⟩)`. Only the first `varcount` bits of `s` matter.
#[derive(Clone, Copy, Debug, Default)]
pub struct SatRelation;

impl WitnessRelation for SatRelation {
    fn holds(&self, x: &BinaryWord, y: &BinaryWord) -> bool {
        CnfSatVerifier.check(x, y)
    }

    fn witness_support(&self, x: &BinaryWord) -> Option<u64> {
        if x.is_empty() {
            Some(1)
        } else {
            Some(u64::from(decode_cnf(x).var_count()))
        }
    }
}

/// Count of words of length at most `len`, `2^(len+1) - 1`, in that notation.
fn words_up_to(len: u64) -> String {
    format!("2^{}-1", u128::from(len) + 1)
}

/// `x ∈ A_{p,R}`: some `y` with `|y| <= g_p(|x|)` satisfies `R(x, y)`.
pub fn np_member(
    p_index: u64,
    relation: &impl WitnessRelation,
    x: &BinaryWord,
    family: &dyn GrowthFamily,
    ceiling: u64,
) -> Result<bool, VerifyError> {
    let bound = family
        .eval(p_index, x.len() as u64)
        .ok()
        .and_then(|b| b.to_u64())
        .unwrap_or(u64::MAX);
    let effective = relation
        .witness_support(x)
        .map_or(bound, |support| support.min(bound));
    let total = if effective >= 63 {
        None
    } else {
        Some((1u64 << (effective + 1)) - 1)
    };
    let total = match total {
        Some(t) if t <= ceiling => t,
        _ => {
            return Err(VerifyError::InfeasibleBound {
                words: words_up_to(effective),
                ceiling,
            })
        }
    };
    Ok((0..total).any(|idx| relation.holds(x, &BinaryWord::from_index_u64(idx))))
}

/// `x ∈ SAT` with `p_*(n) = n + 1`: some assignment word `s` with
/// `|s| <= |x| + 1` satisfies the decoded formula.
pub fn sat_member(x: &BinaryWord) -> Result<bool, VerifyError> {
    let verifier = CnfSatVerifier;
    if x.is_empty() {
        return Ok(verifier.check(x, &BinaryWord::from_bits(vec![false])));
    }
    let formula = decode_cnf(x);
    let vars = formula.var_count();
    if vars > SAT_MAX_VARS {
        return Err(VerifyError::InfeasibleBound {
            words: words_up_to(u64::from(vars)),
            ceiling: 1 << SAT_MAX_VARS,
        });
    }
    // Shorter assignments are padded with false and longer ones ignore the
    // surplus bits, so length exactly min(vars, p_*) covers every candidate.
    let p_star = x.len() + 1;
    let len = (vars as usize).min(p_star);
    Ok((0u64..1 << len).any(|mask| {
        let s = BinaryWord::from_bits((0..len).map(|i| (mask >> i) & 1 == 1).collect());
        verifier.check(x, &s)
    }))
}
