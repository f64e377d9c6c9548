use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

/// A permutation of the clocked-machine enumeration. `apply` gives the
/// machine code sitting at a position of the permuted list; `inverse` gives
/// the position of a code.
pub trait Permutation {
    fn apply(&self, position: &BigUint) -> BigUint;
    fn inverse(&self, code: &BigUint) -> BigUint;
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepresentationError {
    #[error("prefix is not a permutation of 0..{len}: {value} is repeated or out of range")]
    NotAPermutation { len: usize, value: u64 },
}

/// Finite-prefix permutation: positions `0..L` follow an explicit table and
/// everything from `L` on is fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Representation {
    forward: Vec<u64>,
    backward: Vec<u64>,
}

impl Representation {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_prefix(prefix: Vec<u64>) -> Result<Self, RepresentationError> {
        let len = prefix.len();
        let mut backward = vec![u64::MAX; len];
        for (pos, &code) in prefix.iter().enumerate() {
            let slot = usize::try_from(code)
                .ok()
                .filter(|&c| c < len && backward[c] == u64::MAX)
                .ok_or(RepresentationError::NotAPermutation { len, value: code })?;
            backward[slot] = pos as u64;
        }
        Ok(Self {
            forward: prefix,
            backward,
        })
    }

    /// Frozen length `L`.
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, &c)| i as u64 == c)
    }

    pub fn prefix(&self) -> &[u64] {
        &self.forward
    }

    /// Grows the explicit prefix to `len` with fixed points.
    pub fn extend_to(&mut self, len: usize) {
        for pos in self.forward.len()..len {
            self.forward.push(pos as u64);
            self.backward.push(pos as u64);
        }
    }

    /// Swaps the codes at positions `a` and `b`.
    pub fn transpose(&mut self, a: u64, b: u64) {
        let hi = a.max(b) as usize;
        self.extend_to(hi + 1);
        let (a, b) = (a as usize, b as usize);
        self.forward.swap(a, b);
        self.backward[self.forward[a] as usize] = a as u64;
        self.backward[self.forward[b] as usize] = b as u64;
    }

    pub fn apply_u64(&self, position: u64) -> u64 {
        self.forward
            .get(position as usize)
            .copied()
            .unwrap_or(position)
    }

    pub fn inverse_u64(&self, code: u64) -> u64 {
        self.backward.get(code as usize).copied().unwrap_or(code)
    }
}

impl Permutation for Representation {
    fn apply(&self, position: &BigUint) -> BigUint {
        match position.to_u64() {
            Some(p) if (p as usize) < self.forward.len() => BigUint::from(self.forward[p as usize]),
            _ => position.clone(),
        }
    }

    fn inverse(&self, code: &BigUint) -> BigUint {
        match code.to_u64() {
            Some(c) if (c as usize) < self.backward.len() => {
                BigUint::from(self.backward[c as usize])
            }
            _ => code.clone(),
        }
    }
}

/// Free-function form of [`Permutation::apply`].
pub fn apply(phi: &impl Permutation, position: &BigUint) -> BigUint {
    phi.apply(position)
}

/// Free-function form of [`Permutation::inverse`].
pub fn inverse(phi: &impl Permutation, code: &BigUint) -> BigUint {
    phi.inverse(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn identity_maps() {
        let id = Representation::identity();
        assert!(id.is_identity());
        assert_eq!(id.len(), 0);
        for p in [0u64, 1, 17, 1 << 40] {
            assert_eq!(apply(&id, &n(p)), n(p));
            assert_eq!(inverse(&id, &n(p)), n(p));
        }
    }

    #[test]
    fn transposition() {
        let mut phi = Representation::identity();
        phi.transpose(0, 5);
        assert_eq!(phi.len(), 6);
        assert_eq!(apply(&phi, &n(0)), n(5));
        assert_eq!(apply(&phi, &n(5)), n(0));
        assert_eq!(apply(&phi, &n(7)), n(7));
        assert_eq!(inverse(&phi, &n(5)), n(0));
        for p in 0..1000u64 {
            assert_eq!(inverse(&phi, &apply(&phi, &n(p))), n(p));
            assert_eq!(apply(&phi, &inverse(&phi, &n(p))), n(p));
        }
    }

    #[test]
    fn composed_transpositions_stay_bijective() {
        let mut phi = Representation::identity();
        for (a, b) in [(0, 3), (1, 9), (3, 4), (9, 12), (2, 2)] {
            phi.transpose(a, b);
        }
        let mut seen = vec![false; phi.len()];
        for p in 0..phi.len() as u64 {
            let c = phi.apply_u64(p) as usize;
            assert!(!seen[c]);
            seen[c] = true;
            assert_eq!(phi.inverse_u64(c as u64), p);
        }
    }

    #[test]
    fn from_prefix_validates() {
        assert!(Representation::from_prefix(vec![2, 0, 1]).is_ok());
        assert_eq!(
            Representation::from_prefix(vec![0, 0]),
            Err(RepresentationError::NotAPermutation { len: 2, value: 0 })
        );
        assert!(Representation::from_prefix(vec![0, 2]).is_err());
    }
}
