use super::Symbol;
use crate::words::BinaryWord;

/// Two-sided tape, blank everywhere except on a finite support.
///
/// Cells `0, 1, 2, ...` live in `right`, cells `-1, -2, ...` in `left`.
#[derive(Clone, Debug, Default)]
pub struct Tape {
    right: Vec<Symbol>,
    left: Vec<Symbol>,
}

impl Tape {
    pub fn new() -> Self {
        Self::default()
    }

    /// Tape holding `x` on cells `0..|x|`.
    pub fn with_input(x: &BinaryWord) -> Self {
        Self {
            right: x.bits().iter().map(|&b| Symbol::from_bit(b)).collect(),
            left: Vec::new(),
        }
    }

    /// Tape holding `cells` starting at position `origin`.
    pub fn from_cells(origin: i64, cells: &[Symbol]) -> Self {
        let mut tape = Self::new();
        for (i, &sym) in cells.iter().enumerate() {
            if sym != Symbol::Blank {
                tape.set(origin + i as i64, sym);
            }
        }
        tape
    }

    #[inline]
    pub fn get(&self, pos: i64) -> Symbol {
        if pos >= 0 {
            self.right
                .get(pos as usize)
                .copied()
                .unwrap_or(Symbol::Blank)
        } else {
            self.left
                .get((-pos - 1) as usize)
                .copied()
                .unwrap_or(Symbol::Blank)
        }
    }

    #[inline]
    pub fn set(&mut self, pos: i64, sym: Symbol) {
        let (cells, idx) = if pos >= 0 {
            (&mut self.right, pos as usize)
        } else {
            (&mut self.left, (-pos - 1) as usize)
        };
        if idx >= cells.len() {
            if sym == Symbol::Blank {
                return;
            }
            cells.resize(idx + 1, Symbol::Blank);
        }
        cells[idx] = sym;
    }

    /// Smallest and largest non-blank positions, if any.
    pub fn support(&self) -> Option<(i64, i64)> {
        let min = self
            .left
            .iter()
            .rposition(|&s| s != Symbol::Blank)
            .map(|i| -(i as i64) - 1)
            .or_else(|| {
                self.right
                    .iter()
                    .position(|&s| s != Symbol::Blank)
                    .map(|i| i as i64)
            })?;
        let max = self
            .right
            .iter()
            .rposition(|&s| s != Symbol::Blank)
            .map(|i| i as i64)
            .or_else(|| {
                self.left
                    .iter()
                    .position(|&s| s != Symbol::Blank)
                    .map(|i| -(i as i64) - 1)
            })?;
        Some((min, max))
    }

    pub fn non_blank_count(&self) -> usize {
        self.right
            .iter()
            .chain(self.left.iter())
            .filter(|&&s| s != Symbol::Blank)
            .count()
    }

    /// Cells `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<Symbol> {
        (lo..=hi).map(|p| self.get(p)).collect()
    }

    /// Ends of the maximal non-blank block containing `pos`.
    pub fn block_bounds(&self, pos: i64) -> Option<(i64, i64)> {
        if self.get(pos) == Symbol::Blank {
            return None;
        }
        let mut lo = pos;
        while self.get(lo - 1) != Symbol::Blank {
            lo -= 1;
        }
        let mut hi = pos;
        while self.get(hi + 1) != Symbol::Blank {
            hi += 1;
        }
        Some((lo, hi))
    }

    /// Maximal non-blank block containing `pos`; empty if `pos` is blank.
    pub fn block_at(&self, pos: i64) -> BinaryWord {
        match self.block_bounds(pos) {
            Some((lo, hi)) => {
                BinaryWord::from_bits((lo..=hi).map(|p| self.get(p) == Symbol::One).collect())
            }
            None => BinaryWord::empty(),
        }
    }
}

impl PartialEq for Tape {
    fn eq(&self, other: &Self) -> bool {
        match (self.support(), other.support()) {
            (None, None) => true,
            (Some((a, b)), Some((c, d))) => {
                (a, b) == (c, d) && self.window(a, b) == other.window(c, d)
            }
            _ => false,
        }
    }
}

impl Eq for Tape {}
