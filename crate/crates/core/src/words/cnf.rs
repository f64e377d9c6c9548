//! CNF formulas and their total binary coding.
//!
//! Grammar, read left to right:
//!
//! ```text
//! literal    := sign 1^v 0        (sign 1 = positive, 0 = negative; v >= 1)
//! terminator := 0 0               (a literal slot with sign 0 and v = 0)
//! formula    := (literal* terminator)*
//! ```
//!
//! Decoding never fails. A literal slot with sign 1 and `v = 0` is dropped,
//! as is any unterminated trailing clause or unfinished token. Empty clauses
//! vanish. If no complete clause survives, the result is the default formula
//! `(x1)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::BinaryWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    /// Variable index, 1-based.
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Self {
            var,
            positive: true,
        }
    }

    pub fn neg(var: u32) -> Self {
        Self {
            var,
            positive: false,
        }
    }

    fn to_dimacs(self) -> i64 {
        if self.positive {
            i64::from(self.var)
        } else {
            -i64::from(self.var)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    pub clauses: Vec<Vec<Literal>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("literal with variable index 0 in clause {clause}")]
    ZeroVariable { clause: usize },
    #[error("formula has no clauses")]
    NoClauses,
    #[error("empty clause at position {0}")]
    EmptyClause(usize),
    #[error("malformed DIMACS input at line {line}: {reason}")]
    Dimacs { line: usize, reason: String },
}

impl CnfFormula {
    pub fn new(clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        if clauses.is_empty() {
            return Err(CnfError::NoClauses);
        }
        for (idx, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CnfError::EmptyClause(idx));
            }
            if clause.iter().any(|l| l.var == 0) {
                return Err(CnfError::ZeroVariable { clause: idx });
            }
        }
        Ok(Self { clauses })
    }

    /// The single clause `(x1)`.
    pub fn default_formula() -> Self {
        Self {
            clauses: vec![vec![Literal::pos(1)]],
        }
    }

    /// Largest variable index that occurs.
    pub fn var_count(&self) -> u32 {
        self.clauses
            .iter()
            .flatten()
            .map(|l| l.var)
            .max()
            .unwrap_or(0)
    }

    /// Evaluates under `assign(var)`.
    pub fn eval_with(&self, assign: impl Fn(u32) -> bool) -> bool {
        self.clauses
            .iter()
            .all(|clause| clause.iter().any(|l| assign(l.var) == l.positive))
    }

    /// Evaluates with bit `i` (1-based) of `s` as the value of variable `i`;
    /// variables past the end of `s` are false.
    pub fn satisfied_by(&self, s: &BinaryWord) -> bool {
        let bits = s.bits();
        self.eval_with(|v| bits.get(v as usize - 1).copied().unwrap_or(false))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.var_count(), self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Reads DIMACS-like text: optional `c` comment lines, a `p cnf V C`
    /// header, then signed literals with each clause terminated by `0`.
    pub fn from_dimacs(text: &str) -> Result<Self, CnfError> {
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut declared: Option<(u32, usize)> = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            let err = |reason: &str| CnfError::Dimacs {
                line: lineno + 1,
                reason: reason.to_string(),
            };
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(header) = line.strip_prefix('p') {
                let fields: Vec<&str> = header.split_whitespace().collect();
                match fields.as_slice() {
                    ["cnf", v, c] => {
                        let v = v.parse().map_err(|_| err("bad variable count"))?;
                        let c = c.parse().map_err(|_| err("bad clause count"))?;
                        declared = Some((v, c));
                    }
                    _ => return Err(err("expected `p cnf V C`")),
                }
                continue;
            }
            if declared.is_none() {
                return Err(err("clause before header"));
            }
            for tok in line.split_whitespace() {
                let value: i64 = tok.parse().map_err(|_| err("bad literal"))?;
                if value == 0 {
                    clauses.push(std::mem::take(&mut current));
                    continue;
                }
                let var =
                    u32::try_from(value.unsigned_abs()).map_err(|_| err("variable too large"))?;
                current.push(Literal {
                    var,
                    positive: value > 0,
                });
            }
        }
        let (vars, count) = declared.ok_or(CnfError::Dimacs {
            line: 0,
            reason: "missing header".into(),
        })?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != count {
            return Err(CnfError::Dimacs {
                line: 0,
                reason: format!("header declares {count} clauses, found {}", clauses.len()),
            });
        }
        let formula = Self::new(clauses)?;
        if formula.var_count() > vars {
            return Err(CnfError::Dimacs {
                line: 0,
                reason: format!("variable {} exceeds declared {vars}", formula.var_count()),
            });
        }
        Ok(formula)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (ci, clause) in self.clauses.iter().enumerate() {
            if ci > 0 {
                f.write_str(" ∧ ")?;
            }
            f.write_str("(")?;
            for (li, lit) in clause.iter().enumerate() {
                if li > 0 {
                    f.write_str(" ∨ ")?;
                }
                if !lit.positive {
                    f.write_str("¬")?;
                }
                write!(f, "x{}", lit.var)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for CnfFormula {
    type Err = CnfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_dimacs(s)
    }
}

/// Total decoder from binary words to CNF formulas.
pub fn decode_cnf(x: &BinaryWord) -> CnfFormula {
    let bits = x.bits();
    let mut pos = 0;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    while pos < bits.len() {
        let positive = bits[pos];
        pos += 1;
        let mut var = 0u32;
        let mut closed = false;
        while pos < bits.len() {
            let b = bits[pos];
            pos += 1;
            if b {
                var = var.saturating_add(1);
            } else {
                closed = true;
                break;
            }
        }
        if !closed {
            // Unfinished token at end of input.
            break;
        }
        match (positive, var) {
            (false, 0) => {
                if !current.is_empty() {
                    clauses.push(std::mem::take(&mut current));
                }
            }
            (true, 0) => {}
            (positive, var) => current.push(Literal { var, positive }),
        }
    }
    if clauses.is_empty() {
        CnfFormula::default_formula()
    } else {
        CnfFormula { clauses }
    }
}

/// Canonical word for `f`; a section of [`decode_cnf`] up to dropped empty
/// clauses.
pub fn encode_cnf(f: &CnfFormula) -> Result<BinaryWord, CnfError> {
    let mut word = BinaryWord::empty();
    for (idx, clause) in f.clauses.iter().enumerate() {
        for lit in clause {
            if lit.var == 0 {
                return Err(CnfError::ZeroVariable { clause: idx });
            }
            word.push(lit.positive);
            for _ in 0..lit.var {
                word.push(true);
            }
            word.push(false);
        }
        word.push(false);
        word.push(false);
    }
    Ok(word)
}
