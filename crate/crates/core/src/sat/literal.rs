use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A variable `x_v` (1-based) or its negation.
///
/// Packed as `2 * (v - 1) + negated`, so `code()` doubles as the vertex id of
/// the literal in an implication graph over `2n` vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub struct Literal(u32);

impl Literal {
    /// # Panics
    /// If `var` is zero.
    #[inline]
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(var >= 1, "variables are 1-based");
        Literal(((var - 1) << 1) | u32::from(!positive))
    }

    #[inline]
    pub fn pos(var: u32) -> Self {
        Self::new(var, true)
    }

    #[inline]
    pub fn neg(var: u32) -> Self {
        Self::new(var, false)
    }

    #[inline]
    pub fn from_code(code: u32) -> Self {
        Literal(code)
    }

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    /// 1-based variable index.
    #[inline]
    pub fn var(self) -> u32 {
        (self.0 >> 1) + 1
    }

    /// 0-based variable index, for array lookups.
    #[inline]
    pub fn var_index(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn negate(self) -> Self {
        Literal(self.0 ^ 1)
    }

    /// Signed DIMACS integer.
    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var());
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(value: i64) -> Option<Self> {
        let var = u32::try_from(value.unsigned_abs()).ok()?;
        (var != 0).then(|| Literal::new(var, value > 0))
    }

    /// Truth value of this literal under a variable assignment.
    #[inline]
    pub fn eval(self, values: &[bool]) -> bool {
        values[self.var_index()] == self.is_positive()
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;
    fn not(self) -> Literal {
        self.negate()
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var())
        } else {
            write!(f, "~x{}", self.var())
        }
    }
}

impl From<Literal> for i64 {
    fn from(l: Literal) -> i64 {
        l.to_dimacs()
    }
}

impl TryFrom<i64> for Literal {
    type Error = String;
    fn try_from(v: i64) -> std::result::Result<Self, String> {
        Literal::from_dimacs(v).ok_or_else(|| format!("invalid literal {v}"))
    }
}

/// A disjunction of literals over pairwise distinct variables.
///
/// Literal order is kept exactly as constructed; the 2-SAT reduction reads
/// "first two positive literals" left to right.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Literal>", into = "Vec<Literal>")]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: Vec<Literal>) -> Result<Self> {
        if lits.is_empty() {
            return Err(Error::params("a clause needs at least one literal"));
        }
        for (i, a) in lits.iter().enumerate() {
            if lits[..i].iter().any(|b| b.var() == a.var()) {
                return Err(Error::params(format!(
                    "variable {} repeated within a clause",
                    a.var()
                )));
            }
        }
        Ok(Clause { lits })
    }

    /// Caller guarantees distinct variables.
    pub(crate) fn from_vec_unchecked(lits: Vec<Literal>) -> Self {
        debug_assert!(Clause::new(lits.clone()).is_ok());
        Clause { lits }
    }

    /// Builds a clause from signed DIMACS integers.
    ///
    /// # Panics
    /// On zero entries or repeated variables. Intended for tests and literals
    /// in source code.
    pub fn from_dimacs(values: &[i64]) -> Self {
        let lits = values
            .iter()
            .map(|&v| Literal::from_dimacs(v).expect("nonzero literal"))
            .collect();
        Clause::new(lits).expect("valid clause")
    }

    #[inline]
    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn positive_count(&self) -> usize {
        self.lits.iter().filter(|l| l.is_positive()).count()
    }

    pub fn max_var(&self) -> u32 {
        self.lits.iter().map(|l| l.var()).max().unwrap_or(0)
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.lits.iter().any(|l| l.eval(values))
    }
}

impl TryFrom<Vec<Literal>> for Clause {
    type Error = Error;
    fn try_from(lits: Vec<Literal>) -> Result<Self> {
        Clause::new(lits)
    }
}

impl From<Clause> for Vec<Literal> {
    fn from(c: Clause) -> Self {
        c.lits
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_encoding() {
        let l = Literal::neg(7);
        assert_eq!(l.var(), 7);
        assert!(!l.is_positive());
        assert_eq!(l.negate(), Literal::pos(7));
        assert_eq!(l.negate().negate(), l);
        assert_eq!(l.to_dimacs(), -7);
        assert_eq!(Literal::from_dimacs(-7), Some(l));
        assert_eq!(Literal::from_dimacs(0), None);
        assert_eq!(Literal::pos(1).code(), 0);
        assert_eq!(Literal::neg(1).code(), 1);
        assert_eq!(l.to_string(), "~x7");
    }

    #[test]
    fn clause_rejects_repeated_variable() {
        assert!(Clause::new(vec![Literal::pos(1), Literal::neg(1)]).is_err());
        assert!(Clause::new(vec![]).is_err());
        let c = Clause::from_dimacs(&[1, -2, 3]);
        assert_eq!(c.positive_count(), 2);
        assert_eq!(c.to_string(), "(x1 | ~x2 | x3)");
    }

    #[test]
    fn clause_serde_roundtrip() {
        let c = Clause::from_dimacs(&[-3, 1, 2]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, "[-3,1,2]");
        let back: Clause = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Clause>("[1,-1]").is_err());
    }
}
