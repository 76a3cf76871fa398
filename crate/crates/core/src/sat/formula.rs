use serde::{Deserialize, Serialize};

use super::{Clause, Literal};
use crate::{Error, Result};

/// A conjunction of width-`k` clauses over variables `1..=n`, in insertion
/// order. Duplicate clauses are allowed and count with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    n: usize,
    k: usize,
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::params("clause width k must be at least 1"));
        }
        if n > u32::MAX as usize / 2 {
            return Err(Error::params(format!("n = {n} is too large")));
        }
        Ok(Formula {
            n,
            k,
            clauses: Vec::new(),
        })
    }

    pub fn with_clauses(n: usize, k: usize, clauses: Vec<Clause>) -> Result<Self> {
        let mut f = Formula::new(n, k)?;
        f.clauses.reserve(clauses.len());
        for c in clauses {
            f.push(c)?;
        }
        Ok(f)
    }

    pub(crate) fn with_capacity_unchecked(n: usize, k: usize, cap: usize) -> Self {
        Formula {
            n,
            k,
            clauses: Vec::with_capacity(cap),
        }
    }

    pub fn push(&mut self, clause: Clause) -> Result<()> {
        if clause.len() != self.k {
            return Err(Error::Width {
                expected: self.k,
                found: clause.len(),
            });
        }
        if clause.max_var() as usize > self.n {
            return Err(Error::params(format!(
                "clause {clause} mentions a variable above n = {}",
                self.n
            )));
        }
        self.clauses.push(clause);
        Ok(())
    }

    #[inline]
    pub(crate) fn push_unchecked(&mut self, clause: Clause) {
        debug_assert_eq!(clause.len(), self.k);
        self.clauses.push(clause);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// The formula made of the first `m` clauses.
    pub fn prefix(&self, m: usize) -> Formula {
        Formula {
            n: self.n,
            k: self.k,
            clauses: self.clauses[..m.min(self.len())].to_vec(),
        }
    }

    pub fn truncate(&mut self, m: usize) {
        self.clauses.truncate(m);
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        assignment.len() == self.n
            && self
                .clauses
                .iter()
                .all(|c| c.is_satisfied_by(assignment.values()))
    }
}

/// One truth value per variable; index 0 holds `x_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all(n: usize, value: bool) -> Self {
        Assignment {
            values: vec![value; n],
        }
    }

    /// The assignment setting the first `ones` variables true and the rest
    /// false.
    pub fn first_true(n: usize, ones: usize) -> Self {
        Assignment {
            values: (0..n).map(|i| i < ones).collect(),
        }
    }

    /// Decodes the low `n` bits of `mask`; bit `i` is `x_{i+1}`.
    pub fn from_bits(n: usize, mask: u64) -> Self {
        Assignment {
            values: (0..n).map(|i| (mask >> i) & 1 == 1).collect(),
        }
    }

    #[inline]
    pub fn values(&self) -> &[bool] {
        &self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value of the 1-based variable `var`.
    pub fn get(&self, var: u32) -> bool {
        self.values[var as usize - 1]
    }

    pub fn literal(&self, lit: Literal) -> bool {
        lit.eval(&self.values)
    }

    pub fn count_true(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }
}
