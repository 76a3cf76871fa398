use crate::sat::{Clause, Formula, Literal};
use crate::{Error, Result};

/// Keeps a 2-literal sub-clause of a clause of width at least 2:
///
/// * two or more positive literals: the first two positive literals;
/// * exactly one: that positive literal, then the first negative literal;
/// * none: the first two literals.
///
/// "First" is left to right in clause order.
pub fn reduce_clause(clause: &Clause) -> Result<Clause> {
    let lits = clause.literals();
    if lits.len() < 2 {
        return Err(Error::Width {
            expected: 2,
            found: lits.len(),
        });
    }
    let mut positives = lits.iter().copied().filter(|l| l.is_positive());
    let pair: [Literal; 2] = match (positives.next(), positives.next()) {
        (Some(a), Some(b)) => [a, b],
        (Some(a), None) => {
            let first_neg = lits
                .iter()
                .copied()
                .find(|l| !l.is_positive())
                .expect("width >= 2 with one positive has a negative");
            [a, first_neg]
        }
        _ => [lits[0], lits[1]],
    };
    Ok(Clause::from_vec_unchecked(pair.to_vec()))
}

/// Clause-by-clause [`reduce_clause`]. A satisfying assignment of the result
/// satisfies `f`, since every output clause is a sub-clause of its source.
pub fn reduce_to_2sat(f: &Formula) -> Result<Formula> {
    if f.k() < 2 {
        return Err(Error::Width {
            expected: 2,
            found: f.k(),
        });
    }
    let mut out = Formula::with_capacity_unchecked(f.n(), 2, f.len());
    for c in f.clauses() {
        out.push_unchecked(reduce_clause(c)?);
    }
    Ok(out)
}
