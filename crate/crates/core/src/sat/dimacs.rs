use std::io::{BufRead, Write};

use super::{Clause, Formula, Literal};
use crate::{Error, Result};

/// Writes `p cnf n m` followed by one 0-terminated clause per line.
pub fn write_dimacs<W: Write>(f: &Formula, mut out: W) -> Result<()> {
    writeln!(out, "p cnf {} {}", f.n(), f.len())?;
    for c in f.clauses() {
        for l in c.literals() {
            write!(out, "{} ", l.to_dimacs())?;
        }
        writeln!(out, "0")?;
    }
    Ok(())
}

/// Reads a DIMACS CNF file into a fixed-width [`Formula`].
///
/// The width is `width` if given, otherwise that of the first clause (and 1
/// for a file with no clauses). Comment lines (`c ...`) and a trailing `%`
/// line are ignored; clauses may span lines.
pub fn read_dimacs<R: BufRead>(input: R, width: Option<usize>) -> Result<Formula> {
    let mut header: Option<(usize, usize)> = None;
    let mut pending: Vec<Literal> = Vec::new();
    let mut clauses: Vec<(usize, Clause)> = Vec::new();
    let mut last_line = 0;

    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if t.starts_with('%') {
            break;
        }
        if t.starts_with('p') {
            let parts: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(dimacs_err(line_no, "malformed or repeated problem line"));
            }
            let n = parse_num(parts[2], line_no)?;
            let m = parse_num(parts[3], line_no)?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(dimacs_err(line_no, "clause before the problem line"));
        };
        for tok in t.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| dimacs_err(line_no, format!("bad literal `{tok}`")))?;
            if v == 0 {
                let lits = std::mem::take(&mut pending);
                let clause = Clause::new(lits).map_err(|e| dimacs_err(line_no, e.to_string()))?;
                if clause.max_var() as usize > n {
                    return Err(dimacs_err(line_no, "variable exceeds header count"));
                }
                clauses.push((line_no, clause));
            } else {
                pending.push(Literal::from_dimacs(v).expect("nonzero"));
            }
        }
    }
    if !pending.is_empty() {
        return Err(dimacs_err(last_line, "last clause is not 0-terminated"));
    }
    let (n, m) = header.ok_or_else(|| dimacs_err(last_line, "missing problem line"))?;
    if clauses.len() != m {
        return Err(dimacs_err(
            last_line,
            format!("header promises {m} clauses, found {}", clauses.len()),
        ));
    }
    let k = width.unwrap_or_else(|| clauses.first().map_or(1, |(_, c)| c.len()));
    let mut f = Formula::new(n, k)?;
    for (line_no, c) in clauses {
        f.push(c).map_err(|e| dimacs_err(line_no, e.to_string()))?;
    }
    Ok(f)
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| dimacs_err(line, format!("bad number `{s}`")))
}

fn dimacs_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Dimacs {
        line,
        msg: msg.into(),
    }
}
