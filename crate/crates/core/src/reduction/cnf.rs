//! Normalized 3-CNF formulas, DIMACS input and brute-force satisfiability.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

pub const DEFAULT_SAT_VAR_CAP: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based, as in DIMACS.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    fn from_dimacs(v: i64) -> Self {
        Literal {
            var: v.unsigned_abs() as usize,
            negated: v < 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn is_true_under(self, a: &Assignment) -> bool {
        a.value(self.var) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

/// Conjunction of clauses with exactly three literals on distinct variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::InvalidFormula("formula has no clauses".into()));
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (i, clause) in clauses.into_iter().enumerate() {
            let c: Clause = clause.as_slice().try_into().map_err(|_| {
                Error::InvalidFormula(format!(
                    "clause {} has {} literals, expected exactly 3",
                    i + 1,
                    clause.len()
                ))
            })?;
            for l in &c {
                if l.var == 0 || l.var > num_vars {
                    return Err(Error::InvalidFormula(format!(
                        "clause {} uses variable {} outside 1..={num_vars}",
                        i + 1,
                        l.var
                    )));
                }
            }
            if c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var {
                return Err(Error::InvalidFormula(format!(
                    "clause {} repeats a variable",
                    i + 1
                )));
            }
            out.push(c);
        }
        Ok(CnfFormula {
            num_vars,
            clauses: out,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.first_falsified(a).is_none()
    }

    /// 0-based index of the first clause `a` falsifies.
    pub fn first_falsified(&self, a: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.is_true_under(a)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            let _ = writeln!(s, "{} {} {} 0", c[0].to_dimacs(), c[1].to_dimacs(), c[2].to_dimacs());
        }
        s
    }
}

/// Parses DIMACS CNF: `c` comment lines, a `p cnf VARS CLAUSES` header, then
/// zero-terminated clauses that may span lines. A `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate problem line"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [_, "cnf", vars, count] = parts.as_slice() else {
                return Err(Error::parse(line_no, "expected `p cnf VARS CLAUSES`"));
            };
            let vars = vars
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad variable count {vars:?}")))?;
            let count = count
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad clause count {count:?}")))?;
            header = Some((vars, count));
            continue;
        }
        if header.is_none() {
            return Err(Error::parse(line_no, "clause before `p cnf` header"));
        }
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal {tok:?}")))?;
            if v == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(Literal::from_dimacs(v));
            }
        }
    }
    let Some((num_vars, declared)) = header else {
        return Err(Error::parse(1, "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(Error::InvalidFormula("last clause is not terminated by 0".into()));
    }
    if clauses.len() != declared {
        return Err(Error::InvalidFormula(format!(
            "header declares {declared} clauses, found {}",
            clauses.len()
        )));
    }
    CnfFormula::new(num_vars, clauses)
}

/// A total truth assignment; index 0 holds `x1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    /// Value of the 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    /// Assignment number `index` in lexicographic order, `x1` most significant.
    pub fn from_index(num_vars: usize, index: u64) -> Self {
        Assignment(
            (0..num_vars)
                .map(|v| (index >> (num_vars - 1 - v)) & 1 == 1)
                .collect(),
        )
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char(' ')?;
            }
            write!(f, "{}", if *v { (i + 1) as i64 } else { -((i + 1) as i64) })?;
        }
        Ok(())
    }
}

const CHUNK_BITS: u32 = 14;

/// First satisfying assignment in lexicographic order (all-false first).
pub fn brute_force_sat(f: &CnfFormula) -> Result<Option<Assignment>> {
    brute_force_sat_with(f, DEFAULT_SAT_VAR_CAP, Execution::default())
}

pub fn brute_force_sat_with(f: &CnfFormula, var_cap: usize, exec: Execution) -> Result<Option<Assignment>> {
    let nv = f.num_vars();
    if nv > var_cap || nv > 63 {
        return Err(Error::CapExceeded {
            what: "variable count",
            value: nv,
            cap: var_cap.min(63),
        });
    }
    // Per clause: bit masks of literals that are true when the bit is set
    // (positive) or clear (negated), with x1 at the most significant bit.
    let masks: Vec<(u64, u64)> = f
        .clauses()
        .iter()
        .map(|c| {
            c.iter().fold((0, 0), |(pos, neg), l| {
                let bit = 1u64 << (nv - l.var);
                if l.negated {
                    (pos, neg | bit)
                } else {
                    (pos | bit, neg)
                }
            })
        })
        .collect();
    let satisfied = |x: u64| masks.iter().all(|&(pos, neg)| x & pos != 0 || !x & neg != 0);
    let total = 1u64 << nv;
    let chunk = 1u64 << CHUNK_BITS.min(nv as u32);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let hit = par::find_map_first(&starts, exec, |&s| (s..s + chunk).find(|&x| satisfied(x)));
    Ok(hit.map(|x| Assignment::from_index(nv, x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let f = parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap();
        assert_eq!(f.num_clauses(), 1);
        assert_eq!(f.clauses()[0], [Literal::pos(1), Literal::pos(2), Literal::pos(3)]);
        let f = parse_dimacs("c example\np cnf 5 2\n1 -2 3 0\n2 4 5 0\n").unwrap();
        assert_eq!(f.clauses()[0], [Literal::pos(1), Literal::neg(2), Literal::pos(3)]);
        assert_eq!(f.clauses()[1], [Literal::pos(2), Literal::pos(4), Literal::pos(5)]);
        // Clauses may span lines; `%` terminates (SATLIB style).
        let f = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1 -2 -3\n0\n%\n0\n").unwrap();
        assert_eq!(f.num_clauses(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 -1 2 0\n"), Err(Error::InvalidFormula(_))));
        assert!(matches!(parse_dimacs("p cnf 3 1\n1 2 0\n"), Err(Error::InvalidFormula(_))));
        assert!(matches!(parse_dimacs("p cnf 3 1\n1 2 3 4 0\n"), Err(Error::InvalidFormula(_))));
        assert!(matches!(parse_dimacs("p dnf 3 1\n1 2 3 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_dimacs("1 2 3 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), Err(Error::InvalidFormula(_))));
        assert!(matches!(parse_dimacs("p cnf 3 1\n1 2 4 0\n"), Err(Error::InvalidFormula(_))));
        assert!(matches!(parse_dimacs("p cnf 3 1\n1 2 x 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_dimacs("p cnf 3 1\n1 2 3\n"), Err(Error::InvalidFormula(_))));
        assert!(matches!(parse_dimacs("p cnf 3 0\n"), Err(Error::InvalidFormula(_))));
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "p cnf 5 2\n1 -2 3 0\n2 4 5 0\n";
        assert_eq!(parse_dimacs(text).unwrap().to_dimacs(), text);
    }

    fn all_sign_patterns() -> CnfFormula {
        let clauses = (0..8u8)
            .map(|mask| {
                (0..3)
                    .map(|b| Literal {
                        var: b + 1,
                        negated: mask >> b & 1 == 1,
                    })
                    .collect()
            })
            .collect();
        CnfFormula::new(3, clauses).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let f = parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap();
        let a = brute_force_sat(&f).unwrap().unwrap();
        // Lexicographically first: x1=x2=0, x3=1.
        assert_eq!(a, Assignment(vec![false, false, true]));
        assert_eq!(brute_force_sat(&all_sign_patterns()).unwrap(), None);
        let f = parse_dimacs("p cnf 5 2\n1 -2 3 0\n2 4 5 0\n").unwrap();
        assert!(f.is_satisfied_by(&brute_force_sat(&f).unwrap().unwrap()));
        assert!(f.is_satisfied_by(&Assignment(vec![true; 5])));
    }

    #[test]
    fn brute_force_matches_naive_enumeration() {
        let f = parse_dimacs("p cnf 4 4\n1 2 3 0\n-1 -2 4 0\n-3 -4 1 0\n2 -4 -1 0\n").unwrap();
        let naive = (0..16).map(|i| Assignment::from_index(4, i)).find(|a| f.is_satisfied_by(a));
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(brute_force_sat_with(&f, 26, exec).unwrap(), naive);
        }
    }

    #[test]
    fn variable_cap() {
        let f = CnfFormula::new(27, vec![vec![Literal::pos(1), Literal::pos(2), Literal::pos(27)]]).unwrap();
        assert!(brute_force_sat(&f).unwrap_err().is_resource_limit());
    }
}
