//! The 3-SAT to game-degeneracy construction.
//!
//! Columns are the clause assignments `c_i^k` (clause `i`, truth pattern
//! `k` in `1..=7`, most significant bit for the first literal). Rows are the
//! same clause assignments, then the special strategy `f`, then one row per
//! conflicting pair of clause assignments. Row payoffs:
//!
//! * `c_i^p` pays 1 against column `c_i^p`, 0 elsewhere;
//! * `f` pays `1/n` against every column;
//! * the `d`-th conflicting pair `c_i^p c_j^q` pays `1/2 + 3^d ε` against
//!   columns `c_i^p` and `c_j^q`, and 0 elsewhere, with `d` in `0..D` and
//!   `ε = 1/(6·3^(2D))`.
//!
//! The column player's payoffs `B` have exactly one 1 per row (row `c_i^k`
//! pays column `c_i^k`, `f` pays column `c_1^1`, a pair pays its first
//! column) so the column side can never be degenerate.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::cnf::{Assignment, Clause, CnfFormula};
use crate::degeneracy::{DegeneracyWitness, Side};
use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedStrategy};
use crate::matrix::RationalMatrix;
use crate::par::{self, Execution};
use crate::rational::Rational;

pub const PATTERNS_PER_CLAUSE: usize = 7;

/// Clause `clause` (0-based) under truth pattern `pattern` in `1..=7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseAssignment {
    pub clause: usize,
    pub pattern: u8,
}

impl ClauseAssignment {
    pub fn new(clause: usize, pattern: u8) -> Result<Self> {
        if !(1..=7).contains(&pattern) {
            return Err(Error::InvalidFormula(format!("pattern {pattern} outside 1..=7")));
        }
        Ok(ClauseAssignment { clause, pattern })
    }

    /// Column of this clause assignment, and row of its pure counterpart.
    pub fn index(self) -> usize {
        PATTERNS_PER_CLAUSE * self.clause + self.pattern as usize - 1
    }

    fn from_index(index: usize) -> Self {
        ClauseAssignment {
            clause: index / PATTERNS_PER_CLAUSE,
            pattern: (index % PATTERNS_PER_CLAUSE + 1) as u8,
        }
    }

    /// 1-based clause label, e.g. `c1^5`.
    pub fn label(self) -> String {
        format!("c{}^{}", self.clause + 1, self.pattern)
    }
}

impl fmt::Display for ClauseAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Variable values forced by reading `pattern` as the truth values of the
/// clause's literals, first literal at the most significant bit.
pub fn induced_partial_assignment(clause: &Clause, pattern: u8) -> Result<BTreeMap<usize, bool>> {
    if !(1..=7).contains(&pattern) {
        return Err(Error::InvalidFormula(format!("pattern {pattern} outside 1..=7")));
    }
    Ok(clause
        .iter()
        .enumerate()
        .map(|(w, lit)| {
            let literal_true = (pattern >> (2 - w)) & 1 == 1;
            (lit.var, literal_true != lit.negated)
        })
        .collect())
}

/// The truth pattern a total assignment induces on `clause`; 0 means the
/// clause is falsified.
pub fn pattern_under(clause: &Clause, a: &Assignment) -> u8 {
    clause
        .iter()
        .fold(0u8, |acc, lit| (acc << 1) | lit.is_true_under(a) as u8)
}

/// Whether the two clause assignments give some shared variable different values.
pub fn conflicts(a: ClauseAssignment, b: ClauseAssignment, f: &CnfFormula) -> bool {
    if a == b {
        return false;
    }
    let pa = induced_partial_assignment(&f.clauses()[a.clause], a.pattern).expect("valid pattern");
    let pb = induced_partial_assignment(&f.clauses()[b.clause], b.pattern).expect("valid pattern");
    pa.iter().any(|(v, val)| pb.get(v).is_some_and(|other| other != val))
}

/// Unordered conflicting pair in canonical order `first < second`, with its
/// position `d` in the ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConflictPair {
    pub first: ClauseAssignment,
    pub second: ClauseAssignment,
    pub d: usize,
}

impl ConflictPair {
    pub fn label(&self) -> String {
        format!("{}{}", self.first.label(), self.second.label())
    }
}

/// All conflicting pairs, intra-clause ones included, in lexicographic order
/// of `(first, second)`; `d` counts from 0 in that order.
pub fn enumerate_conflict_pairs(f: &CnfFormula) -> Vec<ConflictPair> {
    enumerate_conflict_pairs_with(f, Execution::default())
}

pub fn enumerate_conflict_pairs_with(f: &CnfFormula, exec: Execution) -> Vec<ConflictPair> {
    let total = PATTERNS_PER_CLAUSE * f.num_clauses();
    let firsts: Vec<usize> = (0..total).collect();
    let partners = par::map_collect(&firsts, exec, |&i| {
        let a = ClauseAssignment::from_index(i);
        ((i + 1)..total)
            .map(ClauseAssignment::from_index)
            .filter(|&b| conflicts(a, b, f))
            .map(|b| (a, b))
            .collect::<Vec<_>>()
    });
    let mut pairs: Vec<(ClauseAssignment, ClauseAssignment)> = partners.into_iter().flatten().collect();
    pairs.sort();
    pairs
        .into_iter()
        .enumerate()
        .map(|(d, (first, second))| ConflictPair { first, second, d })
        .collect()
}

/// `1 / (6 · 3^(2D))`, exactly.
pub fn epsilon(num_conflicts: usize) -> Rational {
    let exp = u32::try_from(2 * num_conflicts).expect("conflict count fits in u32");
    Rational::new(1, BigInt::from(6) * num_traits::Pow::pow(BigInt::from(3), exp))
}

/// `1/2 + 3^d ε`.
pub fn ladder_value(d: usize, eps: &Rational) -> Rational {
    let exp = u32::try_from(d).expect("index fits in u32");
    Rational::new(1, 2) + eps * Rational::from_integer(num_traits::Pow::pow(BigInt::from(3), exp))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionGame {
    pub formula: CnfFormula,
    pub game: BimatrixGame,
    pub epsilon: Rational,
    pub conflicts: Vec<ConflictPair>,
}

impl ReductionGame {
    /// Number of clauses.
    pub fn n(&self) -> usize {
        self.formula.num_clauses()
    }

    /// Number of conflicting pairs.
    pub fn num_conflicts(&self) -> usize {
        self.conflicts.len()
    }

    pub fn f_row(&self) -> usize {
        PATTERNS_PER_CLAUSE * self.n()
    }

    pub fn conflict_row(&self, d: usize) -> usize {
        self.f_row() + 1 + d
    }

    /// Active columns under `a`: one per clause, the pattern `a` induces.
    pub fn active_columns(&self, a: &Assignment) -> Result<Vec<usize>> {
        active_columns(&self.formula, a)
    }
}

pub fn active_columns(f: &CnfFormula, a: &Assignment) -> Result<Vec<usize>> {
    if a.num_vars() != f.num_vars() {
        return Err(Error::DimensionMismatch(format!(
            "assignment has {} variables, formula has {}",
            a.num_vars(),
            f.num_vars()
        )));
    }
    f.clauses()
        .iter()
        .enumerate()
        .map(|(i, c)| match pattern_under(c, a) {
            0 => Err(Error::Unsatisfied { clause: i + 1 }),
            k => Ok(ClauseAssignment { clause: i, pattern: k }.index()),
        })
        .collect()
}

pub fn build_game(f: &CnfFormula) -> ReductionGame {
    build_game_with(f, Execution::default())
}

pub fn build_game_with(f: &CnfFormula, exec: Execution) -> ReductionGame {
    let n = f.num_clauses();
    let cols = PATTERNS_PER_CLAUSE * n;
    let conflicts = enumerate_conflict_pairs_with(f, exec);
    let eps = epsilon(conflicts.len());
    let rows = cols + 1 + conflicts.len();

    let mut a = RationalMatrix::zeros(rows, cols).expect("positive dimensions");
    let mut b = RationalMatrix::zeros(rows, cols).expect("positive dimensions");
    for j in 0..cols {
        a.set(j, j, Rational::one());
        b.set(j, j, Rational::one());
    }
    let f_row = cols;
    let share = Rational::new(1, n as i64);
    for j in 0..cols {
        a.set(f_row, j, share.clone());
    }
    b.set(f_row, 0, Rational::one());
    for pair in &conflicts {
        let r = f_row + 1 + pair.d;
        let v = ladder_value(pair.d, &eps);
        a.set(r, pair.first.index(), v.clone());
        a.set(r, pair.second.index(), v);
        b.set(r, pair.first.index(), Rational::one());
    }

    let col_labels: Vec<String> = (0..cols).map(|j| ClauseAssignment::from_index(j).label()).collect();
    let mut row_labels = col_labels.clone();
    row_labels.push("f".into());
    row_labels.extend(conflicts.iter().map(ConflictPair::label));
    let game = BimatrixGame::new(a, b)
        .and_then(|g| g.with_labels(Some(row_labels), Some(col_labels)))
        .expect("construction is well-formed");

    ReductionGame {
        formula: f.clone(),
        game,
        epsilon: eps,
        conflicts,
    }
}

/// The uniform column strategy over the active clause assignments of a
/// satisfying assignment, as a row-side witness on the built game.
pub fn witness_from_assignment(rg: &ReductionGame, a: &Assignment) -> Result<DegeneracyWitness> {
    let active = rg.active_columns(a)?;
    let y = MixedStrategy::uniform_on(rg.game.cols(), &active)?;
    DegeneracyWitness::from_strategy(rg.game.a(), Side::Row, y)
}
