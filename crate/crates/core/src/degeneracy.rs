//! Deciding and certifying degeneracy.
//!
//! A game is degenerate when some mixed strategy with support size `k` has
//! more than `k` pure best responses. Checking a proposed strategy is a single
//! matrix-vector product ([`verify_witness`]); finding one, or proving none
//! exists, is NP-hard, and [`check_one_sided`] does it by exhaustive search
//! over support/tie pairs `(S, T)` with `|T| = |S| + 1`.
//!
//! For a pair `(S, T)` the tie system asks for a `y >= 0` supported inside
//! `S`, summing to one, under which every responder in `T` earns the same
//! payoff and no responder outside `T` earns more. A feasible point has at
//! least `|S| + 1` best responses and support at most `|S|`, so it is a
//! witness; conversely every witness solves the system for `S = supp(y)` and
//! any `|S| + 1` of its best responses. Pairs are tried with `k = |S|`
//! ascending, then `S` and `T` lexicographically, and the first feasible pair
//! is reported whatever the worker count.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::feasibility::{Constraint, FeasibilityProblem, Method, Relation};
use crate::game::{best_response_set, support_of, BestResponseSet, BimatrixGame, MixedStrategy};
use crate::matrix::RationalMatrix;
use crate::par::{self, Execution};
use crate::rational::Rational;

/// Which player is best-responding.
///
/// `Row`: the row player responds to a column-player mixture over the columns
/// of `A`. `Column`: the column player responds to a row-player mixture, which
/// is the same question asked of `Bᵀ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Row,
    Column,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Row => "row",
            Side::Column => "col",
        }
    }

    /// The matrix whose rows are the responder's pure strategies.
    pub fn responder_matrix(self, g: &BimatrixGame) -> RationalMatrix {
        match self {
            Side::Row => g.a().clone(),
            Side::Column => g.b().transpose(),
        }
    }
}

/// Support/tie pair whose system produced a witness.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TiePair {
    pub support: Vec<usize>,
    pub ties: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyWitness {
    pub side: Side,
    pub strategy: MixedStrategy,
    pub best_responses: BestResponseSet,
    /// Set when the witness came from the exhaustive search.
    pub pair: Option<TiePair>,
}

impl DegeneracyWitness {
    /// Builds a witness from a strategy, recomputing its best responses.
    /// Fails when the strategy does not violate the support bound.
    pub fn from_strategy(m: &RationalMatrix, side: Side, strategy: MixedStrategy) -> Result<Self> {
        let best_responses = best_response_set(m, &strategy)?;
        if best_responses.len() <= support_of(&strategy).len() {
            return Err(Error::InvalidStrategy(format!(
                "{} best responses against support {}; not a degeneracy witness",
                best_responses.len(),
                support_of(&strategy).len()
            )));
        }
        Ok(DegeneracyWitness {
            side,
            strategy,
            best_responses,
            pair: None,
        })
    }

    pub fn support_size(&self) -> usize {
        support_of(&self.strategy).len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Degenerate(Box<DegeneracyWitness>),
    Nondegenerate,
    Unknown(String),
}

impl Verdict {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Verdict::Degenerate(_))
    }

    pub fn is_nondegenerate(&self) -> bool {
        matches!(self, Verdict::Nondegenerate)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn witness(&self) -> Option<&DegeneracyWitness> {
        match self {
            Verdict::Degenerate(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Degenerate(_) => "DEGENERATE",
            Verdict::Nondegenerate => "NONDEGENERATE",
            Verdict::Unknown(_) => "UNKNOWN",
        }
    }
}

pub const DEFAULT_MAX_DIM: usize = 24;
pub const DEFAULT_MAX_PAIRS: u64 = 10_000_000;

/// Resource limits and execution settings for the exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Refuse matrices with `rows + cols` above this.
    pub max_dim: usize,
    /// Refuse searches with more `(S, T)` pairs than this.
    pub max_pairs: u64,
    /// Partial mode: only supports up to this size are searched. A completed
    /// capped search reports `Unknown`, never `Nondegenerate`.
    pub max_support: Option<usize>,
    pub method: Method,
    pub execution: Execution,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_dim: DEFAULT_MAX_DIM,
            max_pairs: DEFAULT_MAX_PAIRS,
            max_support: None,
            method: Method::default(),
            execution: Execution::default(),
        }
    }
}

/// The tie system for support candidates `support` (columns) and tied
/// responders `ties` (rows) of `m`, over `|support|` nonnegative variables.
pub fn tie_system(m: &RationalMatrix, support: &[usize], ties: &[usize]) -> Result<FeasibilityProblem> {
    if let Some(&j) = support.iter().find(|&&j| j >= m.cols()) {
        return Err(Error::DimensionMismatch(format!("support index {j} out of range")));
    }
    if let Some(&i) = ties.iter().find(|&&i| i >= m.rows()) {
        return Err(Error::DimensionMismatch(format!("tie index {i} out of range")));
    }
    let Some((&lead, rest)) = ties.split_first() else {
        return Err(Error::MalformedConstraint("empty tie set".into()));
    };
    let restricted = |i: usize| -> Vec<Rational> { support.iter().map(|&j| m.get(i, j).clone()).collect() };
    let lead_row = restricted(lead);
    let diff = |i: usize| -> Vec<Rational> {
        lead_row
            .iter()
            .zip(restricted(i))
            .map(|(a, b)| a - b)
            .collect()
    };
    let mut constraints = vec![Constraint::new(
        vec![Rational::one(); support.len()],
        Relation::Eq,
        Rational::one(),
    )];
    for &i in rest {
        constraints.push(Constraint::new(diff(i), Relation::Eq, Rational::zero()));
    }
    for r in (0..m.rows()).filter(|r| !ties.contains(r)) {
        constraints.push(Constraint::new(diff(r), Relation::Ge, Rational::zero()));
    }
    FeasibilityProblem::nonnegative(support.len(), constraints)
}

/// Accepts `y` iff it has strictly more best responses in `m` than its
/// support size.
pub fn verify_witness(m: &RationalMatrix, y: &MixedStrategy) -> Result<bool> {
    let br = best_response_set(m, y)?;
    Ok(br.len() > support_of(y).len())
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Largest support size that can possibly be violated: a witness needs
/// `k + 1 <= rows` responders and `k <= cols`.
pub fn natural_max_support(rows: usize, cols: usize) -> usize {
    cols.min(rows.saturating_sub(1))
}

/// Number of `(S, T)` pairs with `1 <= |S| <= max_support`.
pub fn pair_count(rows: usize, cols: usize, max_support: usize) -> u128 {
    (1..=max_support)
        .map(|k| binomial(cols, k).saturating_mul(binomial(rows, k + 1)))
        .fold(0u128, u128::saturating_add)
}

/// Exhaustive degeneracy decision for the responder rows of `m` (see the
/// module docs). Witnesses are reported with [`Side::Row`].
pub fn check_one_sided(m: &RationalMatrix, budget: &Budget) -> Verdict {
    check_matrix(m, Side::Row, budget)
}

pub fn check_side(g: &BimatrixGame, side: Side, budget: &Budget) -> Verdict {
    check_matrix(&side.responder_matrix(g), side, budget)
}

fn check_matrix(m: &RationalMatrix, side: Side, budget: &Budget) -> Verdict {
    let (rows, cols) = (m.rows(), m.cols());
    if rows + cols > budget.max_dim {
        return Verdict::Unknown(format!(
            "dimension rows+cols = {} exceeds cap {}",
            rows + cols,
            budget.max_dim
        ));
    }
    let natural = natural_max_support(rows, cols);
    let kmax = budget.max_support.map_or(natural, |cap| cap.min(natural));
    let pairs = pair_count(rows, cols, kmax);
    if pairs > budget.max_pairs as u128 {
        return Verdict::Unknown(format!(
            "{pairs} (S,T) pairs exceed cap {}",
            budget.max_pairs
        ));
    }

    for k in 1..=kmax {
        let supports: Vec<Vec<usize>> = (0..cols).combinations(k).collect();
        let hit = par::find_map_first(&supports, budget.execution, |s| {
            (0..rows).combinations(k + 1).find_map(|t| {
                let p = tie_system(m, s, &t).expect("indices in range");
                budget.method.solve(&p).map(|point| (t, point))
            })
            .map(|(t, point)| (s.clone(), t, point))
        });
        if let Some((support, ties, point)) = hit {
            let mut probs = vec![Rational::zero(); cols];
            for (&j, v) in support.iter().zip(point) {
                probs[j] = v;
            }
            let strategy = MixedStrategy::new(probs).expect("tie system enforces a distribution");
            let best_responses = best_response_set(m, &strategy).expect("dimensions match");
            debug_assert!(best_responses.len() > support_of(&strategy).len());
            return Verdict::Degenerate(Box::new(DegeneracyWitness {
                side,
                strategy,
                best_responses,
                pair: Some(TiePair { support, ties }),
            }));
        }
    }
    if kmax < natural {
        Verdict::Unknown(format!(
            "support capped at {kmax} (full search needs {natural}); no witness found up to the cap"
        ))
    } else {
        Verdict::Nondegenerate
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameVerdict {
    pub row: Verdict,
    pub column: Verdict,
    pub overall: Verdict,
}

/// Degenerate overall if either side is; the row-side witness wins when both are.
pub fn check_game(g: &BimatrixGame, budget: &Budget) -> GameVerdict {
    let row = check_side(g, Side::Row, budget);
    let column = check_side(g, Side::Column, budget);
    let overall = combine(&row, &column);
    GameVerdict {
        row,
        column,
        overall,
    }
}

pub(crate) fn combine(row: &Verdict, column: &Verdict) -> Verdict {
    match (row, column) {
        (Verdict::Degenerate(_), _) => row.clone(),
        (_, Verdict::Degenerate(_)) => column.clone(),
        (Verdict::Nondegenerate, Verdict::Nondegenerate) => Verdict::Nondegenerate,
        (Verdict::Unknown(r), _) | (_, Verdict::Unknown(r)) => Verdict::Unknown(r.clone()),
    }
}

fn require_win_lose(g: &BimatrixGame) -> Result<()> {
    for (name, m) in [('A', g.a()), ('B', g.b())] {
        if let Some((row, col)) = m.first_non_win_lose() {
            return Err(Error::NotWinLose {
                matrix: name,
                row,
                col,
                value: m.get(row, col).to_string(),
            });
        }
    }
    Ok(())
}

fn column_nonzeros(m: &RationalMatrix, j: usize) -> usize {
    (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).count()
}

/// One-sided form of the printed win-lose criterion: every column of the
/// responder matrix has at most one nonzero entry.
pub fn winlose_side_paper(m: &RationalMatrix) -> bool {
    (0..m.cols()).all(|j| column_nonzeros(m, j) <= 1)
}

/// One-sided corrected criterion: every column has exactly one nonzero, or
/// there is a single responder. An all-zero column `j` with two or more
/// responders is degenerate through `y = e_j`, which ties every row at zero.
pub fn winlose_side_corrected(m: &RationalMatrix) -> bool {
    m.rows() == 1 || (0..m.cols()).all(|j| column_nonzeros(m, j) == 1)
}

/// The win-lose characterization as literally stated: each column of `A` and
/// each row of `B` has at most one nonzero. Wrong for all-zero columns/rows.
pub fn winlose_nondegenerate_paper(g: &BimatrixGame) -> Result<bool> {
    require_win_lose(g)?;
    Ok(winlose_side_paper(g.a()) && winlose_side_paper(&g.b().transpose()))
}

/// The win-lose characterization with the all-zero case handled; agrees with
/// the exhaustive oracle.
pub fn winlose_nondegenerate_corrected(g: &BimatrixGame) -> Result<bool> {
    require_win_lose(g)?;
    Ok(winlose_side_corrected(g.a()) && winlose_side_corrected(&g.b().transpose()))
}
