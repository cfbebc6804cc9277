//! Bimatrix games, mixed strategies, payoffs and best responses.
//!
//! Indices are 0-based throughout. The row player owns the `m` rows of `A`
//! and the column player the `n` columns; both matrices are `m x n`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::{dot, max_of, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimatrixGame {
    a: RationalMatrix,
    b: RationalMatrix,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl BimatrixGame {
    pub fn new(a: RationalMatrix, b: RationalMatrix) -> Result<Self> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(Error::DimensionMismatch(format!(
                "A is {}x{} but B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(BimatrixGame {
            a,
            b,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn with_labels(
        mut self,
        row_labels: Option<Vec<String>>,
        col_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(labels) = &row_labels {
            check_labels("row", labels, self.rows())?;
        }
        if let Some(labels) = &col_labels {
            check_labels("column", labels, self.cols())?;
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &RationalMatrix {
        &self.b
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn is_win_lose(&self) -> bool {
        self.a.is_win_lose() && self.b.is_win_lose()
    }
}

fn check_labels(kind: &str, labels: &[String], expected: usize) -> Result<()> {
    if labels.len() != expected {
        return Err(Error::InvalidLabels(format!(
            "{} {kind} labels for {expected} strategies",
            labels.len()
        )));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if l.is_empty() || l.chars().any(|c| c.is_whitespace() || c == '#') {
            return Err(Error::InvalidLabels(format!("{kind} label {l:?} is not a single token")));
        }
        if !seen.insert(l.as_str()) {
            return Err(Error::InvalidLabels(format!("duplicate {kind} label {l:?}")));
        }
    }
    Ok(())
}

/// A probability vector: nonnegative entries summing to exactly one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedStrategy {
    probs: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidStrategy("empty strategy".into()));
        }
        if let Some(j) = probs.iter().position(Rational::is_negative) {
            return Err(Error::InvalidStrategy(format!(
                "entry {j} is negative ({})",
                probs[j]
            )));
        }
        let total: Rational = probs.iter().sum();
        if total != Rational::one() {
            return Err(Error::InvalidStrategy(format!("entries sum to {total}, not 1")));
        }
        Ok(MixedStrategy { probs })
    }

    pub fn pure(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidStrategy(format!(
                "pure strategy {index} out of range for dimension {dim}"
            )));
        }
        let mut probs = vec![Rational::zero(); dim];
        probs[index] = Rational::one();
        Ok(MixedStrategy { probs })
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        Self::uniform_on(dim, &(0..dim).collect::<Vec<_>>())
    }

    /// Uniform over `indices` (which must be distinct and in range), zero elsewhere.
    pub fn uniform_on(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut probs = vec![Rational::zero(); dim];
        let mass = Rational::new(1, indices.len().max(1) as i64);
        for &j in indices {
            let slot = probs.get_mut(j).ok_or_else(|| {
                Error::InvalidStrategy(format!("index {j} out of range for dimension {dim}"))
            })?;
            *slot = mass.clone();
        }
        Self::new(probs)
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn support(&self) -> SupportSet {
        support_of(self)
    }
}

/// Strictly increasing strategy indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportSet {
    pub indices: Vec<usize>,
}

impl SupportSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// The pure strategies attaining the maximal payoff `value`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BestResponseSet {
    pub indices: Vec<usize>,
    pub value: Rational,
}

impl BestResponseSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn check_dim(m: &RationalMatrix, s: &MixedStrategy) -> Result<()> {
    if s.dim() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "strategy of dimension {} against matrix with {} columns",
            s.dim(),
            m.cols()
        )));
    }
    Ok(())
}

/// The exact product `M y`.
pub fn payoff_vector(m: &RationalMatrix, y: &MixedStrategy) -> Result<Vec<Rational>> {
    check_dim(m, y)?;
    m.mul_vec(y.probs())
}

pub fn best_response_set(m: &RationalMatrix, y: &MixedStrategy) -> Result<BestResponseSet> {
    let payoffs = payoff_vector(m, y)?;
    Ok(argmax(&payoffs))
}

pub(crate) fn argmax(payoffs: &[Rational]) -> BestResponseSet {
    let value = max_of(payoffs).expect("matrices are nonempty").clone();
    let indices = payoffs
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == value)
        .map(|(i, _)| i)
        .collect();
    BestResponseSet { indices, value }
}

pub fn support_of(s: &MixedStrategy) -> SupportSet {
    SupportSet {
        indices: s
            .probs()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(j, _)| j)
            .collect(),
    }
}

/// Checks the equilibrium conditions against every pure deviation, which
/// suffices because expected payoff is linear in the deviating strategy.
pub fn is_nash_equilibrium(g: &BimatrixGame, x: &MixedStrategy, y: &MixedStrategy) -> Result<bool> {
    if x.dim() != g.rows() || y.dim() != g.cols() {
        return Err(Error::DimensionMismatch(format!(
            "profile of dimensions ({}, {}) for a {}x{} game",
            x.dim(),
            y.dim(),
            g.rows(),
            g.cols()
        )));
    }
    let ay = g.a().mul_vec(y.probs())?;
    let row_value = dot(x.probs(), &ay);
    if ay.iter().any(|v| *v > row_value) {
        return Ok(false);
    }
    let btx = g.b().transpose().mul_vec(x.probs())?;
    let col_value = dot(y.probs(), &btx);
    Ok(btx.iter().all(|v| *v <= col_value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn strat(v: &[(i64, i64)]) -> MixedStrategy {
        MixedStrategy::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn payoff_vector_examples() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(payoff_vector(&m, &strat(&[(0, 1), (1, 1)])).unwrap(), vec![q(1, 1), q(1, 1)]);
        let id = RationalMatrix::identity(2).unwrap();
        let half = MixedStrategy::uniform(2).unwrap();
        assert_eq!(payoff_vector(&id, &half).unwrap(), vec![q(1, 2), q(1, 2)]);
        let m = RationalMatrix::from_i64(&[&[1, 2], &[0, 1]]).unwrap();
        assert_eq!(payoff_vector(&m, &half).unwrap(), vec![q(3, 2), q(1, 2)]);
        assert!(payoff_vector(&m, &MixedStrategy::uniform(3).unwrap()).is_err());
    }

    #[test]
    fn best_response_examples() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap();
        let br = best_response_set(&m, &strat(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!((br.indices, br.value), (vec![0, 1], q(1, 1)));
        let m = RationalMatrix::from_i64(&[&[1, 2], &[0, 1]]).unwrap();
        let br = best_response_set(&m, &MixedStrategy::uniform(2).unwrap()).unwrap();
        assert_eq!((br.indices, br.value), (vec![0], q(3, 2)));
        let id = RationalMatrix::identity(2).unwrap();
        let br = best_response_set(&id, &MixedStrategy::uniform(2).unwrap()).unwrap();
        assert_eq!((br.indices, br.value), (vec![0, 1], q(1, 2)));
    }

    #[test]
    fn support_examples() {
        assert_eq!(strat(&[(0, 1), (1, 1)]).support().indices, vec![1]);
        assert_eq!(strat(&[(1, 3), (0, 1), (2, 3)]).support().indices, vec![0, 2]);
        assert_eq!(MixedStrategy::uniform(5).unwrap().support().indices, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn strategy_validation() {
        assert!(MixedStrategy::new(vec![q(1, 2), q(1, 3)]).is_err());
        assert!(MixedStrategy::new(vec![q(3, 2), q(-1, 2)]).is_err());
        assert!(MixedStrategy::new(vec![]).is_err());
        assert!(MixedStrategy::pure(2, 2).is_err());
        assert!(MixedStrategy::uniform_on(2, &[3]).is_err());
    }

    #[test]
    fn nash_examples() {
        let id = RationalMatrix::identity(2).unwrap();
        let g = BimatrixGame::new(id.clone(), id).unwrap();
        let e0 = MixedStrategy::pure(2, 0).unwrap();
        let e1 = MixedStrategy::pure(2, 1).unwrap();
        let half = MixedStrategy::uniform(2).unwrap();
        assert!(is_nash_equilibrium(&g, &e0, &e0).unwrap());
        assert!(!is_nash_equilibrium(&g, &e0, &e1).unwrap());
        assert!(is_nash_equilibrium(&g, &half, &half).unwrap());
        assert!(is_nash_equilibrium(&g, &e0, &half).is_ok());
        assert!(is_nash_equilibrium(&g, &MixedStrategy::uniform(3).unwrap(), &half).is_err());
    }

    #[test]
    fn game_validation() {
        let a = RationalMatrix::identity(2).unwrap();
        let b = RationalMatrix::identity(3).unwrap();
        assert!(BimatrixGame::new(a.clone(), b).is_err());
        let g = BimatrixGame::new(a.clone(), a).unwrap();
        let labels = |v: &[&str]| Some(v.iter().map(|s| s.to_string()).collect());
        assert!(g.clone().with_labels(labels(&["x", "x"]), None).is_err());
        assert!(g.clone().with_labels(labels(&["x"]), None).is_err());
        assert!(g.clone().with_labels(None, labels(&["a b", "c"])).is_err());
        assert!(g.with_labels(labels(&["u", "d"]), labels(&["l", "r"])).is_ok());
    }
}
