//! Random instance generators for tests, benchmarks and sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::game::BimatrixGame;
use crate::matrix::RationalMatrix;
use crate::rational::Rational;
use crate::reduction::{Assignment, CnfFormula, Literal};

/// Uniform normalized 3-CNF: each clause picks three distinct variables in
/// random order with random signs. Needs `num_vars >= 3`.
pub fn random_3cnf<R: Rng + ?Sized>(rng: &mut R, num_vars: usize, num_clauses: usize) -> CnfFormula {
    assert!(num_vars >= 3, "need at least three variables");
    let vars: Vec<usize> = (1..=num_vars).collect();
    let clauses = (0..num_clauses)
        .map(|_| {
            vars.choose_multiple(rng, 3)
                .map(|&var| Literal {
                    var,
                    negated: rng.gen(),
                })
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses).expect("generated clauses are normalized")
}

/// A random normalized 3-CNF satisfied by a hidden random assignment, which
/// is returned alongside it.
pub fn random_satisfiable_3cnf<R: Rng + ?Sized>(
    rng: &mut R,
    num_vars: usize,
    num_clauses: usize,
) -> (CnfFormula, Assignment) {
    let hidden = Assignment((0..num_vars).map(|_| rng.gen()).collect());
    let vars: Vec<usize> = (1..=num_vars).collect();
    let clauses = (0..num_clauses)
        .map(|_| loop {
            let clause: Vec<Literal> = vars
                .choose_multiple(rng, 3)
                .map(|&var| Literal {
                    var,
                    negated: rng.gen(),
                })
                .collect();
            if clause.iter().any(|l| l.is_true_under(&hidden)) {
                break clause;
            }
        })
        .collect();
    (
        CnfFormula::new(num_vars, clauses).expect("generated clauses are normalized"),
        hidden,
    )
}

/// Entries `p/q` with `p` in `-range..=range` and `q` in `1..=max_denom`.
pub fn random_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    range: i64,
    max_denom: i64,
) -> RationalMatrix {
    let entries = (0..rows * cols)
        .map(|_| Rational::new(rng.gen_range(-range..=range), rng.gen_range(1..=max_denom)))
        .collect();
    RationalMatrix::new(rows, cols, entries).expect("positive dimensions")
}

pub fn random_game<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, range: i64, max_denom: i64) -> BimatrixGame {
    let a = random_matrix(rng, rows, cols, range, max_denom);
    let b = random_matrix(rng, rows, cols, range, max_denom);
    BimatrixGame::new(a, b).expect("same shape")
}

/// A random game where some column of `A` attains its maximum in two rows.
/// Returns the game and the planted column.
pub fn planted_tie_game<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> (BimatrixGame, usize) {
    assert!(rows >= 2);
    let g = random_game(rng, rows, cols, 9, 4);
    let mut a = g.a().clone();
    let col = rng.gen_range(0..cols);
    let picked: Vec<usize> = (0..rows).collect::<Vec<_>>().choose_multiple(rng, 2).copied().collect();
    let top = (0..rows)
        .map(|i| a.get(i, col).clone())
        .max()
        .expect("nonempty")
        + Rational::new(rng.gen_range(0..=3), rng.gen_range(1..=3));
    for i in picked {
        a.set(i, col, top.clone());
    }
    (BimatrixGame::new(a, g.b().clone()).expect("same shape"), col)
}

/// Win-lose matrix with exactly one 1 in every column.
pub fn one_per_column<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(rows, cols).expect("positive dimensions");
    for j in 0..cols {
        m.set(rng.gen_range(0..rows), j, Rational::one());
    }
    m
}

/// Win-lose game: one 1 per column of `A` and one 1 per row of `B`.
pub fn one_nonzero_winlose_game<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> BimatrixGame {
    let a = one_per_column(rng, rows, cols);
    let b = one_per_column(rng, cols, rows).transpose();
    BimatrixGame::new(a, b).expect("same shape")
}

/// The `index`-th `rows x cols` win-lose matrix, reading `index` in binary
/// row-major with the first entry least significant.
pub fn winlose_matrix(rows: usize, cols: usize, index: u64) -> RationalMatrix {
    let entries = (0..rows * cols)
        .map(|p| Rational::from(((index >> p) & 1) as i64))
        .collect();
    RationalMatrix::new(rows, cols, entries).expect("positive dimensions")
}
