//! Degeneracy of linear systems `Ax = b, x >= 0` by basis enumeration.
//!
//! The system is degenerate when some basis (an invertible `m x m` column
//! subset of `A`) gives a basic solution with a zero component. Every
//! `m`-subset is tried in lexicographic order; singular ones are skipped.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::par::{self, Execution};
use crate::rational::Rational;

pub const DEFAULT_MAX_COLS: usize = 20;

/// A full-row-rank system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    a: RationalMatrix,
    b: Vec<Rational>,
}

impl LinearSystem {
    pub fn new(a: RationalMatrix, b: Vec<Rational>) -> Result<Self> {
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch(format!(
                "b has {} entries for {} rows",
                b.len(),
                a.rows()
            )));
        }
        let rank = a.rank();
        if rank < a.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: a.rows(),
            });
        }
        Ok(LinearSystem { a, b })
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCertificate {
    /// Basis columns of `A`, increasing.
    pub columns: Vec<usize>,
    /// `B⁻¹b`, aligned with `columns`.
    pub solution: Vec<Rational>,
    /// Positions into `columns` / `solution` holding zero.
    pub zero_positions: Vec<usize>,
}

impl BasisCertificate {
    /// Re-checks the certificate against `system`: the basis is invertible,
    /// the solution solves it exactly and has a zero component.
    pub fn is_valid_for(&self, system: &LinearSystem) -> bool {
        let Ok(basis) = system.a.select_columns(&self.columns) else {
            return false;
        };
        basis.rank() == basis.rows()
            && basis.mul_vec(&self.solution).is_ok_and(|v| v == system.b)
            && !self.zero_positions.is_empty()
            && self.zero_positions.iter().all(|&p| self.solution[p].is_zero())
    }

    /// Expresses `b` through the basis columns minus the first zero position:
    /// returns those columns and their coefficients, after checking the
    /// combination reproduces `b` exactly.
    pub fn reduced_combination(&self, system: &LinearSystem) -> Option<(Vec<usize>, Vec<Rational>)> {
        let drop = *self.zero_positions.first()?;
        let (cols, coeffs): (Vec<usize>, Vec<Rational>) = self
            .columns
            .iter()
            .zip(&self.solution)
            .enumerate()
            .filter(|&(p, _)| p != drop)
            .map(|(_, (&c, v))| (c, v.clone()))
            .unzip();
        let mut acc = vec![Rational::zero(); system.a.rows()];
        for (&c, v) in cols.iter().zip(&coeffs) {
            for (i, slot) in acc.iter_mut().enumerate() {
                *slot += &(system.a.get(i, c) * v);
            }
        }
        (acc == system.b).then_some((cols, coeffs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpVerdict {
    pub degenerate: bool,
    pub certificate: Option<BasisCertificate>,
    /// Number of `m`-column subsets enumerated.
    pub subsets: u128,
}

pub fn rank(a: &RationalMatrix) -> usize {
    a.rank()
}

fn certificate_for(system: &LinearSystem, columns: &[usize]) -> Option<BasisCertificate> {
    let basis = system.a.select_columns(columns).expect("columns in range");
    let solution = basis.solve(&system.b).expect("square")?;
    let zero_positions: Vec<usize> = solution
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_zero())
        .map(|(p, _)| p)
        .collect();
    (!zero_positions.is_empty()).then(|| BasisCertificate {
        columns: columns.to_vec(),
        solution,
        zero_positions,
    })
}

pub fn is_lp_degenerate(system: &LinearSystem) -> Result<LpVerdict> {
    is_lp_degenerate_with(system, DEFAULT_MAX_COLS, Execution::default())
}

pub fn is_lp_degenerate_with(system: &LinearSystem, max_cols: usize, exec: Execution) -> Result<LpVerdict> {
    let (m, n) = (system.a.rows(), system.a.cols());
    if n > max_cols {
        return Err(Error::CapExceeded {
            what: "column count",
            value: n,
            cap: max_cols,
        });
    }
    let subsets: Vec<Vec<usize>> = (0..n).combinations(m).collect();
    let certificate = par::find_map_first(&subsets, exec, |cols| certificate_for(system, cols));
    Ok(LpVerdict {
        degenerate: certificate.is_some(),
        certificate,
        subsets: subsets.len() as u128,
    })
}
