//! End-to-end checks of the reduction on a concrete formula.
//!
//! Satisfiable formulas are confirmed directly: the active-column witness is
//! verified and must have exactly `n + 1` best responses (the `n` active rows
//! and `f`). For unsatisfiable formulas the exhaustive oracle is run only if
//! the budget admits it, which it never does at default caps; instead the
//! structural invariants and the two inequalities the reverse direction rests
//! on are audited exactly.

use super::cnf::{brute_force_sat_with, Assignment, CnfFormula, DEFAULT_SAT_VAR_CAP};
use super::construction::{build_game_with, ladder_value, witness_from_assignment, ReductionGame, PATTERNS_PER_CLAUSE};
use crate::degeneracy::{check_game, Budget, Verdict};
use crate::error::Result;
use crate::rational::Rational;

use num_bigint::BigInt;

fn pow3(e: usize) -> Rational {
    Rational::from_integer(num_traits::Pow::pow(BigInt::from(3), u32::try_from(e).expect("fits")))
}

/// For every `d` in `0..D`, with `t = 3^d ε`: `(1 + 6t)(1 - 2t) > 1 + 2t`.
///
/// Writing `t = N/Q`, both sides are scaled by `Q²` and compared as integers,
/// which is exact and avoids a gcd per step.
pub fn audit_a(num_conflicts: usize, eps: &Rational) -> bool {
    if !eps.is_positive() {
        return false;
    }
    let q = eps.denom().clone();
    let mut n = eps.numer().clone();
    for _ in 0..num_conflicts {
        let lhs = (&q + &n * 6) * (&q - &n * 2);
        let rhs = &q * (&q + &n * 2);
        if lhs <= rhs {
            return false;
        }
        n *= 3;
    }
    true
}

/// With `s = 3^D ε`: `7n · 4s < 1 - 2s`.
pub fn audit_b(n: usize, num_conflicts: usize, eps: &Rational) -> bool {
    let s = pow3(num_conflicts) * eps;
    Rational::from(28 * n) * &s < Rational::one() - Rational::from(2) * &s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    /// `7n` columns and `7n + 1 + D` rows.
    pub shape: bool,
    pub identity_block: bool,
    pub f_row: bool,
    /// Each pair row has exactly its two columns set to its ladder value.
    pub conflict_rows: bool,
    /// Ladder values strictly increase and stay inside `(1/2, 1)`.
    pub ladder: bool,
    pub epsilon: bool,
    /// Every row of `B` has exactly one nonzero entry.
    pub column_side: bool,
    pub inequality_a: bool,
    pub inequality_b: bool,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.shape
            && self.identity_block
            && self.f_row
            && self.conflict_rows
            && self.ladder
            && self.epsilon
            && self.column_side
            && self.inequality_a
            && self.inequality_b
    }

    pub fn entries(&self) -> [(&'static str, bool); 9] {
        [
            ("shape", self.shape),
            ("identity block", self.identity_block),
            ("f row", self.f_row),
            ("conflict rows", self.conflict_rows),
            ("payoff ladder", self.ladder),
            ("epsilon", self.epsilon),
            ("column side one nonzero per row", self.column_side),
            ("inequality A", self.inequality_a),
            ("inequality B", self.inequality_b),
        ]
    }
}

pub fn audit(rg: &ReductionGame) -> AuditReport {
    let n = rg.n();
    let d_count = rg.num_conflicts();
    let a = rg.game.a();
    let b = rg.game.b();
    let cols = PATTERNS_PER_CLAUSE * n;
    let shape = a.cols() == cols && a.rows() == cols + 1 + d_count;
    if !shape {
        return AuditReport {
            shape,
            identity_block: false,
            f_row: false,
            conflict_rows: false,
            ladder: false,
            epsilon: false,
            column_side: false,
            inequality_a: false,
            inequality_b: false,
        };
    }
    let identity_block = (0..cols).all(|i| {
        (0..cols).all(|j| {
            let v = a.get(i, j);
            if i == j {
                *v == Rational::one()
            } else {
                v.is_zero()
            }
        })
    });
    let share = Rational::new(1, n as i64);
    let f_row = a.row(rg.f_row()).iter().all(|v| *v == share);
    let ladder_values: Vec<Rational> = (0..d_count).map(|d| ladder_value(d, &rg.epsilon)).collect();
    let conflict_rows = rg.conflicts.iter().enumerate().all(|(d, p)| {
        p.d == d
            && a.row(rg.conflict_row(d)).iter().enumerate().all(|(j, v)| {
                if j == p.first.index() || j == p.second.index() {
                    *v == ladder_values[d]
                } else {
                    v.is_zero()
                }
            })
    });
    let half = Rational::new(1, 2);
    let ladder = ladder_values.iter().all(|v| *v > half && *v < Rational::one())
        && ladder_values.windows(2).all(|w| w[0] < w[1]);
    let epsilon = rg.epsilon == super::construction::epsilon(d_count);
    let column_side = b
        .iter_rows()
        .all(|row| row.iter().filter(|v| !v.is_zero()).count() == 1);
    AuditReport {
        shape,
        identity_block,
        f_row,
        conflict_rows,
        ladder,
        epsilon,
        column_side,
        inequality_a: audit_a(d_count, &rg.epsilon),
        inequality_b: audit_b(n, d_count, &rg.epsilon),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub support: usize,
    pub best_responses: usize,
    pub value: Rational,
    pub accepted: bool,
    /// Best responses are exactly the active rows plus `f`.
    pub responders_as_predicted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleStatus {
    /// A satisfying assignment already certifies degeneracy.
    NotNeeded,
    Skipped(String),
    /// The oracle found the game nondegenerate, as the reduction predicts.
    Confirmed,
    /// The oracle contradicts the reduction.
    Contradicted(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub n: usize,
    pub num_conflicts: usize,
    pub rows: usize,
    pub cols: usize,
    pub assignment: Option<Assignment>,
    pub witness: Option<WitnessCheck>,
    pub audits: AuditReport,
    pub oracle: OracleStatus,
    pub consistent: bool,
}

impl ReductionReport {
    pub fn satisfiable(&self) -> bool {
        self.assignment.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub sat_var_cap: usize,
    pub budget: Budget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            sat_var_cap: DEFAULT_SAT_VAR_CAP,
            budget: Budget::default(),
        }
    }
}

pub fn verify_reduction(f: &CnfFormula) -> Result<ReductionReport> {
    verify_reduction_with(f, &VerifyOptions::default())
}

pub fn verify_reduction_with(f: &CnfFormula, opts: &VerifyOptions) -> Result<ReductionReport> {
    let assignment = brute_force_sat_with(f, opts.sat_var_cap, opts.budget.execution)?;
    let rg = build_game_with(f, opts.budget.execution);
    verify_built(&rg, assignment, opts)
}

/// As [`verify_reduction_with`] for an already built game and SAT result.
pub fn verify_built(rg: &ReductionGame, assignment: Option<Assignment>, opts: &VerifyOptions) -> Result<ReductionReport> {
    let n = rg.n();
    let audits = audit(rg);
    let (witness, oracle) = match &assignment {
        Some(a) => {
            let w = witness_from_assignment(rg, a)?;
            let mut predicted = rg.active_columns(a)?;
            predicted.push(rg.f_row());
            let check = WitnessCheck {
                support: w.support_size(),
                best_responses: w.best_responses.len(),
                value: w.best_responses.value.clone(),
                accepted: crate::degeneracy::verify_witness(rg.game.a(), &w.strategy)?,
                responders_as_predicted: w.best_responses.indices == predicted,
            };
            (Some(check), OracleStatus::NotNeeded)
        }
        None => {
            let oracle = match check_game(&rg.game, &opts.budget).overall {
                Verdict::Unknown(reason) => OracleStatus::Skipped(format!(
                    "full degeneracy oracle infeasible for a {}x{} game: {reason}",
                    rg.game.rows(),
                    rg.game.cols()
                )),
                Verdict::Nondegenerate => OracleStatus::Confirmed,
                Verdict::Degenerate(w) => OracleStatus::Contradicted(format!(
                    "unsatisfiable formula but {} side is degenerate",
                    w.side.as_str()
                )),
            };
            (None, oracle)
        }
    };
    let witness_ok = witness.as_ref().is_none_or(|w| {
        w.accepted && w.support == n && w.best_responses == n + 1 && w.responders_as_predicted
    });
    let consistent = audits.all_pass() && witness_ok && !matches!(oracle, OracleStatus::Contradicted(_));
    Ok(ReductionReport {
        n,
        num_conflicts: rg.num_conflicts(),
        rows: rg.game.rows(),
        cols: rg.game.cols(),
        assignment,
        witness,
        audits,
        oracle,
        consistent,
    })
}
