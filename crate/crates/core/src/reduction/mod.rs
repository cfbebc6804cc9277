//! Reduction from normalized 3-SAT to deciding bimatrix game degeneracy.
//!
//! A formula is satisfiable iff [`build_game`] produces a degenerate game.

pub mod cnf;
pub mod construction;
pub mod verify;

pub use cnf::{brute_force_sat, brute_force_sat_with, parse_dimacs, Assignment, Clause, CnfFormula, Literal, DEFAULT_SAT_VAR_CAP};
pub use construction::{
    active_columns, build_game, build_game_with, conflicts, enumerate_conflict_pairs, enumerate_conflict_pairs_with, epsilon,
    induced_partial_assignment, ladder_value, pattern_under, witness_from_assignment, ClauseAssignment, ConflictPair,
    ReductionGame, PATTERNS_PER_CLAUSE,
};
pub use verify::{
    audit, audit_a, audit_b, verify_built, verify_reduction, verify_reduction_with, AuditReport, OracleStatus,
    ReductionReport, VerifyOptions, WitnessCheck,
};

/// Text block with `n`, `D`, `ε` as exact digit strings, the column labels
/// and the conflict ordering, one item per line.
pub fn metadata(rg: &ReductionGame) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "n {}", rg.n());
    let _ = writeln!(s, "D {}", rg.num_conflicts());
    let _ = writeln!(s, "epsilon_numerator {}", rg.epsilon.numer());
    let _ = writeln!(s, "epsilon_denominator {}", rg.epsilon.denom());
    let _ = writeln!(s, "rows {} cols {}", rg.game.rows(), rg.game.cols());
    for (j, label) in rg.game.col_labels().unwrap_or_default().iter().enumerate() {
        let _ = writeln!(s, "column {j} {label}");
    }
    let _ = writeln!(s, "row {} f", rg.f_row());
    for p in &rg.conflicts {
        let _ = writeln!(s, "conflict {} row {} {} {}", p.d, rg.conflict_row(p.d), p.first, p.second);
    }
    s
}
