//! Exact degeneracy decisions for bimatrix games and linear systems.
//!
//! * [`game`]: games, mixed strategies, payoff vectors, best responses and
//!   equilibrium checks, all in exact rational arithmetic ([`Rational`]).
//! * [`degeneracy`]: witness verification, the exhaustive support/tie oracle,
//!   and the win-lose characterizations.
//! * [`feasibility`]: two independent exact linear feasibility procedures.
//! * [`lpcheck`]: degeneracy of `Ax = b, x >= 0` by basis enumeration.
//! * [`reduction`]: the 3-SAT to degeneracy reduction and its verifier.
//! * [`gameio`]: the text formats.
//!
//! Parallel loops run on rayon with the default `parallel` feature and fall
//! back to sequential loops without it; results are identical either way.

pub mod degeneracy;
pub mod error;
pub mod feasibility;
pub mod game;
pub mod gameio;
pub mod instances;
pub mod lpcheck;
pub mod matrix;
pub mod par;
pub mod rational;
pub mod reduction;

pub use degeneracy::{
    check_game, check_one_sided, check_side, verify_witness, winlose_nondegenerate_corrected,
    winlose_nondegenerate_paper, Budget, DegeneracyWitness, GameVerdict, Side, Verdict,
};
pub use error::{Error, Result};
pub use game::{best_response_set, is_nash_equilibrium, payoff_vector, support_of, BestResponseSet, BimatrixGame, MixedStrategy, SupportSet};
pub use lpcheck::{is_lp_degenerate, BasisCertificate, LinearSystem};
pub use matrix::RationalMatrix;
pub use par::Execution;
pub use rational::Rational;
