//! Exact feasibility of systems of closed linear constraints.
//!
//! Two independent decision procedures are provided and are expected to agree
//! on every input: a phase-one simplex with Bland's rule ([`simplex`]) and
//! Fourier-Motzkin elimination with back-substitution ([`fourier_motzkin`]).
//! Both return an exact witness point when the system is feasible.

pub mod fourier_motzkin;
pub mod simplex;

use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs · x  relation  rhs`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Free,
    NonNegative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityProblem {
    domains: Vec<Domain>,
    constraints: Vec<Constraint>,
}

impl FeasibilityProblem {
    pub fn new(domains: Vec<Domain>, constraints: Vec<Constraint>) -> Result<Self> {
        let n = domains.len();
        if let Some(i) = constraints.iter().position(|c| c.coeffs.len() != n) {
            return Err(Error::MalformedConstraint(format!(
                "constraint {i} has {} coefficients for {n} variables",
                constraints[i].coeffs.len()
            )));
        }
        Ok(FeasibilityProblem {
            domains,
            constraints,
        })
    }

    /// Problem over `num_vars` nonnegative variables.
    pub fn nonnegative(num_vars: usize, constraints: Vec<Constraint>) -> Result<Self> {
        Self::new(vec![Domain::NonNegative; num_vars], constraints)
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self
                .domains
                .iter()
                .zip(x)
                .all(|(d, v)| *d == Domain::Free || !v.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Method {
    #[default]
    Simplex,
    FourierMotzkin,
}

impl Method {
    pub fn solve(self, p: &FeasibilityProblem) -> Option<Vec<Rational>> {
        match self {
            Method::Simplex => simplex::feasible_point(p),
            Method::FourierMotzkin => fourier_motzkin::feasible_point(p),
        }
    }
}

/// An exact feasible point, or `None` when the system is infeasible.
pub fn feasible(p: &FeasibilityProblem) -> Option<Vec<Rational>> {
    Method::default().solve(p)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    pub(crate) fn row(c: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint::new(c.iter().map(|&v| q(v)).collect(), rel, q(rhs))
    }

    pub(crate) fn both(p: &FeasibilityProblem) -> (Option<Vec<Rational>>, Option<Vec<Rational>>) {
        let s = Method::Simplex.solve(p);
        let f = Method::FourierMotzkin.solve(p);
        for x in s.iter().chain(f.iter()) {
            assert!(p.is_satisfied_by(x), "{x:?} does not satisfy {p:?}");
        }
        (s, f)
    }

    #[test]
    fn simplex_sum_to_one() {
        let p = FeasibilityProblem::nonnegative(2, vec![row(&[1, 1], Relation::Eq, 1)]).unwrap();
        let (s, f) = both(&p);
        assert!(s.is_some() && f.is_some());
    }

    #[test]
    fn contradictory_bounds() {
        let p = FeasibilityProblem::new(
            vec![Domain::Free],
            vec![row(&[1], Relation::Eq, 1), row(&[1], Relation::Le, 0)],
        )
        .unwrap();
        assert_eq!(both(&p), (None, None));
    }

    #[test]
    fn free_variables_can_go_negative() {
        let p = FeasibilityProblem::new(
            vec![Domain::Free, Domain::NonNegative],
            vec![row(&[1, 1], Relation::Le, -3), row(&[0, 1], Relation::Ge, 2)],
        )
        .unwrap();
        let (s, f) = both(&p);
        assert!(s.unwrap()[0] <= q(-5) && f.unwrap()[0] <= q(-5));
    }

    #[test]
    fn redundant_and_degenerate_rows() {
        // Duplicated equality and a zero row must not confuse either method.
        let p = FeasibilityProblem::nonnegative(
            3,
            vec![
                row(&[1, 1, 1], Relation::Eq, 1),
                row(&[2, 2, 2], Relation::Eq, 2),
                row(&[0, 0, 0], Relation::Le, 0),
                row(&[1, -1, 0], Relation::Eq, 0),
                row(&[0, 1, -1], Relation::Ge, 0),
            ],
        )
        .unwrap();
        let (s, f) = both(&p);
        assert!(s.is_some() && f.is_some());
        let p = FeasibilityProblem::nonnegative(1, vec![row(&[0], Relation::Ge, 1)]).unwrap();
        assert_eq!(both(&p), (None, None));
    }

    #[test]
    fn no_constraints() {
        let p = FeasibilityProblem::new(vec![Domain::Free; 2], vec![]).unwrap();
        let (s, f) = both(&p);
        assert_eq!(s.unwrap().len(), 2);
        assert_eq!(f.unwrap().len(), 2);
    }

    #[test]
    fn malformed_constraint() {
        assert!(matches!(
            FeasibilityProblem::nonnegative(2, vec![row(&[1], Relation::Eq, 1)]),
            Err(Error::MalformedConstraint(_))
        ));
    }
}
