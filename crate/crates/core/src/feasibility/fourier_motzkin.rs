//! Fourier-Motzkin elimination.
//!
//! Equalities are first used to substitute variables away (Gaussian style),
//! then the remaining inequalities are projected one variable at a time. Each
//! intermediate system is kept so a point can be recovered by assigning the
//! variables in reverse elimination order, every one from an interval that
//! is nonempty by construction. Exponential in the worst case; meant for the
//! small systems it cross-checks.

use std::collections::BTreeMap;

use super::{Domain, FeasibilityProblem, Relation};
use crate::rational::{dot, Rational};

/// `coeffs · x <= rhs`
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

/// `x[var] = constant + coeffs · x`, with `coeffs[var] == 0`.
struct Substitution {
    var: usize,
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl Substitution {
    /// Rewrites `coeffs · x (rel) rhs` with `x[var]` replaced.
    fn apply(&self, coeffs: &mut [Rational], rhs: &mut Rational) {
        let a = std::mem::take(&mut coeffs[self.var]);
        if a.is_zero() {
            return;
        }
        for (c, s) in coeffs.iter_mut().zip(&self.coeffs) {
            if !s.is_zero() {
                *c += &(&a * s);
            }
        }
        *rhs -= &(&a * &self.constant);
    }
}

enum Tidy {
    Keep(Ineq),
    Trivial,
    Contradiction,
}

/// Scales so the first nonzero coefficient has magnitude one; flags rows with
/// no variables left.
fn tidy(mut ineq: Ineq) -> Tidy {
    match ineq.coeffs.iter().find(|c| !c.is_zero()).cloned() {
        None if ineq.rhs.is_negative() => Tidy::Contradiction,
        None => Tidy::Trivial,
        Some(lead) => {
            let scale = lead.abs().recip().expect("nonzero");
            for c in ineq.coeffs.iter_mut() {
                *c *= &scale;
            }
            ineq.rhs *= &scale;
            Tidy::Keep(ineq)
        }
    }
}

/// Deduplicates by coefficient vector, keeping the tightest bound. `None`
/// signals a contradiction.
fn normalize(ineqs: impl IntoIterator<Item = Ineq>) -> Option<Vec<Ineq>> {
    let mut tightest: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    for ineq in ineqs {
        match tidy(ineq) {
            Tidy::Contradiction => return None,
            Tidy::Trivial => {}
            Tidy::Keep(Ineq { coeffs, rhs }) => {
                let slot = tightest.entry(coeffs).or_insert_with(|| rhs.clone());
                if rhs < *slot {
                    *slot = rhs;
                }
            }
        }
    }
    Some(
        tightest
            .into_iter()
            .map(|(coeffs, rhs)| Ineq { coeffs, rhs })
            .collect(),
    )
}

fn eliminate(ineqs: &[Ineq], var: usize) -> Option<Vec<Ineq>> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for ineq in ineqs {
        let c = &ineq.coeffs[var];
        if c.is_positive() {
            pos.push(ineq);
        } else if c.is_negative() {
            neg.push(ineq);
        } else {
            out.push(ineq.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            // Positive multipliers chosen so the `var` coefficients cancel.
            let mp = -&n.coeffs[var];
            let mn = p.coeffs[var].clone();
            let coeffs = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(a, b)| &(a * &mp) + &(b * &mn))
                .collect();
            let rhs = &(&p.rhs * &mp) + &(&n.rhs * &mn);
            out.push(Ineq { coeffs, rhs });
        }
    }
    normalize(out)
}

pub fn feasible_point(p: &FeasibilityProblem) -> Option<Vec<Rational>> {
    let nv = p.num_vars();
    let mut eqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for c in p.constraints() {
        match c.relation {
            Relation::Eq => eqs.push((c.coeffs.clone(), c.rhs.clone())),
            Relation::Le => ineqs.push(Ineq {
                coeffs: c.coeffs.clone(),
                rhs: c.rhs.clone(),
            }),
            Relation::Ge => ineqs.push(Ineq {
                coeffs: c.coeffs.iter().map(|v| -v).collect(),
                rhs: -&c.rhs,
            }),
        }
    }
    for (j, d) in p.domains().iter().enumerate() {
        if *d == Domain::NonNegative {
            let mut coeffs = vec![Rational::zero(); nv];
            coeffs[j] = -Rational::one();
            ineqs.push(Ineq {
                coeffs,
                rhs: Rational::zero(),
            });
        }
    }

    let mut subs: Vec<Substitution> = Vec::new();
    while let Some((coeffs, rhs)) = eqs.pop() {
        let Some(var) = coeffs.iter().position(|c| !c.is_zero()) else {
            if !rhs.is_zero() {
                return None;
            }
            continue;
        };
        let a_inv = coeffs[var].recip().expect("nonzero");
        let sub = Substitution {
            var,
            coeffs: coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k == var { Rational::zero() } else { -&(c * &a_inv) })
                .collect(),
            constant: &rhs * &a_inv,
        };
        for (c, b) in eqs.iter_mut() {
            sub.apply(c, b);
        }
        for ineq in ineqs.iter_mut() {
            sub.apply(&mut ineq.coeffs, &mut ineq.rhs);
        }
        subs.push(sub);
    }

    let substituted: Vec<bool> = (0..nv).map(|j| subs.iter().any(|s| s.var == j)).collect();
    let mut current = normalize(ineqs)?;
    let mut stages: Vec<(usize, Vec<Ineq>)> = Vec::new();
    for var in (0..nv).rev().filter(|&j| !substituted[j]) {
        let next = eliminate(&current, var)?;
        stages.push((var, std::mem::replace(&mut current, next)));
    }

    let mut x = vec![Rational::zero(); nv];
    for (var, system) in stages.iter().rev() {
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for ineq in system {
            let a = &ineq.coeffs[*var];
            if a.is_zero() {
                continue;
            }
            x[*var] = Rational::zero();
            let bound = (&ineq.rhs - &dot(&ineq.coeffs, &x)) / a;
            if a.is_positive() {
                if hi.as_ref().is_none_or(|h| bound < *h) {
                    hi = Some(bound);
                }
            } else if lo.as_ref().is_none_or(|l| bound > *l) {
                lo = Some(bound);
            }
        }
        let zero = Rational::zero();
        let zero_fits = lo.as_ref().is_none_or(|l| *l <= zero) && hi.as_ref().is_none_or(|h| zero <= *h);
        x[*var] = match (zero_fits, lo, hi) {
            (true, _, _) => zero,
            (false, Some(l), _) => l,
            (false, None, Some(h)) => h,
            (false, None, None) => unreachable!("zero always fits an unbounded interval"),
        };
    }
    for sub in subs.iter().rev() {
        x[sub.var] = &sub.constant + &dot(&sub.coeffs, &x);
    }
    Some(x)
}
