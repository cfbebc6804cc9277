//! Phase-one simplex over the rationals.
//!
//! The system is brought into standard form `T x = b, x >= 0, b >= 0` by
//! splitting free variables and adding one slack per inequality. Rows whose
//! slack already has coefficient `+1` start with the slack basic; every other
//! row gets an artificial variable. The sum of artificials is then minimized
//! with Bland's smallest-index rule, which cannot cycle, so the procedure
//! always terminates. Artificial columns never re-enter the basis.

use super::{Domain, FeasibilityProblem, Relation};
use crate::rational::Rational;

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs of the phase-one objective, one per column.
    cost: Vec<Rational>,
    /// Minus the current sum of artificials.
    value: Rational,
    first_artificial: usize,
}

impl Tableau {
    fn entering(&self) -> Option<usize> {
        (0..self.first_artificial).find(|&j| self.cost[j].is_negative())
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / &row[col];
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip().expect("positive pivot");
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        let eliminate = |row: &mut [Rational], rhs: &mut Rational| {
            let factor = row[c].clone();
            if factor.is_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&factor * pv);
                }
            }
            *rhs -= &(&factor * &pivot_rhs);
        };
        for i in 0..self.rows.len() {
            if i != r {
                let (row, rhs) = (&mut self.rows[i], &mut self.rhs[i]);
                eliminate(row, rhs);
            }
        }
        eliminate(&mut self.cost, &mut self.value);
        self.basis[r] = c;
    }
}

pub fn feasible_point(p: &FeasibilityProblem) -> Option<Vec<Rational>> {
    // Structural column layout: one column per nonnegative variable, two
    // (positive part, negative part) per free variable.
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(p.num_vars());
    let mut ncols = 0;
    for d in p.domains() {
        match d {
            Domain::NonNegative => {
                var_cols.push((ncols, None));
                ncols += 1;
            }
            Domain::Free => {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
    }
    let structural = ncols;
    let slack_of: Vec<Option<usize>> = p
        .constraints()
        .iter()
        .map(|c| {
            (c.relation != Relation::Eq).then(|| {
                ncols += 1;
                ncols - 1
            })
        })
        .collect();
    let slack_end = ncols;
    let m = p.constraints().len();

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut slack_basic = Vec::with_capacity(m);
    for (c, slack) in p.constraints().iter().zip(&slack_of) {
        let mut row = vec![Rational::zero(); slack_end];
        for (a, &(pos, neg)) in c.coeffs.iter().zip(&var_cols) {
            if a.is_zero() {
                continue;
            }
            row[pos] = a.clone();
            if let Some(neg) = neg {
                row[neg] = -a;
            }
        }
        if let Some(s) = *slack {
            row[s] = match c.relation {
                Relation::Le => Rational::one(),
                _ => -Rational::one(),
            };
        }
        let mut b = c.rhs.clone();
        let negate = b.is_negative() || (b.is_zero() && slack.is_some_and(|s| row[s].is_negative()));
        if negate {
            row.iter_mut().for_each(|v| *v = -&*v);
            b = -b;
        }
        slack_basic.push(slack.filter(|&s| row[s].is_positive()));
        rows.push(row);
        rhs.push(b);
    }

    let artificial_rows: Vec<usize> = (0..m).filter(|&i| slack_basic[i].is_none()).collect();
    let total = slack_end + artificial_rows.len();
    let mut basis = vec![0; m];
    for (i, row) in rows.iter_mut().enumerate() {
        row.resize(total, Rational::zero());
        if let Some(s) = slack_basic[i] {
            basis[i] = s;
        }
    }
    for (k, &i) in artificial_rows.iter().enumerate() {
        rows[i][slack_end + k] = Rational::one();
        basis[i] = slack_end + k;
    }

    let mut cost = vec![Rational::zero(); total];
    let mut value = Rational::zero();
    for &i in &artificial_rows {
        for (cj, v) in cost.iter_mut().zip(&rows[i]).take(slack_end) {
            if !v.is_zero() {
                *cj -= v;
            }
        }
        value -= &rhs[i];
    }

    let mut t = Tableau {
        rows,
        rhs,
        basis,
        cost,
        value,
        first_artificial: slack_end,
    };
    while let Some(col) = t.entering() {
        // The phase-one objective is bounded below by zero, so a column with
        // negative reduced cost always has a positive entry in some row.
        let row = t.leaving(col).expect("phase one is bounded");
        t.pivot(row, col);
    }
    if !t.value.is_zero() {
        return None;
    }

    let mut x = vec![Rational::zero(); structural];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < structural {
            x[b] = t.rhs[i].clone();
        }
    }
    Some(
        var_cols
            .iter()
            .map(|&(pos, neg)| match neg {
                None => x[pos].clone(),
                Some(neg) => &x[pos] - &x[neg],
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::super::tests::row;
    use super::*;
    use crate::feasibility::FeasibilityProblem;

    #[test]
    fn finds_vertex() {
        // y0 + y1 = 1, y0 - y1 >= 1/2 style system scaled to integers.
        let p = FeasibilityProblem::nonnegative(
            2,
            vec![row(&[1, 1], Relation::Eq, 1), row(&[2, -2], Relation::Ge, 1)],
        )
        .unwrap();
        let x = feasible_point(&p).unwrap();
        assert!(p.is_satisfied_by(&x));
    }

    #[test]
    fn classic_cycling_example_terminates() {
        // Beale's example constraints; degenerate at the origin.
        let c = |v: &[(i64, i64)], rel, rhs| {
            crate::feasibility::Constraint::new(
                v.iter().map(|&(n, d)| Rational::new(n, d)).collect(),
                rel,
                Rational::from(rhs),
            )
        };
        let p = FeasibilityProblem::nonnegative(
            4,
            vec![
                c(&[(1, 4), (-8, 1), (-1, 1), (9, 1)], Relation::Le, 0),
                c(&[(1, 2), (-12, 1), (-1, 2), (3, 1)], Relation::Le, 0),
                c(&[(0, 1), (0, 1), (1, 1), (0, 1)], Relation::Le, 1),
                c(&[(3, 4), (-20, 1), (1, 2), (-6, 1)], Relation::Ge, 1),
            ],
        )
        .unwrap();
        let x = feasible_point(&p);
        assert_eq!(x.is_some(), super::super::fourier_motzkin::feasible_point(&p).is_some());
        assert!(x.is_none_or(|x| p.is_satisfied_by(&x)));
    }
}
