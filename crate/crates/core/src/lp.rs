//! Dense two-phase simplex over exact rationals.
//!
//! Problems are given in standard form: minimize `c·x` subject to `A x = b`,
//! `x >= 0`. Pivoting follows Bland's rule, so the method terminates on
//! degenerate problems without any perturbation.

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, x: Vec<Rat> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `rows[i]` holds the constraint row followed by its right-hand side.
    rows: Vec<Vec<Rat>>,
    /// Basic variable of each row.
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        if !p.is_one() {
            for v in self.rows[row].iter_mut() {
                if !v.is_zero() {
                    *v = &*v / &p;
                }
            }
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &(&factor * pv);
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs `c_j - c_B B^-1 A_j` for the current basis, restricted to
    /// columns in `allowed`.
    fn reduced_costs(&self, cost: &[Rat], allowed: &[bool]) -> Vec<Option<Rat>> {
        (0..self.cols)
            .map(|j| {
                if !allowed[j] {
                    return None;
                }
                let mut rc = cost[j].clone();
                for (i, r) in self.rows.iter().enumerate() {
                    let cb = &cost[self.basis[i]];
                    if !cb.is_zero() && !r[j].is_zero() {
                        rc = &rc - &(cb * &r[j]);
                    }
                }
                Some(rc)
            })
            .collect()
    }

    /// Runs Bland-rule simplex iterations. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rat], allowed: &[bool]) -> bool {
        loop {
            let rc = self.reduced_costs(cost, allowed);
            let entering = rc
                .iter()
                .position(|r| r.as_ref().is_some_and(Rat::is_negative));
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn objective(&self, cost: &[Rat]) -> Rat {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * self.rhs(i))
            .sum()
    }
}

/// Minimizes `c·x` subject to `a x = b`, `x >= 0`.
///
/// Panics if the row lengths of `a` disagree with `c` or `b`.
pub fn minimize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    assert!(a.iter().all(|r| r.len() == n), "column count mismatch");

    // Columns: n structural, then m artificials.
    let cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r: Vec<Rat> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        r.push(if flip { -rhs } else { rhs.clone() });
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        cols,
    };

    let phase1_cost: Vec<Rat> = (0..cols)
        .map(|j| if j >= n { Rat::one() } else { Rat::zero() })
        .collect();
    let all = vec![true; cols];
    t.optimize(&phase1_cost, &all);
    if !t.objective(&phase1_cost).is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are redundant and get dropped.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| Rat::zero()));
    let structural: Vec<bool> = (0..cols).map(|j| j < n).collect();
    if !t.optimize(&cost, &structural) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rhs(i).clone();
        }
    }
    LpOutcome::Optimal {
        value: t.objective(&cost),
        x,
    }
}

/// True iff `{x >= 0 : a x = b}` is nonempty.
pub fn feasible(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    !matches!(minimize(&vec![Rat::zero(); n], a, b), LpOutcome::Infeasible)
}
