//! Phase-one simplex for systems `A x >= b` with free variables.
//!
//! Bland's rule keeps the pivoting finite. When the system is infeasible the
//! final phase-one multipliers give a Farkas certificate `y >= 0` with
//! `yᵀA = 0` and `yᵀb > 0`.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<S> {
    /// A point satisfying every inequality.
    Feasible(Vec<S>),
    /// Nonnegative row multipliers combining to `0 >= positive`.
    Infeasible(Vec<S>),
}

impl<S> LpOutcome<S> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }
}

pub fn feasible_geq<S: Scalar>(a: &[Vec<S>], b: &[S]) -> LpOutcome<S> {
    let rows = a.len();
    let k = a.first().map_or(0, Vec::len);
    if rows == 0 {
        return LpOutcome::Feasible(vec![S::zero(); k]);
    }
    // Columns: x+ (k), x- (k), surplus (rows), artificial (rows), rhs.
    let surplus = 2 * k;
    let artificial = surplus + rows;
    let width = artificial + rows + 1;
    let mut flip = vec![S::one(); rows];
    let mut t = vec![vec![S::zero(); width]; rows];
    for i in 0..rows {
        if b[i].is_negative() && !b[i].near_zero() {
            flip[i] = -S::one();
        }
        for j in 0..k {
            t[i][j] = flip[i].clone() * a[i][j].clone();
            t[i][k + j] = -t[i][j].clone();
        }
        t[i][surplus + i] = -flip[i].clone();
        t[i][artificial + i] = S::one();
        t[i][width - 1] = flip[i].clone() * b[i].clone();
    }
    let mut basis: Vec<usize> = (artificial..artificial + rows).collect();
    let cost = |j: usize| {
        if j >= artificial && j < artificial + rows {
            S::one()
        } else {
            S::zero()
        }
    };

    loop {
        let reduced: Vec<S> = (0..width - 1)
            .map(|j| {
                let mut r = cost(j);
                for i in 0..rows {
                    r = r - cost(basis[i]) * t[i][j].clone();
                }
                r
            })
            .collect();
        let Some(enter) =
            (0..width - 1).find(|&j| reduced[j].is_negative() && !reduced[j].near_zero())
        else {
            let objective = basis
                .iter()
                .enumerate()
                .filter(|(_, &bj)| bj >= artificial)
                .fold(S::zero(), |acc, (i, _)| acc + t[i][width - 1].clone());
            if objective.near_zero() {
                let mut x = vec![S::zero(); k];
                for (i, &bj) in basis.iter().enumerate() {
                    if bj < k {
                        x[bj] = x[bj].clone() + t[i][width - 1].clone();
                    } else if bj < 2 * k {
                        x[bj - k] = x[bj - k].clone() - t[i][width - 1].clone();
                    }
                }
                return LpOutcome::Feasible(x);
            }
            let y = (0..rows)
                .map(|i| flip[i].clone() * (S::one() - reduced[artificial + i].clone()))
                .collect();
            return LpOutcome::Infeasible(y);
        };
        let mut leave: Option<usize> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() && !t[i][enter].near_zero() {
                let ratio = t[i][width - 1].clone() / t[i][enter].clone();
                leave = match leave {
                    None => Some(i),
                    Some(l) => {
                        let best = t[l][width - 1].clone() / t[l][enter].clone();
                        let diff = ratio.clone() - best;
                        if (diff.is_negative() && !diff.near_zero())
                            || (diff.near_zero() && basis[i] < basis[l])
                        {
                            Some(i)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
        }
        // Phase one is bounded below by zero, so a ratio row always exists.
        let leave = leave.expect("phase-one objective is bounded");
        let p = t[leave][enter].clone();
        for j in 0..width {
            t[leave][j] = t[leave][j].clone() / p.clone();
        }
        for i in 0..rows {
            if i != leave && !t[i][enter].near_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    let delta = f.clone() * t[leave][j].clone();
                    t[i][j] = t[i][j].clone() - delta;
                }
            }
        }
        basis[leave] = enter;
    }
}
