//! Smith normal form over any Euclidean integer type.

use num_integer::Integer;
use num_traits::Signed;

/// `U · A · V = diag(factors)` with `U` unimodular. Only `U` and its inverse
/// are tracked since those are what class coordinates need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<I> {
    /// Diagonal entries, nonnegative, each dividing the next (zeros last).
    pub diagonal: Vec<I>,
    pub u: Vec<Vec<I>>,
    pub u_inv: Vec<Vec<I>>,
}

fn identity<I: Integer + Clone>(n: usize) -> Vec<Vec<I>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { I::one() } else { I::zero() })
                .collect()
        })
        .collect()
}

struct Work<I> {
    a: Vec<Vec<I>>,
    u: Vec<Vec<I>>,
    u_inv: Vec<Vec<I>>,
}

impl<I: Integer + Signed + Clone> Work<I> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    /// `row_i += k * row_j`.
    fn add_row(&mut self, i: usize, j: usize, k: &I) {
        for c in 0..self.a[0].len() {
            let v = self.a[j][c].clone() * k.clone();
            self.a[i][c] = self.a[i][c].clone() + v;
        }
        for c in 0..self.u.len() {
            let v = self.u[j][c].clone() * k.clone();
            self.u[i][c] = self.u[i][c].clone() + v;
        }
        for row in self.u_inv.iter_mut() {
            let v = row[i].clone() * k.clone();
            row[j] = row[j].clone() - v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[i].iter_mut() {
            *x = -x.clone();
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i].clone();
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
    }

    /// `col_i += k * col_j`.
    fn add_col(&mut self, i: usize, j: usize, k: &I) {
        for row in self.a.iter_mut() {
            let v = row[j].clone() * k.clone();
            row[i] = row[i].clone() + v;
        }
    }
}

pub fn smith_normal_form<I: Integer + Signed + Clone>(matrix: &[Vec<I>]) -> SmithForm<I> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut w = Work {
        a: matrix.to_vec(),
        u: identity(rows),
        u_inv: identity(rows),
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !w.a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.add_row(i, t, &-q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.add_col(j, t, &-q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // The pivot must divide the whole trailing block.
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&w.a[t][t])));
            match bad {
                Some(i) => w.add_row(t, i, &I::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| w.a[i][i].clone()).collect();
    SmithForm {
        diagonal,
        u: w.u,
        u_inv: w.u_inv,
    }
}
