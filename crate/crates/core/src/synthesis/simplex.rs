//! Dense primal simplex on a dictionary (Jordan exchange) tableau.
//!
//! Solves `max c·y` subject to `A y <= b`, `y >= 0` with `b >= 0`, so the
//! slack basis is feasible and no phase one is needed. Entering and leaving
//! variables follow Bland's rule (smallest label), which rules out cycling
//! and makes the pivot path a pure function of the input.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-11;

#[derive(Clone, Debug, Default)]
pub struct DenseLp {
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
}

impl DenseLp {
    pub fn new(objective: Vec<f64>) -> Self {
        Self {
            objective,
            ..Self::default()
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>, rhs: f64) {
        debug_assert_eq!(row.len(), self.objective.len());
        self.rows.push(row);
        self.rhs.push(rhs);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub y: Vec<f64>,
    pub value: f64,
    pub pivots: usize,
}

pub fn solve(lp: &DenseLp) -> Result<LpSolution> {
    let n = lp.objective.len();
    let m = lp.rows.len();
    if lp.rhs.iter().any(|&b| b < 0.0) {
        return Err(Error::Lp("negative right-hand side"));
    }
    // basic_i = b_i - Σ_j a_ij · nonbasic_j ;  z = z0 + Σ_j d_j · nonbasic_j
    let mut a: Vec<Vec<f64>> = lp.rows.clone();
    let mut b = lp.rhs.clone();
    let mut d = lp.objective.clone();
    let mut z0 = 0.0;
    let mut col_label: Vec<usize> = (0..n).collect();
    let mut row_label: Vec<usize> = (n..n + m).collect();

    let max_pivots = 50 * (n + m) + 100;
    let mut pivots = 0;
    loop {
        let entering = (0..n)
            .filter(|&j| d[j] > COST_EPS)
            .min_by_key(|&j| col_label[j]);
        let Some(k) = entering else { break };

        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if a[i][k] <= PIVOT_EPS {
                continue;
            }
            let ratio = b[i] / a[i][k];
            leave = match leave {
                None => Some((i, ratio)),
                Some((r, best)) => {
                    let tie = (ratio - best).abs() <= 1e-12 * best.abs().max(1.0);
                    if (tie && row_label[i] < row_label[r]) || (!tie && ratio < best) {
                        Some((i, ratio))
                    } else {
                        Some((r, best))
                    }
                }
            };
        }
        let Some((r, _)) = leave else {
            return Err(Error::Lp("unbounded"));
        };

        pivot(&mut a, &mut b, &mut d, &mut z0, r, k);
        std::mem::swap(&mut col_label[k], &mut row_label[r]);
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::Lp("pivot limit"));
        }
    }

    let mut y = vec![0.0; n];
    for (i, &label) in row_label.iter().enumerate() {
        if label < n {
            y[label] = b[i];
        }
    }
    Ok(LpSolution {
        y,
        value: z0,
        pivots,
    })
}

fn pivot(a: &mut [Vec<f64>], b: &mut [f64], d: &mut [f64], z0: &mut f64, r: usize, k: usize) {
    let n = d.len();
    let piv = a[r][k];
    for j in 0..n {
        if j != k {
            a[r][j] /= piv;
        }
    }
    a[r][k] = 1.0 / piv;
    b[r] /= piv;
    let pivot_row = a[r].clone();
    let br = b[r];
    for (i, row) in a.iter_mut().enumerate() {
        if i == r {
            continue;
        }
        let f = row[k];
        if f == 0.0 {
            continue;
        }
        for j in 0..n {
            if j != k {
                row[j] -= f * pivot_row[j];
            }
        }
        row[k] = -f * pivot_row[k];
        b[i] -= f * br;
        if b[i] < 0.0 && b[i] > -1e-12 {
            b[i] = 0.0;
        }
    }
    let f = d[k];
    for j in 0..n {
        if j != k {
            d[j] -= f * pivot_row[j];
        }
    }
    d[k] = -f * pivot_row[k];
    *z0 += f * br;
}
