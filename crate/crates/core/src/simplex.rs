//! Exact feasibility for systems `A x <= b, x >= 0` over the rationals.
//!
//! Phase one of the dictionary simplex method with an auxiliary variable and
//! Bland's rule, so it terminates on degenerate systems. All arithmetic is on
//! arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// One row `sum coeffs[j] * x[j] <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

impl Inequality {
    pub fn new(coeffs: Vec<i64>, rhs: i64) -> Self {
        Inequality { coeffs, rhs }
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        self.slack(x) >= BigRational::zero()
    }

    /// `rhs - lhs(x)`; negative when violated.
    pub fn slack(&self, x: &[BigRational]) -> BigRational {
        let mut lhs = BigRational::zero();
        for (c, v) in self.coeffs.iter().zip(x) {
            if *c != 0 {
                lhs += v * BigRational::from_integer(BigInt::from(*c));
            }
        }
        BigRational::from_integer(BigInt::from(self.rhs)) - lhs
    }
}

struct Dictionary {
    /// Variable index of the basic variable in each row.
    basic: Vec<usize>,
    /// Variable index sitting in each nonbasic column.
    nonbasic: Vec<usize>,
    constant: Vec<BigRational>,
    coef: Vec<Vec<BigRational>>,
    obj_constant: BigRational,
    obj_coef: Vec<BigRational>,
}

impl Dictionary {
    fn pivot(&mut self, row: usize, col: usize) {
        let a = self.coef[row][col].clone();
        debug_assert!(!a.is_zero());
        let inv = a.recip();
        let width = self.nonbasic.len();

        // Solve the pivot row for the entering variable.
        let mut new_row = Vec::with_capacity(width);
        for k in 0..width {
            if k == col {
                new_row.push(inv.clone());
            } else {
                new_row.push(-(&self.coef[row][k]) * &inv);
            }
        }
        let new_const = -(&self.constant[row]) * &inv;

        for i in 0..self.basic.len() {
            if i == row {
                continue;
            }
            let f = self.coef[i][col].clone();
            if f.is_zero() {
                continue;
            }
            self.constant[i] += &f * &new_const;
            for k in 0..width {
                if k == col {
                    self.coef[i][k] = &f * &new_row[k];
                } else if !new_row[k].is_zero() {
                    let delta = &f * &new_row[k];
                    self.coef[i][k] += delta;
                }
            }
        }
        let f = self.obj_coef[col].clone();
        if !f.is_zero() {
            self.obj_constant += &f * &new_const;
            for k in 0..width {
                if k == col {
                    self.obj_coef[k] = &f * &new_row[k];
                } else if !new_row[k].is_zero() {
                    let delta = &f * &new_row[k];
                    self.obj_coef[k] += delta;
                }
            }
        }

        self.coef[row] = new_row;
        self.constant[row] = new_const;
        std::mem::swap(&mut self.basic[row], &mut self.nonbasic[col]);
    }
}

/// Finds some `x >= 0` satisfying every row, or `None` when none exists.
pub fn feasible_point(num_vars: usize, rows: &[Inequality]) -> Option<Vec<BigRational>> {
    debug_assert!(rows.iter().all(|r| r.coeffs.len() == num_vars));
    let m = rows.len();
    let Some((worst, _)) = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.rhs < 0)
        .min_by_key(|(_, r)| r.rhs)
    else {
        return Some(vec![BigRational::zero(); num_vars]);
    };

    // Variables: 0..num_vars original, then one slack per row, then x0.
    let aux = num_vars + m;
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut dict = Dictionary {
        basic: (num_vars..num_vars + m).collect(),
        nonbasic: (0..num_vars).chain(std::iter::once(aux)).collect(),
        constant: rows.iter().map(|r| int(r.rhs)).collect(),
        coef: rows
            .iter()
            .map(|r| {
                r.coeffs
                    .iter()
                    .map(|&c| int(-c))
                    .chain(std::iter::once(BigRational::one()))
                    .collect()
            })
            .collect(),
        obj_constant: BigRational::zero(),
        obj_coef: std::iter::repeat_with(BigRational::zero)
            .take(num_vars)
            .chain(std::iter::once(-BigRational::one()))
            .collect(),
    };

    // Bring x0 in on the most violated row; the dictionary becomes feasible.
    dict.pivot(worst, num_vars);

    loop {
        let entering = (0..dict.nonbasic.len())
            .filter(|&c| dict.obj_coef[c].is_positive())
            .min_by_key(|&c| dict.nonbasic[c]);
        let Some(col) = entering else { break };

        let mut leaving: Option<(usize, BigRational)> = None;
        for r in 0..m {
            let a = &dict.coef[r][col];
            if !a.is_negative() {
                continue;
            }
            let ratio = &dict.constant[r] / -a;
            let better = match &leaving {
                None => true,
                Some((best, best_ratio)) => {
                    ratio < *best_ratio
                        || (ratio == *best_ratio && dict.basic[r] < dict.basic[*best])
                }
            };
            if better {
                leaving = Some((r, ratio));
            }
        }
        // The auxiliary objective is bounded above by zero.
        let (row, _) = leaving.expect("phase-one objective is bounded");
        dict.pivot(row, col);
    }

    if dict.obj_constant.is_negative() {
        return None;
    }
    let mut x = vec![BigRational::zero(); num_vars];
    for (r, &b) in dict.basic.iter().enumerate() {
        if b < num_vars {
            x[b] = dict.constant[r].clone();
        }
    }
    Some(x)
}

/// Feasibility with lazily added rows.
///
/// `fixed` rows are always present; rows of `lazy` enter only once violated
/// by the current point. Infeasibility of any subsystem is final, so the
/// verdict is exact.
pub fn feasible_point_lazy(
    num_vars: usize,
    fixed: &[Inequality],
    lazy: &[Inequality],
) -> Option<Vec<BigRational>> {
    const BATCH: usize = 24;
    let mut rows: Vec<Inequality> = fixed.to_vec();
    let mut active = vec![false; lazy.len()];
    loop {
        let x = feasible_point(num_vars, &rows)?;
        let mut violated: Vec<(BigRational, usize)> = lazy
            .iter()
            .enumerate()
            .filter(|(i, _)| !active[*i])
            .filter_map(|(i, r)| {
                let s = r.slack(&x);
                s.is_negative().then_some((s, i))
            })
            .collect();
        if violated.is_empty() {
            return Some(x);
        }
        violated.sort();
        for (_, i) in violated.into_iter().take(BATCH) {
            active[i] = true;
            rows.push(lazy[i].clone());
        }
    }
}
