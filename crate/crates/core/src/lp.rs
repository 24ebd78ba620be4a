//! Exact primal simplex for `max c.x  s.t.  A x <= b, x >= 0` with `b >= 0`.
//!
//! Bland's rule on both the entering and the leaving variable, so it cannot
//! cycle. Meant for the small programs that strategy sets produce.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("objective unbounded along column {0}")]
    Unbounded(usize),
    #[error("right-hand side of row {0} is negative")]
    NegativeRhs(usize),
    #[error("row {row} has {got} coefficients, expected {expected}")]
    Shape { row: usize, got: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// An optimal primal point.
    pub x: Vec<Rational>,
    /// Optimal multipliers, one per row.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Result<LpSolution, LpError> {
    let n = c.len();
    let m = a.len();
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(LpError::Shape {
                row: i,
                got: row.len(),
                expected: n,
            });
        }
        if b[i].is_negative() {
            return Err(LpError::NegativeRhs(i));
        }
    }
    let width = n + m;
    // Row-major tableau, the last column is the right-hand side.
    let mut t: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() }));
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut obj: Vec<Rational> = c.iter().map(|v| -v.clone()).collect();
    obj.extend(std::iter::repeat_n(Rational::zero(), m + 1));
    let mut basis: Vec<usize> = (n..width).collect();
    let mut pivots = 0;

    loop {
        let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((p, _)) = leave else {
            return Err(LpError::Unbounded(enter));
        };
        let piv = t[p][enter].clone();
        for v in t[p].iter_mut() {
            *v /= &piv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != p && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (v, pv) in obj.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        basis[p] = enter;
        pivots += 1;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width].clone();
        }
    }
    let dual = (0..m).map(|i| obj[n + i].clone()).collect();
    Ok(LpSolution {
        value: obj[width].clone(),
        x,
        dual,
        pivots,
    })
}
