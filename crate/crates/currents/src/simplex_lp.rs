//! Dense primal simplex with Bland's anti-cycling rule for small equality
//! form linear programs `min c.x  s.t.  A x = b, x >= 0`.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LpError {
    #[error("iteration cap {0} exceeded")]
    IterationCap(usize),
    #[error("unbounded objective")]
    Unbounded,
    #[error("initial basis is not feasible")]
    InfeasibleBasis,
    #[error("dimension mismatch")]
    Dimension,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: f64,
    pub x: DVector<f64>,
    pub basis: Vec<usize>,
    pub iterations: usize,
}

const PIVOT_EPS: f64 = 1e-10;
const COST_EPS: f64 = 1e-9;
const MAX_ITERATIONS: usize = 200_000;

/// Primal simplex from a supplied basic feasible basis.  The tableau
/// holds `B^{-1} [A | b]`; reduced costs are recomputed per iteration and
/// both the entering and leaving choices follow Bland's rule, so the
/// method terminates without cycling.
pub fn solve_with_basis(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    c: &DVector<f64>,
    basis: Vec<usize>,
) -> Result<LpSolution, LpError> {
    let (m, n) = (a.nrows(), a.ncols());
    if b.len() != m || c.len() != n || basis.len() != m {
        return Err(LpError::Dimension);
    }
    let mut tableau = DMatrix::zeros(m, n + 1);
    tableau.view_mut((0, 0), (m, n)).copy_from(a);
    tableau.set_column(n, b);
    let mut basis = basis;

    // reduce to B^{-1}[A|b] by pivoting on the initial basis columns
    for i in 0..m {
        let j = basis[i];
        let p = tableau[(i, j)];
        if p.abs() < PIVOT_EPS {
            return Err(LpError::InfeasibleBasis);
        }
        let row = tableau.row(i) / p;
        tableau.set_row(i, &row);
        for r in 0..m {
            if r != i {
                let f = tableau[(r, j)];
                if f != 0.0 {
                    let upd = tableau.row(r) - f * tableau.row(i);
                    tableau.set_row(r, &upd);
                }
            }
        }
    }
    if (0..m).any(|i| tableau[(i, n)] < -1e-9) {
        return Err(LpError::InfeasibleBasis);
    }

    let mut iterations = 0;
    loop {
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(LpError::IterationCap(MAX_ITERATIONS));
        }
        // reduced costs r_j = c_j - c_B . (B^{-1}A)_j; entering = smallest
        // improving index (Bland)
        let mut entering = None;
        for j in 0..n {
            if basis.contains(&j) {
                continue;
            }
            let mut r = c[j];
            for i in 0..m {
                r -= c[basis[i]] * tableau[(i, j)];
            }
            if r < -COST_EPS {
                entering = Some(j);
                break;
            }
        }
        let j = match entering {
            Some(j) => j,
            None => break,
        };
        // ratio test; ties broken by smallest basic index (Bland)
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let d = tableau[(i, j)];
            if d > PIVOT_EPS {
                let ratio = tableau[(i, n)] / d;
                match leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - 1e-12
                            || (ratio < lr + 1e-12 && basis[i] < basis[li])
                        {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let (i, _) = leave.ok_or(LpError::Unbounded)?;
        // pivot
        let p = tableau[(i, j)];
        let row = tableau.row(i) / p;
        tableau.set_row(i, &row);
        for r in 0..m {
            if r != i {
                let f = tableau[(r, j)];
                if f != 0.0 {
                    let upd = tableau.row(r) - f * tableau.row(i);
                    tableau.set_row(r, &upd);
                }
            }
        }
        basis[i] = j;
    }

    let mut x = DVector::zeros(n);
    for i in 0..m {
        x[basis[i]] = tableau[(i, n)].max(0.0);
    }
    Ok(LpSolution {
        value: c.dot(&x),
        x,
        basis,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{dmatrix, dvector};

    #[test]
    fn basic_lp() {
        // min x0 + 2 x1 s.t. x0 + x1 + s = 4 ... use equality toy:
        // min x0 + x1  s.t.  x0 - x1 = 1, x >= 0  -> x = (1, 0)
        let a = dmatrix![1.0, -1.0];
        let b = dvector![1.0];
        let c = dvector![1.0, 1.0];
        let sol = solve_with_basis(&a, &b, &c, vec![0]).unwrap();
        assert!((sol.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn prefers_cheap_column() {
        // min 3u + v  s.t.  u + v = 2  -> v = 2
        let a = dmatrix![1.0, 1.0];
        let b = dvector![2.0];
        let c = dvector![3.0, 1.0];
        let sol = solve_with_basis(&a, &b, &c, vec![0]).unwrap();
        assert!((sol.value - 2.0).abs() < 1e-12);
        assert!((sol.x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn two_constraints() {
        // min x+y+z  s.t.  x + z = 3, y + z = 3  -> z = 3, value 3
        let a = dmatrix![1.0, 0.0, 1.0; 0.0, 1.0, 1.0];
        let b = dvector![3.0, 3.0];
        let c = dvector![1.0, 1.0, 1.0];
        let sol = solve_with_basis(&a, &b, &c, vec![0, 1]).unwrap();
        assert!((sol.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn detects_unbounded() {
        // min -x  s.t.  x - y = 1: x can grow with y
        let a = dmatrix![1.0, -1.0];
        let b = dvector![1.0];
        let c = dvector![-1.0, 0.0];
        assert!(matches!(
            solve_with_basis(&a, &b, &c, vec![0]),
            Err(LpError::Unbounded)
        ));
    }
}
