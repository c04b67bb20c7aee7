//! Dense Gaussian elimination over exact rationals. Systems here have at
//! most a few dozen unknowns, so no pivoting heuristics beyond "first
//! non-zero" are needed.

#![allow(clippy::needless_range_loop)]

use num_traits::Zero;

use crate::rational::Rational;

/// Solves `a · x = b`. Returns `None` when `a` is singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n), "square system expected");

    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[r][k] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn solves_small_system() {
        // 2x + y = 3, x - y = 0 -> x = y = 1
        let x = solve(vec![vec![int(2), int(1)], vec![int(1), int(-1)]], vec![int(3), int(0)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
    }

    #[test]
    fn needs_row_swap() {
        let x = solve(vec![vec![int(0), int(1)], vec![rat(1, 2), int(0)]], vec![int(4), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(4)]);
    }

    #[test]
    fn singular_is_none() {
        assert!(solve(vec![vec![int(1), int(2)], vec![int(2), int(4)]], vec![int(1), int(2)]).is_none());
    }
}
