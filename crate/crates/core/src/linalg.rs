//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::Zero;

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    /// Consistent, with this many free parameters.
    Underdetermined(usize),
    Inconsistent,
}

/// Reduces `rows` in place to reduced row echelon form over the first `cols`
/// columns and returns the pivot columns.
pub fn rref(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = &*v - &f * pv;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Solves `A x = b` for an `m x n` matrix given as rows.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational], n: usize) -> Solution {
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    let consistent = aug[pivots.len()..].iter().all(|row| row[n].is_zero());
    if !consistent {
        return Solution::Inconsistent;
    }
    if pivots.len() < n {
        return Solution::Underdetermined(n - pivots.len());
    }
    Solution::Unique(aug.iter().take(n).map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn small_systems() {
        let a = vec![vec![r(1), r(1)], vec![r(1), r(-1)]];
        assert_eq!(solve(&a, &[r(3), r(1)], 2), Solution::Unique(vec![r(2), r(1)]));
        let a = vec![vec![r(1), r(1)], vec![r(2), r(2)]];
        assert_eq!(solve(&a, &[r(1), r(2)], 2), Solution::Underdetermined(1));
        assert_eq!(solve(&a, &[r(1), r(3)], 2), Solution::Inconsistent);
        assert_eq!(rank(&a, 2), 1);
    }
}
