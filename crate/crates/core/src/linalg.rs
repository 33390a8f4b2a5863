//! Exact Gaussian elimination over a finite field.
//!
//! Pivots are the first nonzero entry of each column in row order, so results depend only on
//! the input and never on a tolerance.

use crate::gf::{Code, FieldCtx};

/// Row-reduced echelon form in place; returns the pivot column of each nonzero row.
pub fn rref(f: &FieldCtx, m: &mut [Vec<Code>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        let inv = f.inv(m[row][col]);
        for x in m[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let c = m[r][col];
                for k in 0..m[r].len() {
                    let v = f.mul(c, m[row][k]);
                    m[r][k] = f.sub(m[r][k], v);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Solves `A u = b` for augmented rows `[A | b]` with `n` unknowns.
///
/// Returns the solution with free unknowns set to zero, or `None` if inconsistent.
pub fn solve(f: &FieldCtx, mut rows: Vec<Vec<Code>>, n: usize) -> Option<Vec<Code>> {
    let pivots = rref(f, &mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut u = vec![0; n];
    for (r, &c) in pivots.iter().enumerate() {
        u[c] = rows[r][n];
    }
    Some(u)
}

/// Rank of a matrix with `cols` columns.
pub fn rank(f: &FieldCtx, rows: &[Vec<Code>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m, cols).len()
}

/// A basis of the right null space `{u : A u = 0}`.
pub fn nullspace(f: &FieldCtx, rows: &[Vec<Code>], cols: usize) -> Vec<Vec<Code>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = FieldCtx::prime(5).unwrap();
        // x + 2y = 3, x + 3y = 4  ->  x = 1, y = 1
        let rows = vec![vec![1, 2, 3], vec![1, 3, 4]];
        assert_eq!(solve(&f, rows, 2), Some(vec![1, 1]));
        let bad = vec![vec![1, 1, 1], vec![2, 2, 3]];
        assert_eq!(solve(&f, bad, 2), None);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let f = FieldCtx::prime(7).unwrap();
        let a = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 1]];
        let ns = nullspace(&f, &a, 4);
        assert_eq!(ns.len(), 4 - rank(&f, &a, 4));
        for v in ns {
            for row in &a {
                let s = row
                    .iter()
                    .zip(&v)
                    .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
    }
}
