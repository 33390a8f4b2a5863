//! Resultants as Sylvester determinants over the polynomial ring in the other variables.

use super::{MPoly, PolyError};

/// `Res_var(f, g)`: determinant of the Sylvester matrix with the rows of `f` first.
///
/// Entries are polynomials in the remaining variables; the determinant is computed by
/// fraction-free (Bareiss) elimination, whose divisions are exact. The result has the same
/// arity as the inputs and does not involve `var`.
pub fn resultant(f: &MPoly, g: &MPoly, var: usize) -> Result<MPoly, PolyError> {
    f.check(g)?;
    let ctx = f.ctx();
    let nv = f.nvars();
    let (m, n) = match (f.degree_in(var), g.degree_in(var)) {
        (Some(m), Some(n)) => (m as usize, n as usize),
        _ => return Ok(MPoly::zero(ctx, nv)),
    };
    let size = m + n;
    if size == 0 {
        return Ok(MPoly::one(ctx, nv));
    }
    let fc: Vec<MPoly> = (0..=m).map(|i| f.coeff_in(var, i as u32)).collect();
    let gc: Vec<MPoly> = (0..=n).map(|i| g.coeff_in(var, i as u32)).collect();
    let zero = MPoly::zero(ctx, nv);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for r in 0..n {
        for i in 0..=m {
            mat[r][r + i] = fc[m - i].clone();
        }
    }
    for r in 0..m {
        for i in 0..=n {
            mat[n + r][r + i] = gc[n - i].clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// Determinant of a square matrix of polynomials by Bareiss elimination.
pub(crate) fn bareiss_det(mut mat: Vec<Vec<MPoly>>) -> MPoly {
    let size = mat.len();
    let ctx = mat[0][0].ctx().clone();
    let nv = mat[0][0].nvars();
    let mut negate = false;
    let mut prev = MPoly::one(&ctx, nv);
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    negate = !negate;
                }
                None => return MPoly::zero(&ctx, nv),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.exact_divide(&prev).expect("Bareiss division is exact");
            }
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}
