//! Newton lifting of a simple root of `f(X, 0)` to a power-series root `alpha(Y)`.

use super::{require_bivariate, FactorError};
use crate::gf::{FieldCtx, GFElem, GfError};
use crate::mpoly::{MPoly, TruncSeries};

/// Approximate root `alpha` of `f(X, Y)` over the root field, with its powers.
#[derive(Clone, Debug)]
pub struct LiftState {
    pub root_field: FieldCtx,
    pub zeta: GFElem,
    /// `alpha mod Y^{ell_max + 1}`.
    pub alpha: TruncSeries,
    /// `beta = 1 / f_X(alpha, Y)` to the precision reached by the last step.
    pub beta: TruncSeries,
    /// `powers[mu] = alpha^mu mod Y^{ell_max + 1}` for `mu < deg f`.
    pub powers: Vec<TruncSeries>,
    pub ell_max: usize,
}

/// Runs `floor(log2 ell_max) + 1` coupled Newton steps
/// `alpha <- alpha - beta f(alpha, Y)`, `beta <- 2 beta - f_X(alpha, Y) beta^2`,
/// each doubling the precision, then truncates `alpha` to `ell_max + 1` coefficients.
pub fn newton_lift(f: &MPoly, zeta: &GFElem, ell_max: usize) -> Result<LiftState, FactorError> {
    let delta = require_bivariate(f)? as usize;
    let k = zeta.ctx().clone();
    if !f.ctx().is_subfield_of(&k) {
        return Err(GfError::NotSubfield(f.ctx().to_string(), k.to_string()).into());
    }
    let fk = f.embed(&k);
    let fx = fk.derivative(0);
    let z = zeta.code();
    let d0 = fx.eval(&[z, 0])?;
    if ell_max == 0 || fk.eval(&[z, 0])? != 0 || d0 == 0 {
        return Err(FactorError::BadInitialPoint);
    }
    let steps = usize::BITS - ell_max.leading_zeros();
    let mut alpha = TruncSeries::constant(&k, 1, z);
    let mut beta = TruncSeries::constant(&k, 1, k.inv(d0));
    let two = k.from_int(2);
    for j in 0..steps {
        let prec = 1usize << (j + 1);
        let a = alpha.with_prec(prec);
        let b = beta.with_prec(prec);
        let next_alpha = a.sub(&b.mul(&a.compose_into(&fk)));
        let fxa = next_alpha.compose_into(&fx);
        beta = b.scale(two).sub(&fxa.mul(&b.mul(&b)));
        alpha = next_alpha;
    }
    let alpha = alpha.with_prec(ell_max + 1);
    let mut powers = vec![TruncSeries::constant(&k, ell_max + 1, 1)];
    for mu in 1..delta.max(1) {
        let next = powers[mu - 1].mul(&alpha);
        powers.push(next);
    }
    Ok(LiftState {
        root_field: k,
        zeta: zeta.clone(),
        alpha,
        beta,
        powers,
        ell_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_lift() {
        let k = FieldCtx::prime(5).unwrap();
        let f = MPoly::parse(&k, 2, "X^2 - 1 - Y").unwrap();
        let s = newton_lift(&f, &k.elem(1), 1).unwrap();
        assert_eq!(s.alpha.coeffs(), &[1, 3]);
        assert_eq!(
            newton_lift(&f, &k.elem(2), 1).unwrap_err(),
            FactorError::BadInitialPoint
        );
    }

    #[test]
    fn linear_root_is_exact() {
        let k = FieldCtx::prime(7).unwrap();
        let f = MPoly::parse(&k, 2, "X - Y").unwrap();
        for ell in [1, 2, 5, 16] {
            let s = newton_lift(&f, &k.elem(0), ell).unwrap();
            let mut expect = vec![0; ell + 1];
            expect[1] = 1;
            assert_eq!(s.alpha.coeffs(), &expect[..]);
        }
    }

    #[test]
    fn lifted_root_annihilates_f() {
        let k = FieldCtx::prime(11).unwrap();
        let f = MPoly::parse(&k, 2, "X^3 + Y*X^2 - 2*X + Y^3 + 3*Y + 1").unwrap();
        let f0 = super::super::at_y_zero(&f);
        for z in crate::upoly::roots_by_scan(&k, &f0) {
            let s = newton_lift(&f, &k.elem(z), 13).unwrap();
            assert!(s.alpha.compose_into(&f).is_zero());
            assert_eq!(s.powers[2], s.alpha.mul(&s.alpha));
            let fx = f.derivative(0);
            let b = s.alpha.prec();
            let prod = s.beta.with_prec(b).mul(&s.alpha.compose_into(&fx));
            assert_eq!(prod, TruncSeries::constant(&k, b, 1));
        }
    }
}
