//! Truncated power series `c_0 + c_1 Y + ... + c_{N-1} Y^{N-1} mod Y^N`.

use super::MPoly;
use crate::gf::{Code, FieldCtx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    ctx: FieldCtx,
    coeffs: Vec<Code>,
}

impl TruncSeries {
    /// The zero series with `prec` coefficients.
    pub fn zero(ctx: &FieldCtx, prec: usize) -> TruncSeries {
        TruncSeries {
            ctx: ctx.clone(),
            coeffs: vec![0; prec],
        }
    }

    pub fn constant(ctx: &FieldCtx, prec: usize, c: Code) -> TruncSeries {
        let mut s = TruncSeries::zero(ctx, prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// Truncates or zero-pads a coefficient list to `prec` entries.
    pub fn from_coeffs(ctx: &FieldCtx, prec: usize, coeffs: &[Code]) -> TruncSeries {
        let mut v = coeffs[..coeffs.len().min(prec)].to_vec();
        v.resize(prec, 0);
        TruncSeries {
            ctx: ctx.clone(),
            coeffs: v,
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }
    pub fn coeffs(&self) -> &[Code] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> Code {
        self.coeffs.get(k).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn with_prec(&self, prec: usize) -> TruncSeries {
        TruncSeries::from_coeffs(&self.ctx, prec, &self.coeffs)
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        let n = self.prec().min(o.prec());
        let coeffs = (0..n)
            .map(|i| self.ctx.add(self.coeffs[i], o.coeffs[i]))
            .collect();
        TruncSeries {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        let n = self.prec().min(o.prec());
        let coeffs = (0..n)
            .map(|i| self.ctx.sub(self.coeffs[i], o.coeffs[i]))
            .collect();
        TruncSeries {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, c: Code) -> TruncSeries {
        let coeffs = self.coeffs.iter().map(|&x| self.ctx.mul(x, c)).collect();
        TruncSeries {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Product truncated to the smaller precision.
    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        let n = self.prec().min(o.prec());
        let f = &self.ctx;
        let mut out = vec![0; n];
        for (i, &a) in self.coeffs[..n].iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs[..n - i].iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        TruncSeries {
            ctx: f.clone(),
            coeffs: out,
        }
    }

    /// Inverse series by the Newton step `g <- g (2 - a g)`; `None` if `c_0 = 0`.
    pub fn reciprocal(&self) -> Option<TruncSeries> {
        let n = self.prec();
        let c0 = self.ctx.try_inv(self.coeff(0))?;
        let mut g = TruncSeries::constant(&self.ctx, 1, c0);
        let mut k = 1;
        while k < n {
            k = (2 * k).min(n);
            let g2 = g.with_prec(k);
            let ag = self.with_prec(k).mul(&g2);
            let two_minus =
                TruncSeries::constant(&self.ctx, k, 2 % self.ctx.characteristic()).sub(&ag);
            g = g2.mul(&two_minus);
        }
        Some(g.with_prec(n))
    }

    /// `P(self, Y) mod Y^prec` for a bivariate `P(X, Y)`: the series is substituted for `X`.
    pub fn compose_into(&self, p: &MPoly) -> TruncSeries {
        assert_eq!(p.nvars(), 2, "compose_into expects a bivariate polynomial");
        let n = self.prec();
        let dx = p.degree_in(0).unwrap_or(0) as usize;
        let mut rows = vec![vec![0; n]; dx + 1];
        for (e, c) in p.terms() {
            if (e[1] as usize) < n {
                rows[e[0] as usize][e[1] as usize] = c;
            }
        }
        let mut acc = TruncSeries::zero(&self.ctx, n);
        for row in rows.iter().rev() {
            acc = acc
                .mul(self)
                .add(&TruncSeries::from_coeffs(&self.ctx, n, row));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_inverts() {
        let k = FieldCtx::prime(7).unwrap();
        let a = TruncSeries::from_coeffs(&k, 9, &[3, 1, 4, 1, 5, 2, 6]);
        let g = a.reciprocal().unwrap();
        assert_eq!(a.mul(&g), TruncSeries::constant(&k, 9, 1));
        assert!(TruncSeries::from_coeffs(&k, 3, &[0, 1])
            .reciprocal()
            .is_none());
    }

    #[test]
    fn compose_matches_direct_expansion() {
        let k = FieldCtx::prime(5).unwrap();
        let p = MPoly::parse(&k, 2, "X^2 - 1 - Y").unwrap();
        // X = 1 + 3Y: (1 + 3Y)^2 - 1 - Y = 5Y + 9Y^2 = 4Y^2 mod 5.
        let a = TruncSeries::from_coeffs(&k, 4, &[1, 3]);
        assert_eq!(a.compose_into(&p).coeffs(), &[0, 0, 4, 0]);
    }
}
