//! Parametrized affine planes `X1 = nu1 + X`, `Xi = nui + omegai X + etai Y` for `i >= 2`.

use serde::Serialize;

use super::{MPoly, PolyError};
use crate::gf::{Code, FieldCtx};

/// A point `(nu, omega, eta)` of `F_q^{3n-2}`; it describes a plane when `eta != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PlaneParam {
    pub nu: Vec<Code>,
    pub omega: Vec<Code>,
    pub eta: Vec<Code>,
}

impl PlaneParam {
    pub fn new(nu: Vec<Code>, omega: Vec<Code>, eta: Vec<Code>) -> PlaneParam {
        assert!(!nu.is_empty() && omega.len() + 1 == nu.len() && eta.len() == omega.len());
        PlaneParam { nu, omega, eta }
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }

    /// `eta = 0`: the parametrization collapses to a line.
    pub fn is_degenerate(&self) -> bool {
        self.eta.iter().all(|&c| c == 0)
    }

    /// Number of tuples `q^{3n-2}`.
    pub fn tuple_count(q: u64, n: usize) -> u64 {
        q.pow(3 * n as u32 - 2)
    }

    /// Decodes a tuple index in `[0, q^{3n-2})`, `nu` most significant, then `omega`, then `eta`.
    pub fn from_index(ctx: &FieldCtx, n: usize, mut idx: u64) -> PlaneParam {
        let q = ctx.order() as u64;
        let mut digits = vec![0 as Code; 3 * n - 2];
        for d in digits.iter_mut().rev() {
            *d = (idx % q) as Code;
            idx /= q;
        }
        let eta = digits.split_off(2 * n - 1);
        let omega = digits.split_off(n);
        PlaneParam {
            nu: digits,
            omega,
            eta,
        }
    }

    /// `f(L(X, Y))` as a bivariate polynomial.
    pub fn restrict(&self, f: &MPoly) -> Result<MPoly, PolyError> {
        if f.nvars() != self.n() {
            return Err(PolyError::Arity {
                expected: f.nvars(),
                got: self.n(),
            });
        }
        let mut a = vec![vec![1, 0]];
        for i in 0..self.omega.len() {
            a.push(vec![self.omega[i], self.eta[i]]);
        }
        f.affine_substitute(&a, &self.nu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_matches_pointwise_evaluation() {
        let k = FieldCtx::prime(5).unwrap();
        let f = MPoly::parse(&k, 3, "X1^2 + X2*X3 + 3*X3 + 1").unwrap();
        let l = PlaneParam::new(vec![1, 2, 3], vec![4, 0], vec![1, 2]);
        let g = l.restrict(&f).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                let p = [
                    k.add(1, x),
                    k.add(2, k.add(k.mul(4, x), y)),
                    k.add(3, k.mul(2, y)),
                ];
                assert_eq!(g.eval(&[x, y]).unwrap(), f.eval(&p).unwrap());
            }
        }
    }

    #[test]
    fn index_decoding_is_bijective() {
        let k = FieldCtx::prime(2).unwrap();
        let all: std::collections::HashSet<PlaneParam> = (0..PlaneParam::tuple_count(2, 3))
            .map(|i| PlaneParam::from_index(&k, 3, i))
            .collect();
        assert_eq!(all.len(), 128);
        assert_eq!(PlaneParam::from_index(&k, 3, 1).eta, vec![0, 1]);
    }
}
