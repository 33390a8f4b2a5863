//! Degree-bounded factor detection for bivariate polynomials by Newton lifting and linear
//! systems, plus absolute-irreducibility testing and the count `nu` of absolutely irreducible
//! `F_q`-definable factors.
//!
//! The core routine is [`factor_search`]. For `f` monic in `X` with `f(X, 0)` squarefree of
//! degree `delta = deg f`, each root `zeta` of `f(X, 0)` is lifted to a power series
//! `alpha(Y)` with `f(alpha, Y) = 0`, and for `m = 1..D` the system
//! `alpha^m + sum_{mu < m} h_mu(Y) alpha^mu = 0 mod Y^{2 m delta + 1}` with
//! `deg h_mu <= m - mu` is solved. A solution is a factor of degree `m`; the smallest solvable
//! `m` gives the irreducible factor through `zeta` over the field the unknowns range over.
//!
//! [`find_factors`], [`is_absolutely_irreducible`] and [`count_abs_irr_fq_factors`] accept
//! arbitrary nonzero input: they strip repeated factors, move to coordinates satisfying the
//! precondition with [`normalize_for_lifting`], and map factors back.

mod absolute;
mod newton;
mod normalize;
mod search;
mod sqfree;

use serde::Serialize;
use thiserror::Error;

use crate::gf::GfError;
use crate::mpoly::{MPoly, PolyError};
use crate::upoly;

pub use absolute::{
    closure_factors, count_abs_irr_fq_factors, find_factors, fq_factors, is_absolutely_irreducible,
    shrink_field,
};
pub use newton::{newton_lift, LiftState};
pub use normalize::{
    normalize_for_lifting, normalize_for_lifting_with, AffineChange, NORMALIZE_SEED,
};
pub use search::factor_search;
pub use sqfree::{bivariate_gcd, pth_root, radical};

/// Field over which the unknowns of the linear systems range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolutionField {
    /// The coefficient field `K = F_q`: finds `F_q`-irreducible factors.
    BaseK,
    /// The root field `K_i = K(zeta_i)`: finds absolutely irreducible factors.
    RootFieldKi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorStatus {
    FoundFactors,
    NoFactorUpToD,
}

/// Outcome of a degree-bounded factor search.
#[derive(Clone, Debug)]
pub struct FactorReport {
    /// Distinct irreducible factors of degree at most `d_cap`, monic in graded-lex order.
    pub factors: Vec<MPoly>,
    pub status: FactorStatus,
    pub d_cap: u32,
    /// Linear systems assembled and how many of them were consistent.
    pub systems_total: usize,
    pub systems_solved: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("expected a bivariate polynomial")]
    NotBivariate,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("expected a nonconstant polynomial")]
    Constant,
    #[error("leading coefficient in X is not a nonzero constant")]
    NotMonicInX,
    #[error("f(X, 0) is not squarefree of degree deg f")]
    PreconditionViolated,
    #[error("degree cap {d} outside 1..={max}")]
    InvalidDegreeCap { d: u32, max: u32 },
    #[error("zeta is not a simple root of f(X, 0)")]
    BadInitialPoint,
    #[error("no coordinate change satisfied the lifting precondition (seed {seed})")]
    NormalizationFailed { seed: u64 },
    #[error("reconstructed candidate {0} does not divide the input")]
    InternalVerifyFailed(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub(crate) fn require_bivariate(f: &MPoly) -> Result<u32, FactorError> {
    if f.nvars() != 2 {
        return Err(FactorError::NotBivariate);
    }
    match f.total_degree() {
        None => Err(FactorError::ZeroPolynomial),
        Some(0) => Err(FactorError::Constant),
        Some(d) => Ok(d),
    }
}

/// `f(X, 0)` as a dense univariate polynomial.
pub(crate) fn at_y_zero(f: &MPoly) -> Vec<u32> {
    let mut out = Vec::new();
    for (e, c) in f.terms() {
        if e[1] == 0 {
            let k = e[0] as usize;
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            out[k] = c;
        }
    }
    upoly::trim(out)
}

/// True iff `f(X, 0)` is squarefree of degree `deg f`.
///
/// Errors with `NotMonicInX` when the leading coefficient in `X` is not a nonzero constant.
pub fn check_precondition(f: &MPoly) -> Result<bool, FactorError> {
    let delta = require_bivariate(f)?;
    let dx = f.degree_in(0).unwrap_or(0);
    if !f.coeff_in(0, dx).is_constant() {
        return Err(FactorError::NotMonicInX);
    }
    let f0 = at_y_zero(f);
    Ok(upoly::degree(&f0) == Some(delta as usize) && upoly::is_squarefree(f.ctx(), &f0))
}
