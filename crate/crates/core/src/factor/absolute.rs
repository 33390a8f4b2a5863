//! Factorization of arbitrary bivariate input, absolute irreducibility and the count `nu`.

use super::normalize::normalize_for_lifting_with;
use super::search::search;
use super::{
    radical, require_bivariate, FactorError, FactorReport, FactorStatus, SolutionField,
    NORMALIZE_SEED,
};
use crate::gf::FieldCtx;
use crate::mpoly::MPoly;

/// Moves a polynomial down the tower to the smallest field holding all its coefficients.
pub fn shrink_field(g: &MPoly) -> MPoly {
    let mut out = g.clone();
    while let Some(b) = out.ctx().base().cloned() {
        match out.restrict_field(&b) {
            Some(h) => out = h,
            None => break,
        }
    }
    out
}

fn push_unique(list: &mut Vec<MPoly>, g: MPoly) {
    if !list.contains(&g) {
        list.push(g);
    }
}

/// Distinct irreducible factors of degree at most `d_cap` of any nonzero bivariate `f`.
///
/// With [`SolutionField::BaseK`] the factors are irreducible over the coefficient field of
/// `f`; with [`SolutionField::RootFieldKi`] they are absolutely irreducible and each lives over
/// the smallest tower field found to contain its coefficients. Repeated factors are reported
/// once. `d_cap` may exceed `deg f - 1`, in which case `f`'s own irreducible factors of larger
/// degree (up to `d_cap`) are included.
///
/// When a precondition-satisfying change of coordinates exists over the coefficient field `K`,
/// the search runs there directly. Otherwise it runs over an extension `K'`; in `BaseK` mode the
/// `K`-factors are then recovered as products of Frobenius orbits of closure factors.
pub fn find_factors(
    f: &MPoly,
    d_cap: u32,
    mode: SolutionField,
    seed: u64,
) -> Result<FactorReport, FactorError> {
    require_bivariate(f)?;
    if d_cap == 0 {
        return Err(FactorError::InvalidDegreeCap {
            d: 0,
            max: u32::MAX,
        });
    }
    let k = f.ctx().clone();
    let r = radical(f);
    let (g, change) = normalize_for_lifting_with(&r, seed)?;
    let enlarged = change.field != k;
    let search_mode = if enlarged {
        SolutionField::RootFieldKi
    } else {
        mode
    };
    let (mut rep, complete) = search_pulled_back(&g, &change, search_mode)?;
    if mode == SolutionField::BaseK && enlarged {
        let closure = if complete.is_empty() {
            vec![r.clone()]
        } else {
            complete
        };
        let mut out = Vec::new();
        for h in closure {
            push_unique(&mut out, orbit_product(&h, &k));
        }
        rep.factors = out;
    } else if complete.is_empty() {
        rep.factors = vec![shrink_field(&r)];
    } else {
        rep.factors = complete;
    }
    rep.factors
        .retain(|h| h.total_degree().unwrap_or(0) <= d_cap);
    rep.d_cap = d_cap;
    rep.status = if rep.factors.is_empty() {
        FactorStatus::NoFactorUpToD
    } else {
        FactorStatus::FoundFactors
    };
    Ok(rep)
}

/// Runs the full-depth search (`D = deg - 1`) on normalized `g` and maps factors back.
/// Returns the report and the pulled-back factors (empty when `g` is irreducible).
fn search_pulled_back(
    g: &MPoly,
    change: &super::AffineChange,
    mode: SolutionField,
) -> Result<(FactorReport, Vec<MPoly>), FactorError> {
    let delta = g.total_degree().unwrap_or(0);
    if delta < 2 {
        let rep = FactorReport {
            factors: Vec::new(),
            status: FactorStatus::NoFactorUpToD,
            d_cap: 0,
            systems_total: 0,
            systems_solved: 0,
        };
        return Ok((rep, Vec::new()));
    }
    let rep = search(g, delta - 1, mode, false)?;
    let mut back = Vec::new();
    for h in &rep.factors {
        push_unique(&mut back, shrink_field(&change.pull_back(h)));
    }
    Ok((rep, back))
}

/// Product of the Frobenius orbit of `h` relative to `k`, as a polynomial over `k`.
fn orbit_product(h: &MPoly, k: &FieldCtx) -> MPoly {
    let big = h.ctx().clone();
    let steps = k.abs_degree();
    let mut prod = h.clone();
    let mut cur = h.clone();
    loop {
        cur = cur.map_coeffs(|c| big.frobenius(c, steps)).make_monic();
        if cur == *h {
            break;
        }
        prod = &prod * &cur;
    }
    prod.make_monic()
        .restrict_field(k)
        .expect("Frobenius-invariant product lies over K")
}

/// Distinct absolutely irreducible factors of a nonzero bivariate polynomial.
pub fn closure_factors(f: &MPoly) -> Result<Vec<MPoly>, FactorError> {
    let delta = require_bivariate(f)?;
    Ok(find_factors(f, delta, SolutionField::RootFieldKi, NORMALIZE_SEED)?.factors)
}

/// Distinct `F_q`-irreducible factors of a nonzero bivariate polynomial over its own field.
pub fn fq_factors(f: &MPoly) -> Result<Vec<MPoly>, FactorError> {
    let delta = require_bivariate(f)?;
    Ok(find_factors(f, delta, SolutionField::BaseK, NORMALIZE_SEED)?.factors)
}

/// True iff `f` has no nontrivial factor over the algebraic closure.
///
/// `f` must be squarefree; after normalization, no degree-`<= deg f - 1` system over the root
/// fields may be solvable.
pub fn is_absolutely_irreducible(f: &MPoly) -> Result<bool, FactorError> {
    let delta = require_bivariate(f)?;
    if delta == 1 {
        return Ok(true);
    }
    let r = radical(f);
    if r.total_degree() != Some(delta) {
        return Ok(false);
    }
    let (g, _) = normalize_for_lifting_with(&r, NORMALIZE_SEED)?;
    let rep = search(&g, delta - 1, SolutionField::RootFieldKi, true)?;
    Ok(rep.status == FactorStatus::NoFactorUpToD)
}

/// Number of distinct `F_q`-irreducible factors of `f` that are absolutely irreducible.
///
/// Nonzero constants have none; the zero polynomial is rejected.
pub fn count_abs_irr_fq_factors(f: &MPoly) -> Result<u32, FactorError> {
    match require_bivariate(f) {
        Err(FactorError::Constant) => return Ok(0),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    let mut nu = 0;
    for g in fq_factors(f)? {
        if is_absolutely_irreducible(&g)? {
            nu += 1;
        }
    }
    Ok(nu)
}
