//! Assembly and solution of the degree-`m` linear systems over `K` or `K_i`.

use super::{
    at_y_zero, check_precondition, newton_lift, require_bivariate, shrink_field, FactorError,
    FactorReport, FactorStatus, LiftState, SolutionField,
};
use crate::gf::{FieldCtx, GFElem};
use crate::linalg;
use crate::mpoly::MPoly;
use crate::upoly;

/// Seed for the moduli of root fields `K(zeta)`.
pub(crate) const ROOT_FIELD_SEED: u64 = 0x0f1e_1d5e;

/// Searches for the irreducible factors of degree at most `d_cap`.
///
/// Requires [`check_precondition`]; `1 <= d_cap <= deg f - 1`. Roots of `f(X, 0)` are visited
/// by increasing degree over `K`, then by code; a root already lying on a found factor is
/// skipped. Every factor is checked by exact division before it is returned.
pub fn factor_search(
    f: &MPoly,
    d_cap: u32,
    mode: SolutionField,
) -> Result<FactorReport, FactorError> {
    search(f, d_cap, mode, false)
}

pub(crate) fn search(
    f: &MPoly,
    d_cap: u32,
    mode: SolutionField,
    stop_at_first: bool,
) -> Result<FactorReport, FactorError> {
    let delta = require_bivariate(f)?;
    if !check_precondition(f)? {
        return Err(FactorError::PreconditionViolated);
    }
    if d_cap < 1 || d_cap + 1 > delta {
        return Err(FactorError::InvalidDegreeCap {
            d: d_cap,
            max: delta.saturating_sub(1),
        });
    }
    let k = f.ctx().clone();
    let lead = f.coeff(&[delta, 0]);
    let f = f.scale(k.inv(lead));
    let ell_max = 2 * (d_cap * delta) as usize;
    let mut factors: Vec<MPoly> = Vec::new();
    let (mut total, mut solved) = (0, 0);
    for zeta in roots_of_f0(&f)? {
        let ki = zeta.ctx().clone();
        let covered = factors
            .iter()
            .any(|g| g.ctx().is_subfield_of(&ki) && g.eval_in(&ki, &[zeta.code(), 0]) == 0);
        if covered {
            continue;
        }
        let lift = newton_lift(&f, &zeta, ell_max)?;
        for m in 1..=d_cap {
            total += 1;
            if let Some(g) = solve_degree(&lift, m, delta, mode, &k) {
                solved += 1;
                if !factors.contains(&g) {
                    factors.push(g);
                }
                break;
            }
        }
        if stop_at_first && !factors.is_empty() {
            break;
        }
    }
    for g in &factors {
        // `shrink_field` may leave `g` over a subfield of the field of `f`.
        let divides = if g.ctx().is_subfield_of(f.ctx()) {
            g.embed(f.ctx()).divides(&f)
        } else {
            g.divides(&f.embed(g.ctx()))
        };
        if !divides {
            return Err(FactorError::InternalVerifyFailed(g.to_string()));
        }
    }
    let status = if factors.is_empty() {
        FactorStatus::NoFactorUpToD
    } else {
        FactorStatus::FoundFactors
    };
    Ok(FactorReport {
        factors,
        status,
        d_cap,
        systems_total: total,
        systems_solved: solved,
    })
}

/// Roots of `f(X, 0)`, each in the field `K(zeta)` of its degree over `K`.
pub(crate) fn roots_of_f0(f: &MPoly) -> Result<Vec<GFElem>, FactorError> {
    let k = f.ctx();
    let f0 = at_y_zero(f);
    let mut out = Vec::new();
    for (d, g) in upoly::distinct_degree(k, &f0) {
        let kd = k.extension(d as u32, ROOT_FIELD_SEED)?;
        out.extend(upoly::roots(&kd, &g).into_iter().map(|z| kd.elem(z)));
    }
    Ok(out)
}

/// Unknowns `u_{mu, eta}`, `0 <= mu < m`, `0 <= eta <= m - mu`, in this order.
fn unknowns(m: u32) -> Vec<(u32, u32)> {
    (0..m)
        .flat_map(|mu| (0..=m - mu).map(move |eta| (mu, eta)))
        .collect()
}

/// Solves the degree-`m` system at precision `2 m delta`; returns the factor if consistent.
fn solve_degree(
    lift: &LiftState,
    m: u32,
    delta: u32,
    mode: SolutionField,
    k: &FieldCtx,
) -> Option<MPoly> {
    let ki = &lift.root_field;
    let vars = unknowns(m);
    let n = vars.len();
    let ell = (2 * m * delta) as usize;
    let a = |mu: u32, idx: isize| -> u32 {
        if idx < 0 {
            0
        } else {
            lift.powers[mu as usize].coeff(idx as usize)
        }
    };
    let rows_ki = (0..=ell).map(|kk| {
        let mut row: Vec<u32> = vars
            .iter()
            .map(|&(mu, eta)| a(mu, kk as isize - eta as isize))
            .collect();
        row.push(ki.neg(a(m, kk as isize)));
        row
    });
    let (field, rows): (&FieldCtx, Vec<Vec<u32>>) = match mode {
        SolutionField::RootFieldKi => (ki, rows_ki.collect()),
        SolutionField::BaseK => {
            let t = ki.degree_over(k).expect("root field extends K") as usize;
            let mut rows = Vec::new();
            for row in rows_ki {
                let coords: Vec<Vec<u32>> = row.iter().map(|&c| ki.coords_over(c, k)).collect();
                for j in 0..t {
                    rows.push(coords.iter().map(|c| c[j]).collect());
                }
            }
            (k, rows)
        }
    };
    let u = linalg::solve(field, rows, n)?;
    let mut terms = vec![(vec![m, 0], 1)];
    terms.extend(vars.iter().zip(u).map(|(&(mu, eta), c)| (vec![mu, eta], c)));
    Some(shrink_field(
        &MPoly::from_terms(field, 2, terms).make_monic(),
    ))
}
