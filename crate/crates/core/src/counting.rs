//! Exact counts of `F_q`-rational points of affine varieties.
//!
//! Points are visited in lexicographic order of coordinate codes, `X1` most significant. The
//! outer coordinates are split into disjoint blocks counted in parallel and summed, so the
//! result never depends on the number of threads.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf::{Code, FieldCtx, GfError, DEFAULT_FIELD_SEED};
use crate::mpoly::{MPoly, PolyError};
use crate::upoly;

/// Default evaluation budget when `WEILBENCH_BUDGET` is unset.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
/// Seed of the audit sample of [`count_hypersurface_fast`].
pub const AUDIT_SEED: u64 = 0xa0d1_7000;
/// One prefix in `AUDIT_RATE` is recounted exhaustively by the fast path.
const AUDIT_RATE: u64 = 100;
/// Blocks per parallel count.
const BLOCKS: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("budget exceeded: {required} evaluations required, budget is {budget}")]
    BudgetExceeded { budget: u64, required: u128 },
    #[error("empty polynomial system")]
    EmptySystem,
    #[error("polynomials of a system must share field and variable count")]
    Mismatch,
    #[error("polynomial has no variable of positive degree")]
    NoVariable,
    #[error(
        "fast count disagrees with exhaustive count at prefix {prefix}: {fast} vs {exhaustive}"
    )]
    AuditMismatch {
        prefix: u64,
        fast: u64,
        exhaustive: u64,
    },
    #[error("{lemma:?} violated: N = {count} exceeds {bound_num}/{bound_den}")]
    LemmaViolated {
        lemma: Lemma,
        count: u64,
        bound_num: u128,
        bound_den: u64,
    },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Budget from `WEILBENCH_BUDGET`, or [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("WEILBENCH_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

fn check_budget(budget: u64, required: u128) -> Result<(), CountError> {
    if required > budget as u128 {
        Err(CountError::BudgetExceeded { budget, required })
    } else {
        Ok(())
    }
}

/// A nonempty list of polynomials over one field in one set of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    ctx: FieldCtx,
    nvars: usize,
    polys: Vec<MPoly>,
}

impl PolySystem {
    pub fn new(polys: Vec<MPoly>) -> Result<PolySystem, CountError> {
        let first = polys.first().ok_or(CountError::EmptySystem)?;
        let (ctx, nvars) = (first.ctx().clone(), first.nvars());
        if polys.iter().any(|p| *p.ctx() != ctx || p.nvars() != nvars) {
            return Err(CountError::Mismatch);
        }
        Ok(PolySystem { ctx, nvars, polys })
    }

    pub fn parse(ctx: &FieldCtx, nvars: usize, texts: &[&str]) -> Result<PolySystem, CountError> {
        let polys = texts
            .iter()
            .map(|t| MPoly::parse(ctx, nvars, t))
            .collect::<Result<Vec<_>, _>>()?;
        PolySystem::new(polys)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    /// The system over an extension field.
    pub fn embed(&self, target: &FieldCtx) -> PolySystem {
        PolySystem {
            ctx: target.clone(),
            nvars: self.nvars,
            polys: self.polys.iter().map(|p| p.embed(target)).collect(),
        }
    }

    /// Appends a polynomial.
    pub fn with(&self, p: MPoly) -> Result<PolySystem, CountError> {
        let mut polys = self.polys.clone();
        polys.push(p);
        PolySystem::new(polys)
    }

    /// True iff every polynomial vanishes at `point`.
    pub fn vanishes_at(&self, point: &[Code]) -> bool {
        self.polys.iter().all(|p| p.eval_in(&self.ctx, point) == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CountMethod {
    Exhaustive,
    GcdAccelerated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub count: u64,
    pub q: u64,
    pub n: usize,
    pub method: CountMethod,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// A polynomial split by the degree of one variable; the remaining variables form the prefix.
struct Split {
    /// `coeffs[k]`: terms of the coefficient of `X_var^k`, exponents over the other variables.
    coeffs: Vec<Vec<(Vec<u32>, Code)>>,
    maxdeg: usize,
}

impl Split {
    fn new(p: &MPoly, var: usize) -> Split {
        let d = p.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![Vec::new(); d + 1];
        let mut maxdeg = 0;
        for (e, c) in p.terms() {
            let rest: Vec<u32> = e
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != var)
                .map(|(_, &x)| x)
                .collect();
            maxdeg = maxdeg.max(rest.iter().copied().max().unwrap_or(0) as usize);
            coeffs[e[var] as usize].push((rest, c));
        }
        Split { coeffs, maxdeg }
    }

    /// Coefficients of the univariate specialization at `prefix`, low to high.
    fn specialize(&self, f: &FieldCtx, prefix: &[Code]) -> Vec<Code> {
        let powers: Vec<Vec<Code>> = prefix
            .iter()
            .map(|&x| {
                let mut pw = Vec::with_capacity(self.maxdeg + 1);
                let mut acc = 1;
                for _ in 0..=self.maxdeg {
                    pw.push(acc);
                    acc = f.mul(acc, x);
                }
                pw
            })
            .collect();
        self.coeffs
            .iter()
            .map(|terms| {
                terms.iter().fold(0, |s, (e, c)| {
                    let t = e.iter().enumerate().fold(*c, |t, (i, &k)| {
                        if k == 0 {
                            t
                        } else {
                            f.mul(t, powers[i][k as usize])
                        }
                    });
                    f.add(s, t)
                })
            })
            .collect()
    }
}

fn decode(q: u64, len: usize, mut idx: u64, out: &mut [Code]) {
    for d in out[..len].iter_mut().rev() {
        *d = (idx % q) as Code;
        idx /= q;
    }
}

fn par_sum<F>(total: u64, f: F) -> Result<u64, CountError>
where
    F: Fn(u64) -> Result<u64, CountError> + Sync,
{
    let chunk = total.div_ceil(BLOCKS).max(1);
    let blocks: Vec<u64> = (0..total.div_ceil(chunk)).collect();
    let parts: Vec<Result<u64, CountError>> = blocks
        .par_iter()
        .map(|&b| {
            let mut s = 0;
            for idx in b * chunk..((b + 1) * chunk).min(total) {
                s += f(idx)?;
            }
            Ok(s)
        })
        .collect();
    parts.into_iter().sum()
}

/// Points of the last coordinate at which every split vanishes, given the prefix.
fn count_fiber_exhaustive(f: &FieldCtx, splits: &[Split], prefix: &[Code]) -> u64 {
    let mut specs: Vec<Option<Vec<Code>>> = vec![None; splits.len()];
    let mut n = 0;
    'pt: for x in f.codes() {
        for (s, spec) in splits.iter().zip(specs.iter_mut()) {
            let g = spec.get_or_insert_with(|| s.specialize(f, prefix));
            if upoly::eval(f, g, x) != 0 {
                continue 'pt;
            }
        }
        n += 1;
    }
    n
}

/// Exact number of common zeros in `F_q^n`, checked against [`budget_from_env`].
pub fn count_points(sys: &PolySystem) -> Result<CountResult, CountError> {
    count_points_with(sys, budget_from_env())
}

/// [`count_points`] with an explicit budget on the `q^n` point evaluations.
pub fn count_points_with(sys: &PolySystem, budget: u64) -> Result<CountResult, CountError> {
    let start = Instant::now();
    let f = sys.ctx();
    let (q, n) = (f.order() as u64, sys.nvars());
    check_budget(budget, (q as u128).pow(n as u32))?;
    let count = if n == 0 {
        sys.polys.iter().all(|p| p.constant_term() == 0) as u64
    } else {
        let splits: Vec<Split> = sys.polys.iter().map(|p| Split::new(p, n - 1)).collect();
        par_sum(q.pow(n as u32 - 1), |idx| {
            let mut prefix = vec![0; n - 1];
            decode(q, n - 1, idx, &mut prefix);
            Ok(count_fiber_exhaustive(f, &splits, &prefix))
        })?
    };
    Ok(CountResult {
        count,
        q,
        n,
        method: CountMethod::Exhaustive,
        elapsed: start.elapsed(),
    })
}

/// Variable of highest degree, ties to the lowest index.
pub fn fast_path_variable(f: &MPoly) -> Option<usize> {
    let mut best: Option<(usize, u32)> = None;
    for v in 0..f.nvars() {
        let d = f.degree_in(v).unwrap_or(0);
        if d > 0 && best.is_none_or(|(_, bd)| d > bd) {
            best = Some((v, d));
        }
    }
    best.map(|(v, _)| v)
}

fn audited(seed: u64, idx: u64) -> bool {
    let mut z = seed ^ idx.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    idx == 0 || z.is_multiple_of(AUDIT_RATE)
}

/// Zeros of one polynomial, counted by specializing all but the variable of highest degree
/// and taking `deg gcd(g, X^q - X)` of the univariate remainder.
///
/// A seeded one-percent sample of prefixes is recounted by evaluation; any disagreement is an
/// [`CountError::AuditMismatch`]. The budget applies to the `q^{n-1}` specializations.
pub fn count_hypersurface_fast(f: &MPoly) -> Result<CountResult, CountError> {
    count_hypersurface_fast_with(f, budget_from_env(), AUDIT_SEED)
}

pub fn count_hypersurface_fast_with(
    f: &MPoly,
    budget: u64,
    audit_seed: u64,
) -> Result<CountResult, CountError> {
    let start = Instant::now();
    let k = f.ctx();
    let (q, n) = (k.order() as u64, f.nvars());
    let v = fast_path_variable(f).ok_or(CountError::NoVariable)?;
    check_budget(budget, (q as u128).pow(n as u32 - 1))?;
    let split = Split::new(f, v);
    let count = par_sum(q.pow(n as u32 - 1), |idx| {
        let mut prefix = vec![0; n - 1];
        decode(q, n - 1, idx, &mut prefix);
        let g = upoly::trim(split.specialize(k, &prefix));
        let fast = upoly::count_roots(k, &g);
        if audited(audit_seed, idx) {
            let exhaustive = k.codes().filter(|&x| upoly::eval(k, &g, x) == 0).count() as u64;
            if exhaustive != fast {
                return Err(CountError::AuditMismatch {
                    prefix: idx,
                    fast,
                    exhaustive,
                });
            }
        }
        Ok(fast)
    })?;
    Ok(CountResult {
        count,
        q,
        n,
        method: CountMethod::GcdAccelerated,
        elapsed: start.elapsed(),
    })
}

/// Count over `F_{q^t}`, the extension built with [`DEFAULT_FIELD_SEED`].
pub fn count_over_extension(sys: &PolySystem, t: u32) -> Result<CountResult, CountError> {
    count_over_extension_with(sys, t, budget_from_env())
}

pub fn count_over_extension_with(
    sys: &PolySystem,
    t: u32,
    budget: u64,
) -> Result<CountResult, CountError> {
    if t == 1 {
        return count_points_with(sys, budget);
    }
    let q = sys.ctx().order() as u128;
    check_budget(budget, q.pow(t * sys.nvars() as u32))?;
    let ext = sys.ctx().extension(t, DEFAULT_FIELD_SEED)?;
    count_points_with(&sys.embed(&ext), budget)
}

/// All common zeros in `F_q^n`, in lexicographic order.
///
/// Coordinates are fixed one at a time. When some polynomial involves no later variable, the
/// candidates for the current coordinate are the roots of the gcd of those specializations;
/// otherwise every field element is tried. `budget` caps the number of visited nodes.
pub fn enumerate_points(sys: &PolySystem, budget: u64) -> Result<Vec<Vec<Code>>, CountError> {
    let n = sys.nvars();
    let k = sys.ctx();
    // Polynomials whose last variable is `i`, split by that variable.
    let mut by_last: Vec<Vec<Split>> = (0..n).map(|_| Vec::new()).collect();
    let mut constants_ok = true;
    for p in sys.polys() {
        match (0..n).rev().find(|&i| p.degree_in(i).unwrap_or(0) > 0) {
            Some(i) => by_last[i].push(Split::new(&leading_vars(p, i + 1), i)),
            None => constants_ok &= p.constant_term() == 0,
        }
    }
    let mut out = Vec::new();
    if !constants_ok {
        return Ok(out);
    }
    let mut visited = 0u64;
    let mut point = Vec::with_capacity(n);
    walk(k, &by_last, &mut point, &mut out, &mut visited, budget)?;
    Ok(out)
}

/// `p` viewed in its first `m` variables; the others must not occur.
fn leading_vars(p: &MPoly, m: usize) -> MPoly {
    MPoly::from_terms(p.ctx(), m, p.terms().map(|(e, c)| (e[..m].to_vec(), c)))
}

fn walk(
    k: &FieldCtx,
    by_last: &[Vec<Split>],
    point: &mut Vec<Code>,
    out: &mut Vec<Vec<Code>>,
    visited: &mut u64,
    budget: u64,
) -> Result<(), CountError> {
    let i = point.len();
    if i == by_last.len() {
        out.push(point.clone());
        return Ok(());
    }
    let candidates: Vec<Code> = if by_last[i].is_empty() {
        k.codes().collect()
    } else {
        let g = by_last[i].iter().fold(Vec::new(), |g, s| {
            upoly::gcd(k, &g, &upoly::trim(s.specialize(k, point)))
        });
        if g.is_empty() {
            k.codes().collect()
        } else {
            upoly::roots(k, &g)
        }
    };
    *visited += candidates.len() as u64 + 1;
    check_budget(budget, *visited as u128)?;
    for c in candidates {
        point.push(c);
        walk(k, by_last, point, out, visited, budget)?;
        point.pop();
    }
    Ok(())
}

/// Point-count lemmas, each with its own bound on `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Lemma {
    /// `N <= delta q^r` for a variety of dimension `r` and degree `delta`.
    DimensionDegree,
    /// `N <= delta^2 q^{n-2}` for the zeros of two coprime polynomials of degree `<= delta`.
    CoprimePair,
    /// `N <= delta^2 q^{r-1} / 4` for the singular or non-absolutely-irreducible locus bound.
    QuarterSquare,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub count: u64,
    pub bound_num: u128,
    pub bound_den: u64,
    pub holds: bool,
}

/// Counts `sys` exactly and compares with the selected lemma's bound.
///
/// The hypotheses of the lemma are the caller's claim and are recorded, not checked. A
/// violation is returned as [`CountError::LemmaViolated`].
pub fn assert_lemma_bounds(
    sys: &PolySystem,
    r: u32,
    delta: u32,
    lemma: Lemma,
) -> Result<LemmaReport, CountError> {
    let n_pts = count_points(sys)?.count;
    let q = sys.ctx().order() as u128;
    let n = sys.nvars() as u32;
    let d = delta as u128;
    let (num, den) = match lemma {
        Lemma::DimensionDegree => (d * q.pow(r), 1),
        Lemma::CoprimePair => (d * d * q.pow(n.saturating_sub(2)), 1),
        Lemma::QuarterSquare => (d * d * q.pow(r.saturating_sub(1)), 4),
    };
    let holds = (n_pts as u128) * den as u128 <= num;
    if !holds {
        return Err(CountError::LemmaViolated {
            lemma,
            count: n_pts,
            bound_num: num,
            bound_den: den,
        });
    }
    Ok(LemmaReport {
        lemma,
        count: n_pts,
        bound_num: num,
        bound_den: den,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(q: u64, n: usize, ps: &[&str]) -> PolySystem {
        PolySystem::parse(&FieldCtx::prime(q).unwrap(), n, ps).unwrap()
    }

    #[test]
    fn spec_counts() {
        for q in [2, 3, 5, 7] {
            assert_eq!(
                count_points(&sys(q, 2, &["X1*X2 - 1"])).unwrap().count,
                q - 1
            );
            assert_eq!(
                count_points(&sys(q, 2, &["X1", "X1 - 1"])).unwrap().count,
                0
            );
        }
        assert_eq!(count_points(&sys(3, 2, &["X^2 + Y^2"])).unwrap().count, 1);
    }

    #[test]
    fn fast_path_examples() {
        let k = FieldCtx::prime(5).unwrap();
        let f = MPoly::parse(&k, 2, "Y^2 - X^3 - X").unwrap();
        let r = count_hypersurface_fast(&f).unwrap();
        assert_eq!((r.count, r.method), (3, CountMethod::GcdAccelerated));
        let line = MPoly::parse(&k, 2, "X1").unwrap();
        assert_eq!(count_hypersurface_fast(&line).unwrap().count, 5);
        let k3 = FieldCtx::prime(3).unwrap();
        let s = MPoly::parse(&k3, 3, "X1^2 + X2^2 + X3^2").unwrap();
        let slow = count_points(&PolySystem::new(vec![s.clone()]).unwrap()).unwrap();
        assert_eq!(count_hypersurface_fast(&s).unwrap().count, slow.count);
        assert_eq!(
            count_hypersurface_fast(&MPoly::parse(&k, 2, "3").unwrap()),
            Err(CountError::NoVariable)
        );
    }

    #[test]
    fn extension_examples() {
        let s = sys(3, 1, &["X1^2 + 1"]);
        assert_eq!(count_over_extension(&s, 2).unwrap().count, 2);
        assert_eq!(
            count_over_extension(&s, 1).unwrap().count,
            count_points(&s).unwrap().count
        );
        assert_eq!(
            count_over_extension(&sys(5, 1, &["X1^5 - X1"]), 1)
                .unwrap()
                .count,
            5
        );
    }

    #[test]
    fn budget_is_enforced() {
        let err = count_points_with(&sys(7, 3, &["X1"]), 100).unwrap_err();
        assert_eq!(
            err,
            CountError::BudgetExceeded {
                budget: 100,
                required: 343
            }
        );
    }

    #[test]
    fn enumeration_matches_count() {
        let s = sys(7, 3, &["X2 - X1^2", "X3 - X1^3"]);
        let pts = enumerate_points(&s, 1 << 20).unwrap();
        assert_eq!(pts.len(), 7);
        assert!(pts.iter().all(|p| s.vanishes_at(p)));
        let t = sys(5, 3, &["X1^2 + X2^2 - X3^2"]);
        assert_eq!(
            enumerate_points(&t, 1 << 20).unwrap().len() as u64,
            count_points(&t).unwrap().count
        );
    }

    #[test]
    fn lemma_examples() {
        let r = assert_lemma_bounds(&sys(5, 2, &["X1"]), 1, 1, Lemma::DimensionDegree).unwrap();
        assert_eq!((r.count, r.bound_num), (5, 5));
        let r =
            assert_lemma_bounds(&sys(5, 2, &["X1*X2 - 1"]), 1, 2, Lemma::DimensionDegree).unwrap();
        assert!(r.holds && r.count == 4);
        let r = assert_lemma_bounds(
            &sys(3, 3, &["X1^2 + X2 - X3", "X2^2 - X1*X3 + 1"]),
            1,
            2,
            Lemma::CoprimePair,
        )
        .unwrap();
        assert!(r.count <= 12);
        assert!(matches!(
            assert_lemma_bounds(&sys(5, 2, &["X1*X2"]), 1, 1, Lemma::DimensionDegree),
            Err(CountError::LemmaViolated { .. })
        ));
    }
}
