//! Linear projections of an `r`-dimensional variety `V` in `A^n` onto a hypersurface
//! `W = V(h)` in `A^{r+1}`, fitted by interpolation, with an exact check that the projection
//! is an isomorphism off the discriminant locus `h0 = dh/dY_{r+1} = 0`.
//!
//! The image polynomial and the inverse section are solutions of linear systems over `F_q`
//! whose equations come from the points of `V` over `F_{q^t}`, with `t` increased until the
//! solution is unique at two consecutive `t`.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::counting::{self, CountError, PolySystem};
use crate::gf::{Code, FieldCtx, GfError, DEFAULT_FIELD_SEED};
use crate::linalg;
use crate::mpoly::{grlex_cmp, Exps, MPoly, PolyError};

/// Draws tried by [`draw_projection`] before giving up.
pub const MAX_DRAWS: u32 = 16;
/// Largest extension `F_{q^t}` used for interpolation.
const MAX_FIT_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectError {
    #[error("q = {q} must exceed 2(r+1)delta^2 = {threshold}")]
    RegularityViolated { q: u64, threshold: u64 },
    #[error("no acceptable projection in {attempts} draws (seed {seed})")]
    RetriesExhausted { seed: u64, attempts: u32 },
    #[error("no nonzero polynomial of degree <= {delta} vanishes on the image")]
    NoSolution { delta: u32 },
    #[error("solution space did not become one-dimensional by t = {t} (dimension {dim})")]
    NotStabilized { t: u32, dim: usize },
    #[error("birationality check failed: {0}")]
    BirationalityFailed(String),
    #[error("{what}: {count} points exceed delta(delta-1)q^(r-1) = {ceiling}")]
    DiscriminantCeiling {
        what: &'static str,
        count: u64,
        ceiling: u64,
    },
    #[error("h0 vanishes at the point")]
    OnDiscriminant,
    #[error("inverse section fit failed: {0}")]
    FitFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `y = lambda x + gamma` together with the image hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub r: usize,
    pub delta: u32,
    /// `(r+1) x n`.
    pub lambda: Vec<Vec<Code>>,
    pub gamma: Vec<Code>,
    /// Image polynomial in `r + 1` variables.
    pub h: MPoly,
    /// `dh / dY_{r+1}`.
    pub h0: MPoly,
    /// Identity projection of a hypersurface.
    pub tautological: bool,
}

impl Projection {
    /// Builds a projection with `h` given; `h0` is derived.
    pub fn new(
        r: usize,
        delta: u32,
        lambda: Vec<Vec<Code>>,
        gamma: Vec<Code>,
        h: MPoly,
    ) -> Projection {
        let h0 = h.derivative(r);
        Projection {
            r,
            delta,
            lambda,
            gamma,
            h,
            h0,
            tautological: false,
        }
    }

    /// `pi(x)` over the field `k`, which must contain the coefficients.
    pub fn apply_in(&self, k: &FieldCtx, x: &[Code]) -> Vec<Code> {
        apply(k, &self.lambda, &self.gamma, x)
    }

    pub fn apply(&self, x: &[Code]) -> Vec<Code> {
        self.apply_in(self.h.ctx(), x)
    }

    /// The same projection with another image polynomial.
    pub fn with_h(&self, h: MPoly) -> Projection {
        Projection {
            h0: h.derivative(self.r),
            h,
            ..self.clone()
        }
    }
}

impl Serialize for Projection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Projection", 7)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("delta", &self.delta)?;
        st.serialize_field("lambda", &self.lambda)?;
        st.serialize_field("gamma", &self.gamma)?;
        st.serialize_field("h", &self.h.to_string())?;
        st.serialize_field("h0", &self.h0.to_string())?;
        st.serialize_field("tautological", &self.tautological)?;
        st.end()
    }
}

fn apply(k: &FieldCtx, lambda: &[Vec<Code>], gamma: &[Code], x: &[Code]) -> Vec<Code> {
    lambda
        .iter()
        .zip(gamma)
        .map(|(row, &g)| {
            row.iter()
                .zip(x)
                .fold(g, |s, (&l, &xi)| k.add(s, k.mul(l, xi)))
        })
        .collect()
}

/// Exponent vectors in `m` variables of total degree at most `d`, graded-lex ascending.
fn monomials(m: usize, d: u32) -> Vec<Exps> {
    fn rec(m: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(m, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, d, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| grlex_cmp(a, b));
    out
}

/// Values of `monos` at `y` over `k`.
fn monomial_values(k: &FieldCtx, monos: &[Exps], y: &[Code], d: u32) -> Vec<Code> {
    let powers: Vec<Vec<Code>> = y
        .iter()
        .map(|&v| {
            let mut p = vec![1; d as usize + 1];
            for i in 1..=d as usize {
                p[i] = k.mul(p[i - 1], v);
            }
            p
        })
        .collect();
    monos
        .iter()
        .map(|e| {
            e.iter()
                .enumerate()
                .fold(1, |acc, (i, &x)| k.mul(acc, powers[i][x as usize]))
        })
        .collect()
}

/// Keeps the nonzero rows of the reduced echelon form.
fn reduce(f: &FieldCtx, mut rows: Vec<Vec<Code>>, cols: usize) -> Vec<Vec<Code>> {
    let r = linalg::rref(f, &mut rows, cols).len();
    rows.truncate(r);
    rows
}

/// Points of `V` over `F_{q^t}` and their images.
struct Sample {
    field: FieldCtx,
    points: Vec<Vec<Code>>,
    images: Vec<Vec<Code>>,
}

fn sample(
    sys: &PolySystem,
    lambda: &[Vec<Code>],
    gamma: &[Code],
    t: u32,
    budget: u64,
) -> Result<Option<Sample>, ProjectError> {
    let base = sys.ctx();
    if (base.order() as u64).saturating_pow(t) > MAX_FIT_ORDER {
        return Ok(None);
    }
    let field = base.extension(t, DEFAULT_FIELD_SEED)?;
    let points = match counting::enumerate_points(&sys.embed(&field), budget) {
        Ok(p) => p,
        Err(CountError::BudgetExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let images = points
        .iter()
        .map(|x| apply(&field, lambda, gamma, x))
        .collect();
    Ok(Some(Sample {
        field,
        points,
        images,
    }))
}

/// Rows over `F_q` of the equations `sum_m c_m m(y) = rhs(y)` at the sampled points.
fn expand_rows(
    base: &FieldCtx,
    s: &Sample,
    monos: &[Exps],
    d: u32,
    rhs: impl Fn(usize) -> Option<Code>,
) -> Vec<Vec<Code>> {
    let t = (s.field.abs_degree() / base.abs_degree()) as usize;
    let mut rows = Vec::new();
    for (idx, y) in s.images.iter().enumerate() {
        let vals = monomial_values(&s.field, monos, y, d);
        let coords: Vec<Vec<Code>> = vals.iter().map(|&v| s.field.coords_over(v, base)).collect();
        let b = rhs(idx).map(|v| s.field.coords_over(v, base));
        for k in 0..t {
            let mut row: Vec<Code> = coords.iter().map(|c| c[k]).collect();
            if let Some(b) = &b {
                row.push(b[k]);
            }
            rows.push(row);
        }
    }
    rows
}

#[derive(Clone, Debug, Serialize)]
pub struct FitReport {
    #[serde(serialize_with = "ser_poly")]
    pub h: MPoly,
    /// Extension degrees visited and the solution-space dimension after each.
    pub dims: Vec<(u32, usize)>,
}

fn ser_poly<S: serde::Serializer>(p: &MPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// The image polynomial of degree at most `delta` for `y = lambda x + gamma`.
pub fn fit_image(
    sys: &PolySystem,
    lambda: &[Vec<Code>],
    gamma: &[Code],
    delta: u32,
) -> Result<MPoly, ProjectError> {
    Ok(fit_image_with(sys, lambda, gamma, delta, counting::budget_from_env())?.h)
}

/// As [`fit_image`], reporting the dimensions seen; `budget` caps each point enumeration.
///
/// The result is monic in `Y_{r+1}` when its leading coefficient in `Y_{r+1}` is a constant,
/// and has leading graded-lex coefficient 1 otherwise.
pub fn fit_image_with(
    sys: &PolySystem,
    lambda: &[Vec<Code>],
    gamma: &[Code],
    delta: u32,
    budget: u64,
) -> Result<FitReport, ProjectError> {
    check_shape(sys, lambda, gamma)?;
    let base = sys.ctx();
    let m = lambda.len();
    let monos = monomials(m, delta);
    let cols = monos.len();
    let mut basis: Vec<Vec<Code>> = Vec::new();
    let mut dims = Vec::new();
    let mut t = 1;
    loop {
        let Some(s) = sample(sys, lambda, gamma, t, budget)? else {
            let dim = dims.last().map(|&(_, d)| d).unwrap_or(cols);
            return Err(ProjectError::NotStabilized { t: t - 1, dim });
        };
        basis.extend(expand_rows(base, &s, &monos, delta, |_| None));
        basis = reduce(base, basis, cols);
        let dim = cols - basis.len();
        dims.push((t, dim));
        if dim == 0 {
            return Err(ProjectError::NoSolution { delta });
        }
        let stable = dims.len() >= 2 && dims[dims.len() - 2].1 == 1 && dim == 1;
        if stable {
            break;
        }
        t += 1;
    }
    let v = linalg::nullspace(base, &basis, cols)
        .pop()
        .expect("one-dimensional");
    let h = MPoly::from_terms(base, m, monos.iter().cloned().zip(v));
    Ok(FitReport {
        h: canonical(&h, m - 1),
        dims,
    })
}

fn canonical(h: &MPoly, last: usize) -> MPoly {
    let lead = h.coeff_in(last, h.degree_in(last).unwrap_or(0));
    if lead.is_constant() && !lead.is_zero() {
        h.scale(h.ctx().inv(lead.constant_term()))
    } else {
        h.make_monic()
    }
}

fn check_shape(sys: &PolySystem, lambda: &[Vec<Code>], gamma: &[Code]) -> Result<(), ProjectError> {
    if lambda.is_empty()
        || lambda.len() != gamma.len()
        || lambda.iter().any(|r| r.len() != sys.nvars())
    {
        return Err(ProjectError::InvalidInput(
            "lambda must be (r+1) x n and gamma of length r+1".into(),
        ));
    }
    Ok(())
}

/// Outcome of [`draw_projection`], with the reasons earlier draws were rejected.
#[derive(Clone, Debug, Serialize)]
pub struct Draw {
    pub projection: Projection,
    pub seed: u64,
    pub attempts: u32,
    pub rejections: Vec<String>,
}

/// `2 (r+1) delta^2`.
pub fn regularity_threshold(r: usize, delta: u32) -> u64 {
    2 * (r as u64 + 1) * (delta as u64).pow(2)
}

/// A seeded random projection of `V` (dimension `r`, degree `delta`) whose image polynomial is
/// monic of degree `delta` in `Y_{r+1}`, separable and vanishes on the image of `V(F_q)`.
///
/// A hypersurface (`r = n - 1`, one equation) gets the identity projection with `h = f`.
pub fn draw_projection(
    sys: &PolySystem,
    r: usize,
    delta: u32,
    seed: u64,
) -> Result<Draw, ProjectError> {
    draw_projection_with(sys, r, delta, seed, counting::budget_from_env())
}

pub fn draw_projection_with(
    sys: &PolySystem,
    r: usize,
    delta: u32,
    seed: u64,
    budget: u64,
) -> Result<Draw, ProjectError> {
    let n = sys.nvars();
    if r == 0 || r >= n {
        return Err(ProjectError::InvalidInput(format!(
            "need 1 <= r < n, got r = {r}, n = {n}"
        )));
    }
    let k = sys.ctx();
    if r + 1 == n && sys.polys().len() == 1 {
        return Ok(Draw {
            projection: tautological(sys, delta),
            seed,
            attempts: 0,
            rejections: Vec::new(),
        });
    }
    let q = k.order() as u64;
    let threshold = regularity_threshold(r, delta);
    if q <= threshold {
        return Err(ProjectError::RegularityViolated { q, threshold });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejections = Vec::new();
    for attempt in 1..=MAX_DRAWS {
        let lambda: Vec<Vec<Code>> = (0..=r)
            .map(|_| (0..n).map(|_| k.random(&mut rng)).collect())
            .collect();
        let gamma: Vec<Code> = (0..=r).map(|_| k.random(&mut rng)).collect();
        match accept(sys, r, delta, lambda, gamma, budget) {
            Ok(projection) => {
                return Ok(Draw {
                    projection,
                    seed,
                    attempts: attempt,
                    rejections,
                })
            }
            Err(reason) => rejections.push(reason),
        }
    }
    Err(ProjectError::RetriesExhausted {
        seed,
        attempts: MAX_DRAWS,
    })
}

fn tautological(sys: &PolySystem, delta: u32) -> Projection {
    let n = sys.nvars();
    let f = &sys.polys()[0];
    let h = canonical(f, n - 1);
    let lambda = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as Code).collect())
        .collect();
    Projection {
        tautological: true,
        ..Projection::new(n - 1, delta, lambda, vec![0; n], h)
    }
}

/// Fits and tests one draw; `Err` carries the rejection reason.
fn accept(
    sys: &PolySystem,
    r: usize,
    delta: u32,
    lambda: Vec<Vec<Code>>,
    gamma: Vec<Code>,
    budget: u64,
) -> Result<Projection, String> {
    let fit = fit_image_with(sys, &lambda, &gamma, delta, budget).map_err(|e| e.to_string())?;
    let h = fit.h;
    let mut lead = vec![0; r + 1];
    lead[r] = delta;
    if h.coeff(&lead) != 1 || h.total_degree() != Some(delta) {
        return Err(format!(
            "image polynomial {h} is not monic of degree {delta} in Y{}",
            r + 1
        ));
    }
    let p = Projection::new(r, delta, lambda, gamma, h);
    if p.h0.is_zero() {
        return Err("image polynomial is inseparable".into());
    }
    let k = sys.ctx();
    let mut witness = false;
    for x in counting::enumerate_points(sys, budget).map_err(|e| e.to_string())? {
        let y = p.apply(&x);
        if p.h.eval_in(k, &y) != 0 {
            return Err(format!("h does not vanish at the image of {x:?}"));
        }
        witness |= p.h0.eval_in(k, &y) != 0;
    }
    if !witness {
        return Err("no image point off the discriminant locus witnesses separability".into());
    }
    Ok(p)
}

/// Exact counts on both sides of the isomorphism off the discriminant locus.
#[derive(Clone, Debug, Serialize)]
pub struct BirationalReport {
    /// `#(V \ V1)(F_q)`.
    pub v_off: u64,
    /// `#(W \ W1)(F_q)`.
    pub w_off: u64,
    /// `#(V ∩ V1)(F_q)`.
    pub v_on: u64,
    /// `#(W ∩ W1)(F_q)`.
    pub w_on: u64,
    /// `delta (delta - 1) q^(r-1)`.
    pub ceiling: u64,
    pub injective: bool,
    pub surjective: bool,
}

/// `delta (delta - 1) q^(r-1)`.
pub fn discriminant_ceiling(q: u64, r: usize, delta: u32) -> u64 {
    let d = delta as u64;
    d * d.saturating_sub(1) * q.pow(r as u32 - 1)
}

/// Checks that `pi` maps `(V \ V1)(F_q)` bijectively onto `(W \ W1)(F_q)` and that both
/// discriminant loci respect their ceiling.
pub fn birational_check(
    sys: &PolySystem,
    proj: &Projection,
) -> Result<BirationalReport, ProjectError> {
    birational_check_with(sys, proj, counting::budget_from_env())
}

pub fn birational_check_with(
    sys: &PolySystem,
    proj: &Projection,
    budget: u64,
) -> Result<BirationalReport, ProjectError> {
    let k = sys.ctx();
    let q = k.order() as u64;
    let (mut v_off, mut v_on) = (0, 0);
    let mut images = HashSet::new();
    let mut injective = true;
    let mut outside = None;
    for x in counting::enumerate_points(sys, budget)? {
        let y = proj.apply(&x);
        if proj.h0.eval_in(k, &y) == 0 {
            v_on += 1;
            continue;
        }
        v_off += 1;
        if proj.h.eval_in(k, &y) != 0 {
            outside.get_or_insert(y.clone());
        }
        injective &= images.insert(y);
    }
    let (mut w_off, mut w_on) = (0, 0);
    let mut surjective = true;
    for y in counting::enumerate_points(&PolySystem::new(vec![proj.h.clone()])?, budget)? {
        if proj.h0.eval_in(k, &y) == 0 {
            w_on += 1;
        } else {
            w_off += 1;
            surjective &= images.contains(&y);
        }
    }
    let ceiling = discriminant_ceiling(q, proj.r, proj.delta);
    let rep = BirationalReport {
        v_off,
        w_off,
        v_on,
        w_on,
        ceiling,
        injective,
        surjective,
    };
    if let Some(y) = outside {
        return Err(ProjectError::BirationalityFailed(format!(
            "image point {y:?} is not on W"
        )));
    }
    if !injective || !surjective || v_off != w_off {
        return Err(ProjectError::BirationalityFailed(format!(
            "#(V\\V1) = {v_off}, #(W\\W1) = {w_off}, injective = {injective}, surjective = {surjective}"
        )));
    }
    if v_on > ceiling {
        return Err(ProjectError::DiscriminantCeiling {
            what: "V ∩ V1",
            count: v_on,
            ceiling,
        });
    }
    if w_on > ceiling {
        return Err(ProjectError::DiscriminantCeiling {
            what: "W ∩ W1",
            count: w_on,
            ceiling,
        });
    }
    Ok(rep)
}

/// Polynomials `v_i` with `v_i(pi(x)) = x_i h0(pi(x))` on `V`, so that `x = v(y) / h0(y)` off
/// the discriminant locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSection {
    pub projection: Projection,
    pub v: Vec<MPoly>,
}

impl InverseSection {
    /// Fits each `v_i` among polynomials of degree at most `deg h` whose `Y_{r+1}^delta`
    /// coefficient is zero, which removes the multiples of `h`.
    pub fn fit(sys: &PolySystem, proj: &Projection) -> Result<InverseSection, ProjectError> {
        InverseSection::fit_with(sys, proj, counting::budget_from_env())
    }

    pub fn fit_with(
        sys: &PolySystem,
        proj: &Projection,
        budget: u64,
    ) -> Result<InverseSection, ProjectError> {
        let base = sys.ctx();
        let n = sys.nvars();
        let m = proj.r + 1;
        let d = proj.h.total_degree().unwrap_or(0);
        let monos = monomials(m, d);
        let cols = monos.len();
        let mut pin = vec![0; m];
        pin[proj.r] = d;
        let pin_col = monos
            .iter()
            .position(|e| *e == pin)
            .expect("pinned monomial");
        let mut unit = vec![0; cols + 1];
        unit[pin_col] = 1;
        let mut bases: Vec<Vec<Vec<Code>>> = vec![vec![unit]; n];
        let mut prev: Option<Vec<Vec<Code>>> = None;
        let mut t = 1;
        loop {
            let Some(s) = sample(sys, &proj.lambda, &proj.gamma, t, budget)? else {
                return Err(ProjectError::FitFailed(format!(
                    "no stable solution by t = {}",
                    t - 1
                )));
            };
            let h0 = proj.h0.embed(&s.field);
            let h0y: Vec<Code> = s.images.iter().map(|y| h0.eval_in(&s.field, y)).collect();
            let mut sols = Vec::with_capacity(n);
            for (i, basis) in bases.iter_mut().enumerate() {
                let rows = expand_rows(base, &s, &monos, d, |idx| {
                    Some(s.field.mul(s.points[idx][i], h0y[idx]))
                });
                basis.extend(rows);
                *basis = reduce(base, std::mem::take(basis), cols + 1);
                if basis
                    .iter()
                    .any(|row| row[..cols].iter().all(|&c| c == 0) && row[cols] != 0)
                {
                    return Err(ProjectError::FitFailed(format!(
                        "no v_{} of degree <= {d} at t = {t}",
                        i + 1
                    )));
                }
                sols.push(if basis.len() == cols {
                    Some(linalg::solve(base, basis.clone(), cols))
                } else {
                    None
                });
            }
            let cur: Option<Vec<Vec<Code>>> = sols.into_iter().map(|s| s.flatten()).collect();
            if let (Some(a), Some(b)) = (&prev, &cur) {
                if a == b {
                    let v = b
                        .iter()
                        .map(|c| {
                            MPoly::from_terms(base, m, monos.iter().cloned().zip(c.iter().copied()))
                        })
                        .collect();
                    return Ok(InverseSection {
                        projection: proj.clone(),
                        v,
                    });
                }
            }
            prev = cur;
            t += 1;
        }
    }

    /// `v(y) / h0(y)`.
    pub fn apply(&self, y: &[Code]) -> Result<Vec<Code>, ProjectError> {
        inverse_section(self, y)
    }
}

/// The point of `V` over `y`, for `y` on `W` off the discriminant locus.
pub fn inverse_section(sec: &InverseSection, y: &[Code]) -> Result<Vec<Code>, ProjectError> {
    let k = sec.projection.h.ctx();
    if y.len() != sec.projection.r + 1 {
        return Err(ProjectError::InvalidInput(format!(
            "expected {} coordinates",
            sec.projection.r + 1
        )));
    }
    let d = sec.projection.h0.eval_in(k, y);
    if d == 0 {
        return Err(ProjectError::OnDiscriminant);
    }
    let inv = k.inv(d);
    Ok(sec.v.iter().map(|v| k.mul(v.eval_in(k, y), inv)).collect())
}

/// Rejection statistics of independent draws.
#[derive(Clone, Debug, Serialize)]
pub struct DrawStatistics {
    pub draws: u32,
    /// Single draws (one `(lambda, gamma)` each) that were rejected.
    pub rejected: u32,
    /// `2 (r+1) delta^2 / q`.
    pub ceiling: f64,
    /// Upper end of a 99% Wilson interval for the rejection rate.
    pub rate_upper: f64,
    pub consistent: bool,
}

/// Draws `draws` single projections with seeds `seed, seed + 1, ...` and counts rejections.
pub fn draw_statistics(
    sys: &PolySystem,
    r: usize,
    delta: u32,
    draws: u32,
    seed: u64,
) -> Result<DrawStatistics, ProjectError> {
    let k = sys.ctx();
    let q = k.order() as u64;
    let n = sys.nvars();
    let budget = counting::budget_from_env();
    let mut rejected = 0;
    for i in 0..draws {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let lambda: Vec<Vec<Code>> = (0..=r)
            .map(|_| (0..n).map(|_| k.random(&mut rng)).collect())
            .collect();
        let gamma: Vec<Code> = (0..=r).map(|_| k.random(&mut rng)).collect();
        if accept(sys, r, delta, lambda, gamma, budget).is_err() {
            rejected += 1;
        }
    }
    let ceiling = regularity_threshold(r, delta) as f64 / q as f64;
    let (low, rate_upper) =
        crate::bertini::wilson_interval(rejected as u64, draws as u64, crate::bertini::Z99);
    Ok(DrawStatistics {
        draws,
        rejected,
        ceiling,
        rate_upper,
        consistent: low <= ceiling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldCtx {
        FieldCtx::prime(q).unwrap()
    }

    fn cubic(q: u64) -> PolySystem {
        PolySystem::parse(&f(q), 3, &["X2 - X1^2", "X3 - X1^3"]).unwrap()
    }

    #[test]
    fn graph_and_cubic_fits() {
        let k = f(7);
        let v = PolySystem::parse(&k, 2, &["X2 - X1^2"]).unwrap();
        let h = fit_image(&v, &[vec![1, 0], vec![0, 1]], &[0, 0], 2).unwrap();
        assert_eq!(h, MPoly::parse(&k, 2, "X2 - X1^2").unwrap());
        let v = cubic(37);
        let rep = fit_image_with(&v, &[vec![1, 0, 0], vec![0, 0, 1]], &[0, 0], 3, 1 << 24).unwrap();
        assert_eq!(rep.h, MPoly::parse(&f(37), 2, "X2 - X1^3").unwrap());
        assert_eq!(rep.dims.last().unwrap().1, 1);
        assert_eq!(
            fit_image(&v, &[vec![1, 0, 0], vec![0, 0, 1]], &[0, 0], 1),
            Err(ProjectError::NoSolution { delta: 1 })
        );
    }

    #[test]
    fn draw_check_and_invert() {
        let v = cubic(37);
        let d = draw_projection(&v, 1, 3, 11).unwrap();
        let p = &d.projection;
        assert_eq!(p.h.degree_in(1), Some(3));
        let rep = birational_check(&v, p).unwrap();
        assert_eq!(rep.v_off, rep.w_off);
        assert!(rep.v_on <= 6 && rep.w_on <= 6);
        let sec = InverseSection::fit(&v, p).unwrap();
        let k = v.ctx();
        for x in counting::enumerate_points(&v, 1 << 20).unwrap() {
            let y = p.apply(&x);
            if p.h0.eval_in(k, &y) != 0 {
                assert_eq!(sec.apply(&y).unwrap(), x);
            } else {
                assert_eq!(sec.apply(&y), Err(ProjectError::OnDiscriminant));
            }
        }
        let bad = p.with_h(p.h.checked_add(&MPoly::var(k, 2, 0)).unwrap());
        assert!(matches!(
            birational_check(&v, &bad),
            Err(ProjectError::BirationalityFailed(_))
        ));
    }

    #[test]
    fn thresholds_and_hypersurfaces() {
        assert_eq!(
            draw_projection(&cubic(5), 1, 3, 0).unwrap_err(),
            ProjectError::RegularityViolated {
                q: 5,
                threshold: 36
            }
        );
        let v = PolySystem::parse(&f(5), 3, &["X3 - X1*X2"]).unwrap();
        let d = draw_projection(&v, 2, 2, 0).unwrap();
        assert!(d.projection.tautological);
        let rep = birational_check(&v, &d.projection).unwrap();
        assert_eq!(rep.v_off, rep.w_off);
        assert_eq!(monomials(2, 2).len(), 6);
    }
}
