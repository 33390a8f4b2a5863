//! Seeded campaigns: random absolutely irreducible hypersurfaces, exact point counts and every
//! applicable bound, with one row per instance and bound.
//!
//! CSV columns, in order: `instance, field, q, n, delta, seed, polynomial, points, deviation,
//! formula, direction, value, applicable, asserted, margin, pass`. `value` carries the
//! rounding marker of [`BoundValue::format`]; `margin` is `bound - deviation` for upper bounds
//! and `points - bound` for lower bounds, rounded down to 12 significant digits.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, format_sig, BoundValue, Direction, Evaluator, Magnitude};
use crate::counting::{self, CountError};
use crate::factor::{self, FactorError};
use crate::gf::{prime_power, FieldCtx, GfError};
use crate::mpoly::{MPoly, PlaneParam, PolyError};

/// Candidates drawn by [`gen_abs_irreducible`] before giving up.
pub const MAX_CANDIDATES: u32 = 1000;
/// Planes tried per candidate when certifying in three or more variables.
const PLANES_PER_CANDIDATE: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CampaignError {
    #[error(
        "no certified absolutely irreducible polynomial in {attempts} candidates (seed {seed})"
    )]
    GenerationExhausted { seed: u64, attempts: u32 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A random polynomial of total degree `delta`: uniform coefficients on every monomial of
/// degree at most `delta`, redrawn until the degree-`delta` part is nonzero.
pub fn random_poly<R: Rng + ?Sized>(ctx: &FieldCtx, n: usize, delta: u32, rng: &mut R) -> MPoly {
    let monos = monomials(n, delta);
    loop {
        let p = MPoly::from_terms(ctx, n, monos.iter().map(|e| (e.clone(), ctx.random(rng))));
        if p.total_degree() == Some(delta) {
            return p;
        }
    }
}

fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=d - used).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out
}

/// Whether `f` is certified absolutely irreducible by the test of [`gen_abs_irreducible`].
pub fn certify<R: Rng + ?Sized>(f: &MPoly, rng: &mut R) -> Result<bool, CampaignError> {
    let delta = f.total_degree().unwrap_or(0);
    if delta == 0 {
        return Ok(false);
    }
    if f.nvars() == 2 {
        return Ok(factor::is_absolutely_irreducible(f)?);
    }
    for _ in 0..PLANES_PER_CANDIDATE {
        let plane = crate::bertini::random_plane(f.ctx(), f.nvars(), rng);
        let f_l = plane.restrict(f)?;
        if f_l.total_degree() == Some(delta) && factor::is_absolutely_irreducible(&f_l)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A seeded random polynomial of degree `delta` in `n >= 2` variables, certified absolutely
/// irreducible: directly when `n = 2`, otherwise by a plane restriction of the same degree
/// that is absolutely irreducible.
pub fn gen_abs_irreducible(
    ctx: &FieldCtx,
    n: usize,
    delta: u32,
    seed: u64,
) -> Result<MPoly, CampaignError> {
    if n < 2 || delta < 1 {
        return Err(CampaignError::InvalidConfig(format!(
            "need n >= 2 and delta >= 1, got n = {n}, delta = {delta}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_CANDIDATES {
        let f = random_poly(ctx, n, delta, &mut rng);
        if certify(&f, &mut rng)? {
            return Ok(f);
        }
    }
    Err(CampaignError::GenerationExhausted {
        seed,
        attempts: MAX_CANDIDATES,
    })
}

/// A plane restriction certifying `f`, found by exhaustive search in lexicographic order.
pub fn certificate_plane(f: &MPoly) -> Result<Option<PlaneParam>, CampaignError> {
    let delta = f.total_degree().unwrap_or(0);
    let n = f.nvars();
    for idx in 0..PlaneParam::tuple_count(f.ctx().order() as u64, n) {
        let plane = PlaneParam::from_index(f.ctx(), n, idx);
        if plane.is_degenerate() {
            continue;
        }
        let f_l = plane.restrict(f)?;
        if f_l.total_degree() == Some(delta) && factor::is_absolutely_irreducible(&f_l)? {
            return Ok(Some(plane));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignConfig {
    /// Field specs such as `7` or `3^2`.
    pub fields: Vec<String>,
    pub nvars: usize,
    pub min_degree: u32,
    pub max_degree: u32,
    pub instances: usize,
    pub seed: u64,
    /// Formula ids to assert; `None` asserts every applicable bound.
    pub assert: Option<Vec<String>>,
    pub budget: u64,
}

impl CampaignConfig {
    fn validate(&self) -> Result<(), CampaignError> {
        if self.fields.is_empty()
            || self.nvars < 2
            || self.min_degree < 1
            || self.min_degree > self.max_degree
        {
            return Err(CampaignError::InvalidConfig(
                "need at least one field, nvars >= 2 and 1 <= min_degree <= max_degree".into(),
            ));
        }
        if let Some(ids) = &self.assert {
            let known: Vec<&str> = bounds::catalog()
                .iter()
                .map(|f| f.id)
                .chain(["hypersurface_zero"])
                .collect();
            if let Some(bad) = ids.iter().find(|i| !known.contains(&i.as_str())) {
                return Err(CampaignError::InvalidConfig(format!(
                    "unknown formula {bad}"
                )));
            }
        }
        Ok(())
    }

    /// Field and degree of instance `i`: fields cycle fastest, then degrees.
    pub fn instance(&self, i: usize) -> InstanceSpec {
        let nd = (self.max_degree - self.min_degree + 1) as usize;
        InstanceSpec {
            index: i,
            field: self.fields[i % self.fields.len()].clone(),
            nvars: self.nvars,
            delta: self.min_degree + ((i / self.fields.len()) % nd) as u32,
            seed: instance_seed(self.seed, i as u64),
        }
    }
}

/// SplitMix64 step of `seed + i`.
fn instance_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add(i.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Everything needed to replay one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub index: usize,
    pub field: String,
    pub nvars: usize,
    pub delta: u32,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub formula: &'static str,
    pub direction: Direction,
    pub value: String,
    pub applicable: bool,
    pub asserted: bool,
    pub margin: String,
    pub pass: bool,
    /// `deviation / bound` for upper bounds stored exactly.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceRow {
    pub spec: InstanceSpec,
    pub q: u64,
    pub polynomial: String,
    pub points: u64,
    /// `|N - q^(n-1)|`.
    pub deviation: String,
    pub checks: Vec<BoundCheck>,
}

impl InstanceRow {
    pub fn violations(&self) -> usize {
        self.checks.iter().filter(|c| c.asserted && !c.pass).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub violations: usize,
    /// Largest `deviation / bound` over asserted upper bounds.
    pub tightest_ratio: f64,
    pub tightest_instance: Option<usize>,
    pub tightest_formula: Option<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub rows: Vec<InstanceRow>,
    pub summary: Summary,
}

/// Bounds evaluated for an absolutely irreducible hypersurface, each with its applicability.
///
/// The lower bound of Schmidt and the estimate of Huang and Wong hold under a regularity
/// condition with an unspecified constant, so they are reported but never applicable.
pub fn hypersurface_bounds(q: u64, n: u32, delta: u32) -> Vec<(BoundValue, bool)> {
    let ev = Evaluator::default();
    let p = prime_power(q).map(|(p, _)| p).unwrap_or(q);
    let mut out = Vec::new();
    if n == 2 {
        out.push((ev.weil_curve(q, delta), true));
    }
    out.push((ev.cm_hypersurface(q, n, delta), true));
    out.push(ev.cm_hypersurface_regular(q, n, delta));
    out.push((ev.ghorpade_lachaud_hyper(q, n, delta), true));
    let (l74, h76) = ev.schmidt_bounds(q, n, delta);
    out.push((h76, true));
    out.push((l74, false));
    out.push((ev.huang_wong(q, n, delta), false));
    out.extend(ev.gao_variants(q, n, None, delta, p));
    out
}

fn check_bound(
    b: BoundValue,
    applicable: bool,
    points: u64,
    deviation: &BigRational,
    assert: &Option<Vec<String>>,
) -> BoundCheck {
    let asserted = applicable
        && assert
            .as_ref()
            .is_none_or(|ids| ids.iter().any(|i| i == b.formula));
    let (pass, margin) = match b.direction {
        Direction::RoundUp => (b.admits(deviation), margin_of(&b, deviation, true)),
        Direction::RoundDown => {
            let n = BigRational::from_integer(BigInt::from(points));
            (b.admits(&n), margin_of(&b, &n, false))
        }
    };
    let ratio = match (b.direction, b.value()) {
        (Direction::RoundUp, Some(v)) if v > &BigRational::from_integer(0.into()) => {
            (deviation / v).to_f64()
        }
        _ => None,
    };
    BoundCheck {
        formula: b.formula,
        direction: b.direction,
        value: b.format(),
        applicable,
        asserted,
        margin,
        pass,
        ratio,
    }
}

fn margin_of(b: &BoundValue, x: &BigRational, upper: bool) -> String {
    match (&b.magnitude, b.value()) {
        (Magnitude::Rational(_), Some(v)) => {
            let m = if upper { v - x } else { x - v };
            format_sig(&m, bounds::SIG_DIGITS, false)
        }
        _ => match b.direction {
            Direction::RoundUp => "inf".into(),
            Direction::RoundDown => "-inf".into(),
        },
    }
}

/// Generates, counts and checks one instance.
pub fn run_instance(
    spec: &InstanceSpec,
    assert: &Option<Vec<String>>,
    budget: u64,
) -> Result<InstanceRow, CampaignError> {
    let ctx = FieldCtx::from_spec(&spec.field)?;
    let f = gen_abs_irreducible(&ctx, spec.nvars, spec.delta, spec.seed)?;
    let q = ctx.order() as u64;
    let n = spec.nvars as u32;
    let points = counting::count_hypersurface_fast_with(&f, budget, counting::AUDIT_SEED)?.count;
    let main = bounds::main_term(1, q, n - 1);
    let deviation = bounds::deviation(points, &main);
    let mut checks: Vec<BoundCheck> = hypersurface_bounds(q, n, spec.delta)
        .into_iter()
        .map(|(b, applicable)| check_bound(b, applicable, points, &deviation, assert))
        .collect();
    let zero = Evaluator::default()
        .existence_thresholds(spec.delta, None)
        .hypersurface_zero;
    let above = zero
        .value()
        .is_some_and(|t| BigRational::from_integer(BigInt::from(q)) > *t);
    let asserted = above
        && assert
            .as_ref()
            .is_none_or(|ids| ids.iter().any(|i| i == "hypersurface_zero"));
    checks.push(BoundCheck {
        formula: "hypersurface_zero",
        direction: Direction::RoundUp,
        value: zero.format(),
        applicable: above,
        asserted,
        margin: points.to_string(),
        pass: !above || points >= 1,
        ratio: None,
    });
    Ok(InstanceRow {
        spec: spec.clone(),
        q,
        polynomial: f.to_string(),
        points,
        deviation: deviation.to_string(),
        checks,
    })
}

/// Runs every instance in parallel; rows are ordered by instance index.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport, CampaignError> {
    config.validate()?;
    let specs: Vec<InstanceSpec> = (0..config.instances).map(|i| config.instance(i)).collect();
    let rows: Vec<InstanceRow> = specs
        .par_iter()
        .map(|s| run_instance(s, &config.assert, config.budget))
        .collect::<Result<_, _>>()?;
    let violations = rows.iter().map(InstanceRow::violations).sum();
    let mut tightest = (0.0f64, None, None);
    for row in &rows {
        for c in row.checks.iter().filter(|c| c.asserted) {
            let ratio = c.ratio.unwrap_or(0.0);
            if ratio > tightest.0 {
                tightest = (ratio, Some(row.spec.index), Some(c.formula));
            }
        }
    }
    let summary = Summary {
        instances: rows.len(),
        violations,
        tightest_ratio: tightest.0,
        tightest_instance: tightest.1,
        tightest_formula: tightest.2,
    };
    Ok(CampaignReport {
        config: config.clone(),
        rows,
        summary,
    })
}

pub const CSV_HEADER: [&str; 16] = [
    "instance",
    "field",
    "q",
    "n",
    "delta",
    "seed",
    "polynomial",
    "points",
    "deviation",
    "formula",
    "direction",
    "value",
    "applicable",
    "asserted",
    "margin",
    "pass",
];

/// The report as CSV, one line per instance and bound.
pub fn to_csv(report: &CampaignReport) -> Result<String, CampaignError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CampaignError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for row in &report.rows {
        for c in &row.checks {
            w.write_record([
                row.spec.index.to_string(),
                row.spec.field.clone(),
                row.q.to_string(),
                row.spec.nvars.to_string(),
                row.spec.delta.to_string(),
                row.spec.seed.to_string(),
                row.polynomial.clone(),
                row.points.to_string(),
                row.deviation.clone(),
                c.formula.to_string(),
                format!("{:?}", c.direction),
                c.value.clone(),
                c.applicable.to_string(),
                c.asserted.to_string(),
                c.margin.clone(),
                c.pass.to_string(),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CampaignError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CampaignError::Io(e.to_string()))
}

/// Writes `<stem>.json` and `<stem>.csv`.
pub fn write_report(report: &CampaignReport, stem: &Path) -> Result<(), CampaignError> {
    let io = |e: std::io::Error| CampaignError::Io(e.to_string());
    let json =
        serde_json::to_string_pretty(report).map_err(|e| CampaignError::Io(e.to_string()))?;
    std::fs::write(stem.with_extension("json"), json + "\n").map_err(io)?;
    std::fs::write(stem.with_extension("csv"), to_csv(report)?).map_err(io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(q: u64) -> FieldCtx {
        FieldCtx::prime(q).unwrap()
    }

    #[test]
    fn generator_examples() {
        let f = gen_abs_irreducible(&k(5), 2, 1, 1).unwrap();
        assert_eq!(f.total_degree(), Some(1));
        let x2y2 = MPoly::parse(&k(3), 2, "X^2 + Y^2").unwrap();
        for seed in 0..40 {
            let f = gen_abs_irreducible(&k(3), 2, 2, seed).unwrap();
            assert!(f.make_monic() != x2y2);
            assert!(factor::is_absolutely_irreducible(&f).unwrap());
        }
        let f = MPoly::parse(&k(5), 3, "X1^2 + X2^2 + X3").unwrap();
        assert!(certificate_plane(&f).unwrap().is_some());
        let g = gen_abs_irreducible(&k(5), 3, 2, 9).unwrap();
        assert_eq!(g.total_degree(), Some(2));
        assert_eq!(g, gen_abs_irreducible(&k(5), 3, 2, 9).unwrap());
    }

    #[test]
    fn linear_campaign_has_zero_margin_deviation() {
        let cfg = CampaignConfig {
            fields: vec!["5".into(), "7".into()],
            nvars: 3,
            min_degree: 1,
            max_degree: 1,
            instances: 4,
            seed: 3,
            assert: None,
            budget: 1 << 30,
        };
        let rep = run_campaign(&cfg).unwrap();
        assert_eq!(rep.summary.violations, 0);
        for row in &rep.rows {
            assert_eq!(row.points, row.q.pow(2));
            assert_eq!(row.deviation, "0");
        }
        let again = run_campaign(&cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&rep).unwrap(),
            serde_json::to_string(&again).unwrap()
        );
        let replay = run_instance(&cfg.instance(2), &None, cfg.budget).unwrap();
        assert_eq!(replay, rep.rows[2]);
        assert!(to_csv(&rep)
            .unwrap()
            .starts_with("instance,field,q,n,delta"));
    }
}
