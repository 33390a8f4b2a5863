//! Plane sections of hypersurfaces: classification of parametrized planes by the number of
//! absolutely irreducible `F_q`-definable factors of the restriction, exhaustive and sampled
//! sweeps, and the plane-count inequalities checked against the exhaustive histograms.
//!
//! A parametrization `(nu, omega, eta)` restricts `f` to `f_L`. With `nu(L)` the number of
//! absolutely irreducible `F_q`-definable factors of `f_L`, the class is `|nu(L) - 1|`, or the
//! vanishing class `q - 1` when `f_L = 0`. Tuples with `eta = 0` describe no plane; they are
//! tallied as degenerate and enter only the tuple-space ceilings.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, BoundValue, BoundsError, Evaluator};
use crate::factor::{self, FactorError};
use crate::gf::{Code, FieldCtx};
use crate::mpoly::{MPoly, PlaneParam, PolyError};

/// Blocks per parallel sweep.
const BLOCKS: u64 = 64;
/// Two-sided normal quantile for 99% intervals.
pub const Z99: f64 = 2.575_829_303_548_901;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BertiniError {
    #[error("eta = 0: the parametrization does not describe a plane")]
    DegenerateEta,
    #[error("budget exceeded: {required} tuples required, budget is {budget}")]
    BudgetExceeded { budget: u64, required: u128 },
    #[error("{check} violated: observed {observed}, ceiling {ceiling}")]
    CeilingViolated {
        check: String,
        observed: String,
        ceiling: String,
    },
    #[error("class {class} has {count} parametrizations, not a multiple of {per_plane}")]
    NotDivisible {
        class: String,
        count: u64,
        per_plane: u64,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Class of a plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PiClass {
    /// `|nu - 1| = j`.
    Factors(u32),
    /// `f_L = 0`; the class written `q - 1`.
    Vanishing,
}

impl PiClass {
    /// The class index, with `q - 1` for the vanishing class.
    pub fn index(self, q: u64) -> u64 {
        match self {
            PiClass::Factors(j) => j as u64,
            PiClass::Vanishing => q - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: PiClass,
    /// `None` when `f_L = 0`.
    pub nu: Option<u32>,
    pub restriction: MPoly,
}

/// Class of the plane `L`; `f` is assumed absolutely irreducible.
pub fn classify_parametrization(
    f: &MPoly,
    plane: &PlaneParam,
) -> Result<Classification, BertiniError> {
    if plane.is_degenerate() {
        return Err(BertiniError::DegenerateEta);
    }
    let f_l = plane.restrict(f)?;
    if f_l.is_zero() {
        return Ok(Classification {
            class: PiClass::Vanishing,
            nu: None,
            restriction: f_l,
        });
    }
    let nu = factor::count_abs_irr_fq_factors(&f_l)?;
    Ok(Classification {
        class: PiClass::Factors(nu.abs_diff(1)),
        nu: Some(nu),
        restriction: f_l,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Unit {
    Parametrizations,
    Planes,
}

/// Class counts. `counts` holds the classes `|nu - 1|`, `vanishing` the class `q - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiHistogram {
    pub q: u64,
    pub n: usize,
    pub delta: u32,
    pub unit: Unit,
    pub counts: BTreeMap<u32, u64>,
    pub vanishing: u64,
    /// Raw distribution of `nu`, which separates `nu = 0` from `nu = 2` inside class 1.
    pub nu: BTreeMap<u32, u64>,
    /// Classified parametrizations or planes; equals the sum of `counts` and `vanishing`.
    pub total: u64,
    /// Tuples with `eta = 0`, outside the classes.
    pub degenerate: u64,
}

impl PiHistogram {
    fn empty(q: u64, n: usize, delta: u32, unit: Unit) -> PiHistogram {
        PiHistogram {
            q,
            n,
            delta,
            unit,
            counts: BTreeMap::new(),
            vanishing: 0,
            nu: BTreeMap::new(),
            total: 0,
            degenerate: 0,
        }
    }

    fn record(&mut self, c: &Classification) {
        self.record_class(c.class, c.nu);
    }

    fn record_class(&mut self, class: PiClass, nu: Option<u32>) {
        match class {
            PiClass::Factors(j) => *self.counts.entry(j).or_default() += 1,
            PiClass::Vanishing => self.vanishing += 1,
        }
        if let Some(nu) = nu {
            *self.nu.entry(nu).or_default() += 1;
        }
        self.total += 1;
    }

    fn merge(&mut self, o: &PiHistogram) {
        for (&j, &c) in &o.counts {
            *self.counts.entry(j).or_default() += c;
        }
        for (&v, &c) in &o.nu {
            *self.nu.entry(v).or_default() += c;
        }
        self.vanishing += o.vanishing;
        self.total += o.total;
        self.degenerate += o.degenerate;
    }

    pub fn count(&self, class: PiClass) -> u64 {
        match class {
            PiClass::Factors(j) => self.counts.get(&j).copied().unwrap_or(0),
            PiClass::Vanishing => self.vanishing,
        }
    }

    /// `sum_j j #(Pi_j)` over the nonvanishing classes.
    pub fn weighted_sum(&self) -> u64 {
        self.counts.iter().map(|(&j, &c)| j as u64 * c).sum()
    }
}

/// One inequality of a sweep or accounting report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub observed: String,
    pub ceiling: String,
    pub holds: bool,
}

impl Check {
    fn rational(name: impl Into<String>, observed: &BigRational, ceiling: &BigRational) -> Check {
        Check {
            name: name.into(),
            observed: observed.to_string(),
            ceiling: ceiling.to_string(),
            holds: observed <= ceiling,
        }
    }

    fn bound(name: impl Into<String>, observed: u64, ceiling: &BoundValue) -> Check {
        Check {
            name: name.into(),
            observed: observed.to_string(),
            ceiling: ceiling.format(),
            holds: ceiling.admits_int(observed as i128),
        }
    }

    fn into_result(self) -> Result<Check, BertiniError> {
        if self.holds {
            Ok(self)
        } else {
            Err(BertiniError::CeilingViolated {
                check: self.name,
                observed: self.observed,
                ceiling: self.ceiling,
            })
        }
    }
}

/// What a sweep needs to know about one restriction.
#[derive(Clone, Copy, Debug)]
struct Info {
    class: PiClass,
    nu: Option<u32>,
    abs_irreducible: bool,
    /// Smallest degree of a closure factor: 0 for `f_L = 0`, `u32::MAX` for nonzero constants.
    min_closure_degree: u32,
}

fn restriction_info(f_l: &MPoly) -> Result<Info, BertiniError> {
    if f_l.is_zero() {
        return Ok(Info {
            class: PiClass::Vanishing,
            nu: None,
            abs_irreducible: false,
            min_closure_degree: 0,
        });
    }
    let nu = factor::count_abs_irr_fq_factors(f_l)?;
    let (abs_irreducible, min_closure_degree) = if f_l.is_constant() {
        (false, u32::MAX)
    } else {
        let closure = factor::closure_factors(f_l)?;
        let min = closure
            .iter()
            .filter_map(|g| g.total_degree())
            .min()
            .unwrap_or(u32::MAX);
        (
            closure.len() == 1 && closure[0].total_degree() == f_l.total_degree(),
            min,
        )
    };
    Ok(Info {
        class: PiClass::Factors(nu.abs_diff(1)),
        nu: Some(nu),
        abs_irreducible,
        min_closure_degree,
    })
}

/// Tallies of one block of tuples.
#[derive(Clone, Debug)]
struct Tally {
    hist: PiHistogram,
    not_abs_irr: u64,
    /// Planes (nondegenerate tuples) with a restriction that is not absolutely irreducible.
    not_abs_irr_planes: u64,
    /// `small_factor[k]`: tuples with a closure factor of degree at most `k + 1`.
    small_factor: Vec<u64>,
}

impl Tally {
    fn new(q: u64, n: usize, delta: u32, max_d: u32) -> Tally {
        Tally {
            hist: PiHistogram::empty(q, n, delta, Unit::Parametrizations),
            not_abs_irr: 0,
            not_abs_irr_planes: 0,
            small_factor: vec![0; max_d as usize],
        }
    }

    fn add(&mut self, info: &Info, degenerate: bool) {
        if !info.abs_irreducible {
            self.not_abs_irr += 1;
            if !degenerate {
                self.not_abs_irr_planes += 1;
            }
        }
        for (k, c) in self.small_factor.iter_mut().enumerate() {
            if info.min_closure_degree <= k as u32 + 1 {
                *c += 1;
            }
        }
        if degenerate {
            self.hist.degenerate += 1;
        } else {
            self.hist.record_class(info.class, info.nu);
        }
    }

    fn merge(&mut self, o: &Tally) {
        self.hist.merge(&o.hist);
        self.not_abs_irr += o.not_abs_irr;
        self.not_abs_irr_planes += o.not_abs_irr_planes;
        for (a, b) in self.small_factor.iter_mut().zip(&o.small_factor) {
            *a += b;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepOptions {
    pub budget: u64,
    /// Largest `D` of the small-factor ceilings; defaults to `delta - 1`.
    pub max_degree: Option<u32>,
}

impl Default for SweepOptions {
    fn default() -> SweepOptions {
        SweepOptions {
            budget: crate::counting::budget_from_env(),
            max_degree: None,
        }
    }
}

/// Count of tuples with a closure factor of degree at most `d`, against its ceiling.
#[derive(Clone, Debug, Serialize)]
pub struct SmallFactorCount {
    pub d: u32,
    pub count: u64,
    pub check: Check,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub histogram: PiHistogram,
    /// `q^(3n-2)`, including `eta = 0`.
    pub tuples: u64,
    /// Tuples whose restriction is not absolutely irreducible.
    pub not_abs_irreducible: u64,
    /// The same among tuples with `eta != 0`.
    pub not_abs_irreducible_planes: u64,
    pub not_abs_irreducible_check: Option<Check>,
    pub small_factors: Vec<SmallFactorCount>,
}

fn delta_of(f: &MPoly) -> Result<u32, BertiniError> {
    match f.total_degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(BertiniError::InvalidInput("f must be nonconstant".into())),
    }
}

fn validate(f: &MPoly) -> Result<(u64, usize, u32), BertiniError> {
    let n = f.nvars();
    if n < 2 {
        return Err(BertiniError::InvalidInput(format!("need n >= 2, got {n}")));
    }
    Ok((f.ctx().order() as u64, n, delta_of(f)?))
}

/// Classifies every tuple of `F_q^{3n-2}`, checking the tuple-space ceilings.
pub fn exhaustive_sweep(f: &MPoly) -> Result<SweepReport, BertiniError> {
    exhaustive_sweep_with(f, &SweepOptions::default())
}

pub fn exhaustive_sweep_with(f: &MPoly, opts: &SweepOptions) -> Result<SweepReport, BertiniError> {
    let (q, n, delta) = validate(f)?;
    let tuples = (q as u128).pow(3 * n as u32 - 2);
    if tuples > opts.budget as u128 {
        return Err(BertiniError::BudgetExceeded {
            budget: opts.budget,
            required: tuples,
        });
    }
    let tuples = tuples as u64;
    let max_d = opts
        .max_degree
        .unwrap_or(delta.saturating_sub(1))
        .min(delta.saturating_sub(1));
    let ctx = f.ctx().clone();
    let chunk = tuples.div_ceil(BLOCKS).max(1);
    let blocks: Vec<u64> = (0..tuples.div_ceil(chunk)).collect();
    let parts: Vec<Result<Tally, BertiniError>> = blocks
        .par_iter()
        .map(|&b| {
            let mut tally = Tally::new(q, n, delta, max_d);
            let mut cache: HashMap<MPoly, Info> = HashMap::new();
            for idx in b * chunk..((b + 1) * chunk).min(tuples) {
                let plane = PlaneParam::from_index(&ctx, n, idx);
                let f_l = plane.restrict(f)?;
                let info = match cache.get(&f_l) {
                    Some(i) => *i,
                    None => {
                        let i = restriction_info(&f_l)?;
                        cache.insert(f_l, i);
                        i
                    }
                };
                tally.add(&info, plane.is_degenerate());
            }
            Ok(tally)
        })
        .collect();
    let mut tally = Tally::new(q, n, delta, max_d);
    for p in parts {
        tally.merge(&p?);
    }

    let scale = BigRational::from_integer(BigInt::from(q).pow(3 * n as u32 - 3));
    let mut not_abs_irreducible_check = None;
    let mut small_factors = Vec::new();
    if delta >= 2 {
        let db = bounds::bertini_degree_bounds(delta, None)?;
        let c = Check::rational(
            "tuples_not_abs_irreducible",
            &int(tally.not_abs_irr),
            &(db.xi_deg * &scale),
        );
        not_abs_irreducible_check = Some(c.into_result()?);
        for d in 1..=max_d {
            let db = bounds::bertini_degree_bounds(delta, Some(d))?;
            let ceiling = db.xi_d_deg.expect("D given") * &scale;
            let count = tally.small_factor[d as usize - 1];
            let check = Check::rational(
                format!("tuples_closure_factor_deg_le_{d}"),
                &int(count),
                &ceiling,
            )
            .into_result()?;
            small_factors.push(SmallFactorCount { d, count, check });
        }
    }
    Ok(SweepReport {
        histogram: tally.hist,
        tuples,
        not_abs_irreducible: tally.not_abs_irr,
        not_abs_irreducible_planes: tally.not_abs_irr_planes,
        not_abs_irreducible_check,
        small_factors,
    })
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Estimate of a ratio with a 99% interval.
#[derive(Clone, Debug, Serialize)]
pub struct RatioEstimate {
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Ceiling from the plane-count inequalities, when defined.
    pub ceiling: Option<f64>,
    /// True iff the ceiling is at least the lower end of the interval. Report only.
    pub consistent: bool,
}

impl RatioEstimate {
    fn new(estimate: f64, ci_low: f64, ci_high: f64, ceiling: Option<f64>) -> RatioEstimate {
        let consistent = ceiling.is_none_or(|c| ci_low <= c);
        RatioEstimate {
            estimate,
            ci_low,
            ci_high,
            ceiling,
            consistent,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub seed: u64,
    pub samples: u64,
    pub histogram: PiHistogram,
    /// Estimate of `sum_j j #(Pi_j) / A`.
    pub b_over_a: RatioEstimate,
    /// Estimate of `#(Pi_{q-1}) / A`.
    pub c_over_a: RatioEstimate,
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> (f64, f64) {
    let (k, n) = (k as f64, n as f64);
    let p = k / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// A uniformly random tuple with `eta != 0`.
pub fn random_plane<R: Rng + ?Sized>(ctx: &FieldCtx, n: usize, rng: &mut R) -> PlaneParam {
    let q = ctx.order() as u64;
    let nu: Vec<Code> = (0..n).map(|_| ctx.random(rng)).collect();
    let omega: Vec<Code> = (0..n - 1).map(|_| ctx.random(rng)).collect();
    let mut e = rng.gen_range(1..q.pow(n as u32 - 1));
    let mut eta = vec![0; n - 1];
    for c in eta.iter_mut().rev() {
        *c = (e % q) as Code;
        e /= q;
    }
    PlaneParam::new(nu, omega, eta)
}

/// Classifies `samples` seeded uniform planes and estimates the class ratios.
pub fn sampled_sweep(f: &MPoly, samples: u64, seed: u64) -> Result<SampleReport, BertiniError> {
    let (q, n, delta) = validate(f)?;
    if samples == 0 {
        return Err(BertiniError::InvalidInput(
            "samples must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planes: Vec<PlaneParam> = (0..samples)
        .map(|_| random_plane(f.ctx(), n, &mut rng))
        .collect();
    let classes: Vec<Result<Classification, BertiniError>> = planes
        .par_iter()
        .map(|l| classify_parametrization(f, l))
        .collect();
    let mut hist = PiHistogram::empty(q, n, delta, Unit::Parametrizations);
    for c in classes {
        hist.record(&c?);
    }

    let ns = samples as f64;
    let js: Vec<f64> = hist
        .counts
        .iter()
        .map(|(&j, &c)| (j as f64, c as f64))
        .map(|(j, c)| j * c)
        .collect();
    let mean = js.iter().sum::<f64>() / ns;
    let second = hist
        .counts
        .iter()
        .map(|(&j, &c)| (j as f64).powi(2) * c as f64)
        .sum::<f64>()
        / ns;
    let sd = (second - mean * mean).max(0.0).sqrt();
    let half = Z99 * sd / ns.sqrt();
    let jmax = delta.saturating_sub(1).max(1) as f64;
    let stats = bounds::plane_statistics(q, n as u32)?;
    let b_ceiling = if delta >= 2 {
        let w = Evaluator::default()
            .pi_class_bounds(delta, q, n as u32, 1)?
            .weighted_sum;
        Some(w.to_f64() / num_traits::ToPrimitive::to_f64(&stats.a).unwrap_or(f64::INFINITY))
    } else {
        None
    };
    let b_over_a = RatioEstimate::new(
        mean,
        (mean - half).max(0.0),
        (mean + half).min(jmax),
        b_ceiling,
    );
    let (lo, hi) = wilson_interval(hist.vanishing, samples, Z99);
    let c_ceiling = num_traits::ToPrimitive::to_f64(&stats.c_over_a_ceiling(delta));
    let c_over_a = RatioEstimate::new(hist.vanishing as f64 / ns, lo, hi, c_ceiling);
    Ok(SampleReport {
        seed,
        samples,
        histogram: hist,
        b_over_a,
        c_over_a,
    })
}

/// Plane counts `A, B, C, D, E` of an exhaustive histogram and their inequalities.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneAccounting {
    /// Class counts in units of planes.
    pub planes: PiHistogram,
    pub a: String,
    pub b: u64,
    pub c: u64,
    pub d: String,
    pub e: String,
    pub checks: Vec<Check>,
}

/// Converts an exhaustive parametrization histogram to plane counts and checks every
/// plane-count inequality; a violated one is an error.
pub fn plane_accounting(hist: &PiHistogram) -> Result<PlaneAccounting, BertiniError> {
    plane_accounting_with(hist, None)
}

/// As [`plane_accounting`]; `not_abs_irr_planes` (in parametrizations) adds the check on
/// planes with a restriction that is not absolutely irreducible when `p > 2 delta^2`.
pub fn plane_accounting_with(
    hist: &PiHistogram,
    not_abs_irr_planes: Option<u64>,
) -> Result<PlaneAccounting, BertiniError> {
    if hist.unit != Unit::Parametrizations {
        return Err(BertiniError::InvalidInput(
            "expected a parametrization histogram".into(),
        ));
    }
    let (q, n, delta) = (hist.q, hist.n as u32, hist.delta);
    let stats = bounds::plane_statistics(q, n)?;
    let per = stats.reparametrizations();
    let div = |class: String, count: u64| {
        if count.is_multiple_of(per) {
            Ok(count / per)
        } else {
            Err(BertiniError::NotDivisible {
                class,
                count,
                per_plane: per,
            })
        }
    };
    let mut planes = PiHistogram::empty(q, n as usize, delta, Unit::Planes);
    for (&j, &c) in &hist.counts {
        planes.counts.insert(j, div(format!("{j}"), c)?);
    }
    for (&v, &c) in &hist.nu {
        planes.nu.insert(v, div(format!("nu = {v}"), c)?);
    }
    planes.vanishing = div("q-1".into(), hist.vanishing)?;
    planes.total = div("total".into(), hist.total)?;
    planes.degenerate = hist.degenerate;

    let r = |x: &BigInt| BigRational::from_integer(x.clone());
    let a = r(&stats.a);
    let b = planes.weighted_sum();
    let c = planes.vanishing;
    let mut checks = Vec::new();
    checks.push(Check {
        name: "plane_total_equals_A".into(),
        observed: planes.total.to_string(),
        ceiling: stats.a.to_string(),
        holds: BigInt::from(planes.total) == stats.a,
    });
    checks.push(Check::rational(
        "D/A",
        &stats.d_over_a,
        &stats.d_over_a_ceiling,
    ));
    checks.push(Check::rational(
        "A/E",
        &stats.a_over_e,
        &stats.a_over_e_ceiling,
    ));
    if !a.is_zero() {
        checks.push(Check::rational(
            "C/A",
            &(int(c) / &a),
            &stats.c_over_a_ceiling(delta),
        ));
    }
    if delta >= 2 {
        let ev = Evaluator::default();
        let pb = ev.pi_class_bounds(delta, q, n, 1)?;
        checks.push(Check::bound("B", b, &pb.weighted_sum));
        if let Some(d2) = &pb.delta_two {
            checks.push(Check::bound("Pi_1", planes.count(PiClass::Factors(1)), d2));
        }
        checks.push(Check::bound(
            "B + (q-1)C",
            b + (q - 1) * c,
            &pb.second_moment,
        ));
        for j in 1..delta {
            let tail: u64 = planes.counts.range(j..).map(|(_, &c)| c).sum();
            let bound = ev.pi_class_bounds(delta, q, n, j)?.tail;
            checks.push(Check::bound(format!("Pi_tail_{j}"), tail, &bound));
        }
        let p = f_char(q);
        if let Some(cnt) = not_abs_irr_planes.filter(|_| p > 2 * (delta as u64).pow(2)) {
            checks.push(Check::bound(
                "planes_not_abs_irreducible",
                div("not_abs_irr".into(), cnt)?,
                &pb.gao_planes,
            ));
        }
    }
    for c in &checks {
        c.clone().into_result()?;
    }
    Ok(PlaneAccounting {
        a: stats.a.to_string(),
        b,
        c,
        d: stats.d.to_string(),
        e: stats.e.to_string(),
        planes,
        checks,
    })
}

fn f_char(q: u64) -> u64 {
    crate::gf::prime_power(q).map(|(p, _)| p).unwrap_or(q)
}
