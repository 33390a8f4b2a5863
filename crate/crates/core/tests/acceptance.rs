//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines reach standard output. Pass criterion numbers
//! as arguments to run a subset. The process fails when a criterion fails, unless the failure
//! is a documented one whose observed exceptions match the pinned record exactly.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use weilbench::bertini;
use weilbench::bounds::{self, Direction, Evaluator, Magnitude, DEFAULT_BITS};
use weilbench::campaign::gen_abs_irreducible;
use weilbench::counting::{self, PolySystem};
use weilbench::factor::{self, SolutionField};
use weilbench::gf::{Code, FieldCtx};
use weilbench::mpoly::{MPoly, PlaneParam};
use weilbench::project::{self, InverseSection};

// Pinned sizes and tolerances.
const WEIL_INSTANCES: usize = 200;
const HYPERSURFACE_INSTANCES: usize = 100;
const EXISTENCE_INSTANCES: usize = 50;
const EXISTENCE_Q: u64 = 163;
const FACTOR_SEEDED_INSTANCES: usize = 500;
const PROJECTION_INSTANCES: u64 = 20;
const PROJECTION_Q: u64 = 37;
const ROUNDING_TUPLES: usize = 1000;
const REFINEMENT: u32 = 4;
/// Criterion 10 fails as stated; its line is still FAIL, but the run only errors if the
/// exception count moves away from this record.
const C10_DOCUMENTED_EXCEPTIONS: usize = 68;

struct Verdict {
    pass: bool,
    detail: String,
    /// A failure recorded in the decisions ledger with these exact exceptions.
    documented: bool,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict {
        pass,
        detail,
        documented: false,
    }
}

fn field(spec: &str) -> FieldCtx {
    FieldCtx::from_spec(spec).unwrap()
}

fn ratio(num: &BigRational, den: &bounds::BoundValue) -> f64 {
    use num_traits::ToPrimitive;
    num.to_f64().unwrap() / den.to_f64()
}

fn c1_weil() -> Verdict {
    let fields = ["3", "5", "7", "3^2", "11", "13"];
    let (mut violations, mut mismatches, mut oracle_disagree) = (0, 0, 0);
    let mut tightest = 0.0f64;
    for i in 0..WEIL_INSTANCES {
        let k = field(fields[i % fields.len()]);
        let delta = 1 + (i / fields.len()) as u32 % 4;
        let f = gen_abs_irreducible(&k, 2, delta, 1000 + i as u64).unwrap();
        if delta <= 3 && !abs_irreducible_small(&f) {
            oracle_disagree += 1;
        }
        let n = brute_count(std::slice::from_ref(&f), &k);
        let lib = counting::count_points(&PolySystem::new(vec![f.clone()]).unwrap())
            .unwrap()
            .count;
        mismatches += (lib != n) as usize;
        let q = k.order() as u64;
        let dev = bounds::deviation(n, &bounds::main_term(1, q, 1));
        let b = bounds::weil_curve(q, delta);
        violations += !b.admits(&dev) as usize;
        tightest = tightest.max(ratio(&dev, &b));
    }
    verdict(
        violations == 0 && mismatches == 0 && oracle_disagree == 0,
        format!(
            "{WEIL_INSTANCES} curves, {violations} violations, {mismatches} count mismatches, \
             {oracle_disagree} certificate disagreements, max |N-q|/bound {tightest:.3}"
        ),
    )
}

fn c2_hypersurface() -> Verdict {
    let qs = [5u64, 7, 11, 13, 17];
    let (mut violations, mut regular_checked, mut mismatches) = (0, 0, 0);
    let mut tightest = 0.0f64;
    for i in 0..HYPERSURFACE_INSTANCES {
        let q = qs[i % qs.len()];
        let delta = 2 + (i / qs.len()) as u32 % 3;
        let k = prime(q);
        let f = gen_abs_irreducible(&k, 3, delta, 2000 + i as u64).unwrap();
        let n = brute_count(std::slice::from_ref(&f), &k);
        let lib = counting::count_hypersurface_fast(&f).unwrap().count;
        mismatches += (lib != n) as usize;
        let dev = bounds::deviation(n, &bounds::main_term(1, q, 2));
        let b = bounds::cm_hypersurface(q, 3, delta);
        violations += !b.admits(&dev) as usize;
        tightest = tightest.max(ratio(&dev, &b));
        let (reg, applies) = bounds::cm_hypersurface_regular(q, 3, delta);
        if applies {
            regular_checked += 1;
            violations += !reg.admits(&dev) as usize;
        }
    }
    verdict(
        violations == 0 && mismatches == 0,
        format!(
            "{HYPERSURFACE_INSTANCES} surfaces, {violations} violations, {mismatches} count mismatches, \
             regular form applicable {regular_checked} times, max |N-q^2|/bound {tightest:.4}"
        ),
    )
}

fn c3_existence() -> Verdict {
    let k = prime(EXISTENCE_Q);
    let mut failures = 0;
    let mut min_points = u64::MAX;
    let mut applicable = true;
    for i in 0..EXISTENCE_INSTANCES {
        let delta = 1 + i as u32 % 3;
        let t = bounds::existence_thresholds(delta, None).hypersurface_zero;
        applicable &= !t.admits_int(EXISTENCE_Q as i128);
        let f = gen_abs_irreducible(&k, 2, delta, 3000 + i as u64).unwrap();
        let n = brute_count(std::slice::from_ref(&f), &k);
        failures += (n == 0) as usize;
        min_points = min_points.min(n);
    }
    verdict(
        failures == 0 && applicable,
        format!("{EXISTENCE_INSTANCES} curves over F_{EXISTENCE_Q}, {failures} without points, fewest points {min_points}"),
    )
}

fn random_monic<R: Rng>(k: &FieldCtx, m: u32, rng: &mut R) -> MPoly {
    let mut terms = vec![(vec![m, 0], 1)];
    for mu in 0..m {
        for j in 0..=(m - mu) {
            terms.push((vec![mu, j], k.random(rng)));
        }
    }
    MPoly::from_terms(k, 2, terms)
}

/// Compares one search against trial division. Returns an error description on mismatch.
fn compare_factor_search(f: &MPoly, d: u32) -> Result<(), String> {
    let rep = factor::factor_search(f, d, SolutionField::BaseK).map_err(|e| format!("{f}: {e}"))?;
    let got: BTreeSet<String> = rep
        .factors
        .iter()
        .map(|g| g.make_monic().to_string())
        .collect();
    let want = trial_factors_up_to(f, d);
    if got != want {
        return Err(format!("{f} D={d}: got {got:?}, oracle {want:?}"));
    }
    let found = rep.status == factor::FactorStatus::FoundFactors;
    if found != !want.is_empty() || rep.systems_solved != rep.factors.len() {
        return Err(format!(
            "{f} D={d}: solvable systems {} vs factors {}",
            rep.systems_solved,
            want.len()
        ));
    }
    Ok(())
}

fn c4_factor_oracle() -> Verdict {
    let mut errors = Vec::new();
    let (mut exhaustive, mut seeded) = (0, 0);
    for q in [2u64, 3] {
        let k = prime(q);
        for m in 1..=2 {
            for f in monic_candidates(&k, m) {
                if !factor::check_precondition(&f).unwrap() {
                    continue;
                }
                exhaustive += 1;
                if m == 1 {
                    // No admissible degree cap; the oracle sees a single factor.
                    let capped = matches!(
                        factor::factor_search(&f, 1, SolutionField::BaseK),
                        Err(factor::FactorError::InvalidDegreeCap { .. })
                    );
                    if !capped || trial_factor(&f).len() != 1 {
                        errors.push(format!("{f}: degree-1 handling"));
                    }
                } else if let Err(e) = compare_factor_search(&f, 1) {
                    errors.push(e);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let fields = [prime(2), prime(3), prime(5)];
    while seeded < FACTOR_SEEDED_INSTANCES {
        let k = &fields[seeded % 3];
        let delta = rng.gen_range(2..=4u32);
        let f = if rng.gen_bool(0.5) {
            random_monic(k, delta, &mut rng)
        } else {
            let a = rng.gen_range(1..delta);
            random_monic(k, a, &mut rng)
                .checked_mul(&random_monic(k, delta - a, &mut rng))
                .unwrap()
        };
        if !factor::check_precondition(&f).unwrap() {
            continue;
        }
        seeded += 1;
        let d = rng.gen_range(1..delta);
        if let Err(e) = compare_factor_search(&f, d) {
            errors.push(e);
        }
    }
    let first = errors.first().cloned().unwrap_or_default();
    verdict(
        errors.is_empty(),
        format!(
            "{exhaustive} exhaustive + {seeded} seeded inputs, {} mismatches {first}",
            errors.len()
        ),
    )
}

/// Every polynomial of degree 1..=3 in two variables, up to scalars.
fn small_bivariates(k: &FieldCtx) -> Vec<MPoly> {
    let monos: Vec<Vec<u32>> = (0..=3u32)
        .flat_map(|d| (0..=d).map(move |i| vec![d - i, i]))
        .collect();
    let q = k.order() as u64;
    let mut out = Vec::new();
    for mut idx in 1..q.pow(monos.len() as u32) {
        let terms: Vec<_> = monos
            .iter()
            .map(|e| {
                let c = (idx % q) as Code;
                idx /= q;
                (e.clone(), c)
            })
            .collect();
        let f = MPoly::from_terms(k, 2, terms);
        if f.total_degree().unwrap_or(0) >= 1 && f.leading_term().unwrap().1 == 1 {
            out.push(f);
        }
    }
    out
}

fn c5_absolute_oracle() -> Verdict {
    let mut errors = Vec::new();
    let mut checked = 0;
    for q in [2u64, 3] {
        for f in small_bivariates(&prime(q)) {
            checked += 1;
            let got = factor::is_absolutely_irreducible(&f).unwrap();
            if got != abs_irreducible_small(&f) {
                errors.push(format!("{f} over F_{q}: got {got}"));
            }
            match factor::count_abs_irr_fq_factors(&f) {
                Ok(nu) if Some(nu) == nu_small(&f) => {}
                other => errors.push(format!(
                    "{f} over F_{q}: nu {other:?}, oracle {:?}",
                    nu_small(&f)
                )),
            }
        }
    }
    let f3 = poly(&prime(3), 2, "X1^2 + X2^2");
    let f5 = poly(&prime(5), 2, "X1^2 + X2^2");
    let xy = poly(&prime(5), 2, "X1*X2");
    let spots = [
        !factor::is_absolutely_irreducible(&f3).unwrap(),
        factor::count_abs_irr_fq_factors(&f5).unwrap() == 2,
        factor::closure_factors(&f5)
            .unwrap()
            .iter()
            .map(|g| g.make_monic().to_string())
            .collect::<BTreeSet<_>>()
            == ["X + 2*Y", "X + 3*Y"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        factor::count_abs_irr_fq_factors(&xy).unwrap() == 2,
    ];
    let spots_ok = spots.iter().all(|&b| b);
    let first = errors.first().cloned().unwrap_or_default();
    verdict(
        errors.is_empty() && spots_ok,
        format!(
            "{checked} polynomials, {} disagreements, spot values {} {first}",
            errors.len(),
            if spots_ok { "ok" } else { "wrong" }
        ),
    )
}

fn c6_planes() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for (q, n) in [(2u64, 3usize), (3, 3)] {
        let k = prime(q);
        let flats = all_flats(&k, n);
        let origin = vec![0; n];
        let through = flats
            .iter()
            .filter(|f| f.binary_search(&origin).is_ok())
            .count();
        let mut typed: BTreeMap<Vec<Vec<Code>>, u64> = BTreeMap::new();
        for idx in 0..PlaneParam::tuple_count(q, n) {
            let p = PlaneParam::from_index(&k, n, idx);
            if !p.is_degenerate() {
                *typed.entry(plane_points(&k, &p)).or_default() += 1;
            }
        }
        let s = bounds::plane_statistics(q, n as u32).unwrap();
        let reparam = s.reparametrizations();
        let cell_ok = s.m_t == BigInt::from(flats.len())
            && s.a == BigInt::from(typed.len())
            && s.e == BigInt::from(through)
            && typed.keys().all(|p| flats.contains(p))
            && typed.values().all(|&c| c == reparam);
        let pinned = q != 2 || (flats.len(), typed.len(), through) == (14, 12, 7);
        ok &= cell_ok && pinned;
        parts.push(format!(
            "(n,q)=({n},{q}): M_T={} A={} E={}",
            flats.len(),
            typed.len(),
            through
        ));
    }
    verdict(ok, parts.join(", "))
}

fn c7_bertini_sweep() -> Verdict {
    let k = prime(3);
    let f = poly(&k, 3, "X1^2 + X2^2 + X3");
    let sweep = match bertini::exhaustive_sweep(&f) {
        Ok(s) => s,
        Err(e) => return verdict(false, format!("sweep failed: {e}")),
    };
    let (mut counts, mut nus) = (BTreeMap::new(), BTreeMap::new());
    let (mut vanishing, mut degenerate, mut restrict_mismatch) = (0u64, 0u64, 0);
    for idx in 0..PlaneParam::tuple_count(3, 3) {
        let p = PlaneParam::from_index(&k, 3, idx);
        if p.is_degenerate() {
            degenerate += 1;
            continue;
        }
        let g = restrict_by_values(&f, &p);
        restrict_mismatch += (g != p.restrict(&f).unwrap()) as usize;
        match nu_small(&g) {
            None => vanishing += 1,
            Some(nu) => {
                *counts.entry(nu.abs_diff(1)).or_insert(0u64) += 1;
                *nus.entry(nu).or_insert(0u64) += 1;
            }
        }
    }
    let h = &sweep.histogram;
    let hist_ok =
        h.counts == counts && h.nu == nus && h.vanishing == vanishing && h.degenerate == degenerate;
    let mut ceilings_ok = sweep
        .not_abs_irreducible_check
        .as_ref()
        .is_none_or(|c| c.holds)
        && sweep.small_factors.iter().all(|s| s.check.holds);
    let accounting = bertini::plane_accounting_with(h, Some(sweep.not_abs_irreducible_planes));
    let mut names = Vec::new();
    match &accounting {
        Ok(a) => {
            ceilings_ok &= a.checks.iter().all(|c| c.holds);
            names = a.checks.iter().map(|c| c.name.clone()).collect();
        }
        Err(_) => ceilings_ok = false,
    }
    let ratios = ["D/A", "C/A", "B"]
        .iter()
        .all(|r| names.iter().any(|n| n.contains(r)));
    verdict(
        hist_ok && restrict_mismatch == 0 && ceilings_ok && ratios,
        format!(
            "classes {:?} vanishing {} degenerate {}; oracle {}; {} restriction mismatches; {} checks {}",
            h.counts,
            h.vanishing,
            h.degenerate,
            if hist_ok { "equal" } else { "differs" },
            restrict_mismatch,
            names.len(),
            if ceilings_ok { "hold" } else { "violated" }
        ),
    )
}

fn twisted_cubic(k: &FieldCtx, rng: &mut ChaCha8Rng) -> PolySystem {
    let c: Vec<Code> = (0..7).map(|_| k.random(rng)).collect();
    let (a, d) = (k.random_nonzero(rng), k.random_nonzero(rng));
    let g = format!("X2 - {a}*X1^2 - {}*X1 - {}", c[0], c[1]);
    let h = format!("X3 - {d}*X1^3 - {}*X1^2 - {}*X1 - {}", c[2], c[3], c[4]);
    PolySystem::parse(k, 3, &[&g, &h]).unwrap()
}

fn c8_birational() -> Verdict {
    let k = prime(PROJECTION_Q);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut errors = Vec::new();
    let mut accepted = 0;
    for seed in 0..PROJECTION_INSTANCES {
        let sys = twisted_cubic(&k, &mut rng);
        let run = || -> Result<(), String> {
            let draw = project::draw_projection(&sys, 1, 3, seed).map_err(|e| e.to_string())?;
            let proj = &draw.projection;
            let rep = project::birational_check(&sys, proj).map_err(|e| e.to_string())?;
            let total = brute_count(sys.polys(), &k);
            let sec = InverseSection::fit(&sys, proj).map_err(|e| e.to_string())?;
            let mut off = 0;
            for x in points(&k, 3)
                .into_iter()
                .filter(|x| sys.polys().iter().all(|f| eval(f, &k, x) == 0))
            {
                let y = proj.apply(&x);
                if eval(&proj.h0, &k, &y) != 0 {
                    off += 1;
                    if project::inverse_section(&sec, &y).map_err(|e| e.to_string())? != x {
                        return Err(format!("seed {seed}: inverse section misses {x:?}"));
                    }
                }
            }
            let exact = rep.v_off == rep.w_off && rep.v_off == off && rep.v_off + rep.v_on == total;
            let ceil = rep.v_on <= rep.ceiling && rep.w_on <= rep.ceiling;
            if exact && ceil && rep.injective && rep.surjective && !proj.tautological {
                Ok(())
            } else {
                Err(format!(
                    "seed {seed}: {rep:?}, off-locus oracle {off}, total {total}"
                ))
            }
        };
        match run() {
            Ok(()) => accepted += 1,
            Err(e) => errors.push(e),
        }
    }
    let first = errors.first().cloned().unwrap_or_default();
    verdict(
        errors.is_empty(),
        format!("{accepted}/{PROJECTION_INSTANCES} projections over F_{PROJECTION_Q} exact and round-tripping {first}"),
    )
}

fn rat(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn c9_degree_bounds() -> Verdict {
    let mut bad = Vec::new();
    let b = bounds::bertini_degree_bounds(2, Some(1)).unwrap();
    if b.xi_deg != rat(18, 1) || b.psi_d_deg != Some(rat(18, 1)) || b.xi_d_deg != Some(rat(26, 1)) {
        bad.push("delta = 2 pins".to_string());
    }
    // Values recomputed with exact fractions outside this crate.
    let pins = [
        ((3, 1), (90, 45, 63)),
        ((3, 2), (90, 171, 189)),
        ((4, 2), (296, 0, 356)),
        ((4, 3), (296, 780, 0)),
        ((5, 3), (750, 0, 1325)),
    ];
    for ((d, k), (xi, psi, xid)) in pins {
        let b = bounds::bertini_degree_bounds(d, Some(k)).unwrap();
        let ok = b.xi_deg == rat(xi, 1)
            && (psi == 0 || b.psi_d_deg == Some(rat(psi, 1)))
            && (xid == 0 || b.xi_d_deg == Some(rat(xid, 1)));
        if !ok {
            bad.push(format!("pin ({d}, {k})"));
        }
    }
    // Integer-coefficient forms over a grid.
    let mut cells = 0;
    for d in 2..=30i128 {
        let b = bounds::bertini_degree_bounds(d as u32, None).unwrap();
        if b.xi_deg != rat(3 * d.pow(4) - 4 * d.pow(3) + 5 * d * d, 2) {
            bad.push(format!("xi_deg({d})"));
        }
        for k in 1..d {
            cells += 1;
            let b = bounds::bertini_degree_bounds(d as u32, Some(k as u32)).unwrap();
            let psi = rat(
                8 * k * d * d * (k + 1) * (k + 2) - (k * k + 3 * k) * (k * k + 3 * k + 2) * d,
                8,
            );
            let xid = rat(
                8 * k.pow(3) * d * d - k.pow(4) * d - 6 * k.pow(3) * d + 24 * k * k * d * d
                    - 11 * k * k * d
                    + 16 * k * d * d
                    - 6 * k * d
                    + 16 * d * d,
                8,
            );
            if b.psi_d_deg != Some(psi) || b.xi_d_deg != Some(xid) {
                bad.push(format!("({d}, {k})"));
            }
        }
    }
    // Per-class tail coefficients: value * (q - 1) / q^(3n-6) at q = 5, n = 3.
    let tail_pins = [
        ((2, 1), rat(74, 1)),
        ((3, 1), rat(423, 1)),
        ((3, 2), rat(14589, 128)),
        ((4, 3), rat(14212, 81)),
    ];
    for d in 2..=12i128 {
        for j in 1..d {
            let tb = bounds::pi_class_bounds(d as u32, 5, 3, j as u32).unwrap();
            let coeff = tb.tail.value().unwrap() * rat(4, 125);
            let want = rat(
                d.pow(5) * (8 * j - 1)
                    + 3 * d.pow(4) * (8 * j * j - 2 * j)
                    + d.pow(3) * (16 * j.pow(3) - 11 * j * j)
                    - 6 * d * d * j.pow(3)
                    + 16 * d * d * j.pow(4),
                8 * j.pow(4),
            );
            let pinned = tail_pins
                .iter()
                .find(|(dj, _)| *dj == (d, j))
                .is_none_or(|(_, v)| *v == coeff);
            if coeff != want || !pinned {
                bad.push(format!("tail({d}, {j})"));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{cells} (delta, D) cells and pinned values, {} mismatches {}",
            bad.len(),
            bad.first().cloned().unwrap_or_default()
        ),
    )
}

fn c10_improvement() -> Verdict {
    let mut exceptions = Vec::new();
    let mut oracle_disagree = 0;
    for d in 3..=50u32 {
        for n in 2..=10u32 {
            let (hw, gl) = bounds::improvement_holds(d, n);
            let c = 5.0 * (d as f64).powf(13.0 / 3.0);
            let df = d as f64;
            let (hw_f, gl_f) = (
                c < df * df + 2.0 * df.powi(5),
                c < 12.0 * (df + 3.0).powi(n as i32 + 1),
            );
            oracle_disagree += (hw != hw_f || gl != gl_f) as usize;
            if !hw {
                exceptions.push(format!("d={d},n={n} vs d^2+2d^5"));
            }
            if !gl {
                exceptions.push(format!("d={d},n={n} vs 12(d+3)^(n+1)"));
            }
        }
    }
    let first: Vec<&String> = exceptions.iter().take(3).collect();
    Verdict {
        pass: exceptions.is_empty() && oracle_disagree == 0,
        detail: format!(
            "{} exceptions on 432 cells (first {:?}), {} float-oracle disagreements",
            exceptions.len(),
            first,
            oracle_disagree
        ),
        documented: exceptions.len() == C10_DOCUMENTED_EXCEPTIONS && oracle_disagree == 0,
    }
}

/// Whether the coarse value is on the safe side of the refined one.
fn refined_ok(coarse: &bounds::BoundValue, fine: &bounds::BoundValue) -> bool {
    match (&coarse.magnitude, &fine.magnitude, coarse.direction) {
        (Magnitude::Rational(c), Magnitude::Rational(f), Direction::RoundUp) => c.hi >= f.hi,
        (Magnitude::Rational(c), Magnitude::Rational(f), Direction::RoundDown) => c.lo <= f.lo,
        (Magnitude::Log2 { hi: c, .. }, Magnitude::Log2 { hi: f, .. }, Direction::RoundUp) => {
            c >= f
        }
        (Magnitude::Log2 { lo: c, .. }, Magnitude::Log2 { lo: f, .. }, Direction::RoundDown) => {
            c <= f
        }
        _ => false,
    }
}

fn c11_rounding() -> Verdict {
    let coarse = Evaluator::new(DEFAULT_BITS);
    let fine = Evaluator::new(REFINEMENT * DEFAULT_BITS);
    let qs: [(u64, u64); 12] = [
        (2, 2),
        (3, 3),
        (4, 2),
        (5, 5),
        (8, 2),
        (9, 3),
        (11, 11),
        (25, 5),
        (101, 101),
        (128, 2),
        (1009, 1009),
        (65537, 65537),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut values, mut bad) = (0, Vec::new());
    for _ in 0..ROUNDING_TUPLES {
        let (q, p) = qs[rng.gen_range(0..qs.len())];
        let n = rng.gen_range(2..=7u32);
        let r = rng.gen_range(1..n);
        let d = rng.gen_range(2..=9u32);
        let a = coarse.all_at(q, n, r, d, p);
        let b = fine.all_at(q, n, r, d, p);
        if a.len() != b.len() {
            bad.push(format!("length at {q},{n},{r},{d}"));
            continue;
        }
        for (x, y) in a.iter().zip(&b) {
            values += 1;
            if !refined_ok(x, y) {
                bad.push(format!("{} at q={q} n={n} r={r} d={d}", x.formula));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{ROUNDING_TUPLES} tuples, {values} values, {} unsound {}",
            bad.len(),
            bad.first().cloned().unwrap_or_default()
        ),
    )
}

type Criterion = (u32, &'static str, fn() -> Verdict);

const CRITERIA: [Criterion; 11] = [
    (1, "Weil bound on plane curves", c1_weil),
    (2, "hypersurface estimate, n = 3", c2_hypersurface),
    (3, "existence of rational points", c3_existence),
    (4, "factor search against trial division", c4_factor_oracle),
    (
        5,
        "absolute irreducibility against line factors",
        c5_absolute_oracle,
    ),
    (6, "plane combinatorics against flat enumeration", c6_planes),
    (7, "exhaustive plane sweep", c7_bertini_sweep),
    (8, "birational projection of space cubics", c8_birational),
    (
        9,
        "degree bounds of the genericity conditions",
        c9_degree_bounds,
    ),
    (10, "coefficient comparisons", c10_improvement),
    (11, "directed rounding under refinement", c11_rounding),
];

fn main() {
    let selected: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut unexpected = Vec::new();
    for (id, name, run) in CRITERIA {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let v = run();
        let status = if v.pass { "PASS" } else { "FAIL" };
        let note = if !v.pass && v.documented {
            " [documented: claim false as stated]"
        } else {
            ""
        };
        println!(
            "criterion {id:>2} {status} {name}: {} ({:.1}s){note}",
            v.detail,
            t.elapsed().as_secs_f64()
        );
        if !v.pass && !v.documented {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
