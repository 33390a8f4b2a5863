//! Independent oracles: brute-force evaluation, line-vanishing tests for linear factors,
//! trial division and brute-force flat enumeration. None of them calls the factorizer or
//! the counting routines.

#![allow(dead_code)]

use std::collections::BTreeSet;

use weilbench::gf::{Code, FieldCtx};
use weilbench::mpoly::{MPoly, PlaneParam};

pub fn prime(p: u64) -> FieldCtx {
    FieldCtx::prime(p).unwrap()
}

pub fn poly(k: &FieldCtx, n: usize, s: &str) -> MPoly {
    MPoly::parse(k, n, s).unwrap()
}

/// `f(x)` term by term in `k`, which must contain the coefficient field.
pub fn eval(f: &MPoly, k: &FieldCtx, x: &[Code]) -> Code {
    let mut acc = 0;
    for (e, c) in f.terms() {
        let mut t = c;
        for (xi, &ei) in x.iter().zip(e.iter()) {
            t = k.mul(t, k.pow(*xi, ei as u64));
        }
        acc = k.add(acc, t);
    }
    acc
}

/// All points of `k^n`, last coordinate fastest.
pub fn points(k: &FieldCtx, n: usize) -> Vec<Vec<Code>> {
    let q = k.order();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Code>| {
                (0..q).map(move |c| {
                    let mut p = p.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

/// Common zeros of `fs` in `k^n` by direct evaluation.
pub fn brute_count(fs: &[MPoly], k: &FieldCtx) -> u64 {
    let n = fs[0].nvars();
    points(k, n)
        .iter()
        .filter(|x| fs.iter().all(|f| eval(f, k, x) == 0))
        .count() as u64
}

/// Field used to test vanishing along a line over `k`: large enough to hold `deg + 1`
/// distinct parameters.
fn eval_field(k: &FieldCtx, deg: u32) -> FieldCtx {
    let mut t = 1;
    while (k.order() as u64).pow(t) <= deg as u64 {
        t += 1;
    }
    if t == 1 {
        k.clone()
    } else {
        k.extension(t, 7).unwrap()
    }
}

/// Bivariate `f` with coefficients in a subfield of `k`: whether some line `aX + bY + c` over
/// `k` divides `f`, decided by evaluating `f` at `deg f + 1` points of the line.
pub fn has_linear_factor(f: &MPoly, k: &FieldCtx) -> bool {
    let deg = f.total_degree().expect("nonzero");
    let e = eval_field(k, deg);
    let params: Vec<Code> = (0..=deg).collect();
    let vanishes =
        |pt: &dyn Fn(Code) -> [Code; 2]| params.iter().all(|&t| eval(f, &e, &pt(t)) == 0);
    for b in k.codes() {
        for c in k.codes() {
            // X = -bY - c
            if vanishes(&|t| [e.neg(e.add(e.mul(b, t), c)), t]) {
                return true;
            }
        }
    }
    k.codes().any(|c| vanishes(&|t| [t, e.neg(c)]))
}

/// Absolute irreducibility for bivariate `f` with `1 <= deg f <= 3`: such an `f` is reducible
/// over the closure iff it has a line factor, and every line factor is defined over
/// `F_(q^e)` with `e <= deg f`.
pub fn abs_irreducible_small(f: &MPoly) -> bool {
    let deg = f.total_degree().expect("nonzero");
    assert!((1..=3).contains(&deg), "oracle covers degrees 1..=3");
    if deg == 1 {
        return true;
    }
    let k = f.ctx();
    !(1..=deg).any(|e| {
        let ke = if e == 1 {
            k.clone()
        } else {
            k.extension(e, 11).unwrap()
        };
        has_linear_factor(f, &ke)
    })
}

/// Lines `aX + bY + c` over `k` with `(a, b)` normalized, as bivariate polynomials.
pub fn lines(k: &FieldCtx) -> Vec<MPoly> {
    let mut out = Vec::new();
    for b in k.codes() {
        for c in k.codes() {
            out.push(MPoly::from_terms(
                k,
                2,
                [(vec![1, 0], 1), (vec![0, 1], b), (vec![0, 0], c)],
            ));
        }
    }
    for c in k.codes() {
        out.push(MPoly::from_terms(k, 2, [(vec![0, 1], 1), (vec![0, 0], c)]));
    }
    out
}

/// Number of distinct absolutely irreducible `F_q`-definable factors of a bivariate `f` with
/// `deg f <= 3`; `None` for the zero polynomial.
pub fn nu_small(f: &MPoly) -> Option<u32> {
    let deg = f.total_degree()?;
    assert!(deg <= 3, "oracle covers degrees up to 3");
    if deg == 0 {
        return Some(0);
    }
    let mut rest = f.clone();
    let mut distinct = 0;
    for l in lines(f.ctx()) {
        let mut hit = false;
        while rest.total_degree().unwrap_or(0) > 0 && l.divides(&rest) {
            rest = rest.exact_divide(&l).unwrap();
            hit = true;
        }
        distinct += hit as u32;
    }
    // What is left has no F_q-line factor, so it is a unit or F_q-irreducible of degree 2 or 3.
    if rest.total_degree().unwrap() >= 2 && abs_irreducible_small(&rest) {
        distinct += 1;
    }
    Some(distinct)
}

/// Polynomials `X^m + sum_{mu < m} h_mu(Y) X^mu` with `deg h_mu <= m - mu`.
pub fn monic_candidates(k: &FieldCtx, m: u32) -> Vec<MPoly> {
    let mut slots = Vec::new();
    for mu in 0..m {
        for j in 0..=(m - mu) {
            slots.push(vec![mu, j]);
        }
    }
    let q = k.order() as u64;
    let total = q.pow(slots.len() as u32);
    (0..total)
        .map(|mut idx| {
            let mut terms = vec![(vec![m, 0], 1)];
            for s in &slots {
                terms.push((s.clone(), (idx % q) as Code));
                idx /= q;
            }
            MPoly::from_terms(k, 2, terms)
        })
        .collect()
}

/// Irreducible `F_q`-factors of `f`, with multiplicity, by trial division. `f` must have
/// constant leading coefficient in `X` and `X`-degree equal to its total degree, so every
/// factor is a scalar multiple of a monic candidate.
pub fn trial_factor(f: &MPoly) -> Vec<MPoly> {
    let deg = f.total_degree().unwrap();
    if deg == 0 {
        return Vec::new();
    }
    for m in 1..=deg / 2 {
        for g in monic_candidates(f.ctx(), m) {
            if g.divides(f) {
                let mut out = vec![g.make_monic()];
                out.extend(trial_factor(&f.exact_divide(&g).unwrap()));
                return out;
            }
        }
    }
    vec![f.make_monic()]
}

/// Distinct irreducible factors of degree at most `d`.
pub fn trial_factors_up_to(f: &MPoly, d: u32) -> BTreeSet<String> {
    trial_factor(f)
        .into_iter()
        .filter(|g| g.total_degree().unwrap() <= d)
        .map(|g| g.to_string())
        .collect()
}

/// The interpolating polynomial of `f` on the plane `L`, of degree below `p` in each
/// variable, built from the values `f(L(x, y))` over the prime field `F_p`.
pub fn restrict_by_values(f: &MPoly, plane: &PlaneParam) -> MPoly {
    let k = f.ctx();
    assert!(k.is_prime_field());
    let p = k.order();
    let n = plane.n();
    let one = MPoly::one(k, 2);
    // 1 - (v - a)^(p-1) is the indicator of v = a on F_p.
    let indicator = |var: usize, a: Code| {
        let shifted = MPoly::var(k, 2, var)
            .checked_sub(&MPoly::constant(k, 2, a))
            .unwrap();
        one.checked_sub(&shifted.pow(p - 1)).unwrap()
    };
    let mut g = MPoly::zero(k, 2);
    for x in 0..p {
        for y in 0..p {
            let mut pt = vec![k.add(plane.nu[0], x)];
            for i in 0..n - 1 {
                pt.push(k.add(
                    plane.nu[i + 1],
                    k.add(k.mul(plane.omega[i], x), k.mul(plane.eta[i], y)),
                ));
            }
            let v = eval(f, k, &pt);
            if v != 0 {
                let term = indicator(0, x)
                    .checked_mul(&indicator(1, y))
                    .unwrap()
                    .scale(v);
                g = g.checked_add(&term).unwrap();
            }
        }
    }
    g
}

/// Affine 2-flats of `F_p^n` as sorted point sets, by brute force over triples of points.
pub fn all_flats(k: &FieldCtx, n: usize) -> BTreeSet<Vec<Vec<Code>>> {
    let pts = points(k, n);
    let mut flats = BTreeSet::new();
    let o = &pts[0];
    for u in &pts {
        for v in &pts {
            if let Some(set) = span(k, o, u, v) {
                for base in &pts {
                    flats.insert(translate(k, &set, base));
                }
            }
        }
    }
    flats
}

/// The plane through the origin spanned by `u` and `v`, if they are independent.
fn span(k: &FieldCtx, _o: &[Code], u: &[Code], v: &[Code]) -> Option<Vec<Vec<Code>>> {
    let mut set = BTreeSet::new();
    for a in k.codes() {
        for b in k.codes() {
            set.insert(
                u.iter()
                    .zip(v)
                    .map(|(&x, &y)| k.add(k.mul(a, x), k.mul(b, y)))
                    .collect::<Vec<_>>(),
            );
        }
    }
    let q = k.order() as usize;
    (set.len() == q * q).then(|| set.into_iter().collect())
}

fn translate(k: &FieldCtx, set: &[Vec<Code>], base: &[Code]) -> Vec<Vec<Code>> {
    let mut out: Vec<Vec<Code>> = set
        .iter()
        .map(|p| p.iter().zip(base).map(|(&a, &b)| k.add(a, b)).collect())
        .collect();
    out.sort();
    out
}

/// Point set of a parametrized plane.
pub fn plane_points(k: &FieldCtx, plane: &PlaneParam) -> Vec<Vec<Code>> {
    let mut out = Vec::new();
    for x in k.codes() {
        for y in k.codes() {
            let mut pt = vec![k.add(plane.nu[0], x)];
            for i in 0..plane.n() - 1 {
                pt.push(k.add(
                    plane.nu[i + 1],
                    k.add(k.mul(plane.omega[i], x), k.mul(plane.eta[i], y)),
                ));
            }
            out.push(pt);
        }
    }
    out.sort();
    out.dedup();
    out
}
