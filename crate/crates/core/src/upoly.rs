//! Dense univariate polynomials over a [`FieldCtx`], stored low to high as `Vec<Code>`.
//!
//! The zero polynomial is the empty vector; every function returns trimmed vectors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf::{prime_factors, Code, FieldCtx};

/// Fields up to this order find roots by scanning every element.
const SCAN_LIMIT: u32 = 256;

pub fn trim(mut a: Vec<Code>) -> Vec<Code> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree(a: &[Code]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn x(f: &FieldCtx) -> Vec<Code> {
    vec![f.zero(), f.one()]
}

pub fn add(f: &FieldCtx, a: &[Code], b: &[Code]) -> Vec<Code> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn sub(f: &FieldCtx, a: &[Code], b: &[Code]) -> Vec<Code> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn scale(f: &FieldCtx, a: &[Code], c: Code) -> Vec<Code> {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &FieldCtx, a: &[Code], b: &[Code]) -> Vec<Code> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    trim(out)
}

/// Quotient and remainder.
///
/// # Panics
/// Panics if `b` is zero.
pub fn divrem(f: &FieldCtx, a: &[Code], b: &[Code]) -> (Vec<Code>, Vec<Code>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]);
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        q[dr - db] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            r[dr - db + j] = f.sub(r[dr - db + j], f.mul(c, bj));
        }
        r.truncate(dr);
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &FieldCtx, a: &[Code], b: &[Code]) -> Vec<Code> {
    divrem(f, a, b).1
}

pub fn monic(f: &FieldCtx, a: &[Code]) -> Vec<Code> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, a, f.inv(a[d])),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd(f: &FieldCtx, a: &[Code], b: &[Code]) -> Vec<Code> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn mulmod(f: &FieldCtx, a: &[Code], b: &[Code], m: &[Code]) -> Vec<Code> {
    rem(f, &mul(f, a, b), m)
}

/// `a^e mod m`.
pub fn pow_mod(f: &FieldCtx, a: &[Code], mut e: u64, m: &[Code]) -> Vec<Code> {
    let mut result = rem(f, &[1], m);
    let mut base = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(f, &result, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(f, &base, &base, m);
        }
    }
    result
}

pub fn derivative(f: &FieldCtx, a: &[Code]) -> Vec<Code> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect(),
    )
}

pub fn eval(f: &FieldCtx, a: &[Code], x: Code) -> Code {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Irreducibility over `f` via `x^{Q^t} = x mod g` and coprimality at maximal proper divisors.
pub fn is_irreducible(f: &FieldCtx, g: &[Code]) -> bool {
    let t = match degree(g) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(t) => t,
    };
    let q = f.order() as u64;
    let xx = x(f);
    let mut pows = vec![rem(f, &xx, g)];
    for _ in 0..t {
        let next = pow_mod(f, pows.last().unwrap(), q, g);
        pows.push(next);
    }
    if pows[t] != rem(f, &xx, g) {
        return false;
    }
    prime_factors(t as u64).into_iter().all(|r| {
        let d = t / r as usize;
        gcd(f, &sub(f, &pows[d], &xx), g).len() == 1
    })
}

/// Number of distinct roots in `f`, i.e. `deg gcd(a, x^Q - x)`; zero polynomial gives `Q`.
pub fn count_roots(f: &FieldCtx, a: &[Code]) -> u64 {
    match degree(a) {
        None => f.order() as u64,
        Some(0) => 0,
        Some(_) => {
            let a = monic(f, a);
            let xq = pow_mod(f, &x(f), f.order() as u64, &a);
            let g = gcd(f, &a, &sub(f, &xq, &x(f)));
            degree(&g).unwrap_or(0) as u64
        }
    }
}

/// Roots by evaluating at every element, in code order.
pub fn roots_by_scan(f: &FieldCtx, a: &[Code]) -> Vec<Code> {
    f.codes().filter(|&c| eval(f, a, c) == 0).collect()
}

/// Distinct roots in `f`, sorted by code. The zero polynomial is rejected by the caller.
pub fn roots(f: &FieldCtx, a: &[Code]) -> Vec<Code> {
    if degree(a).unwrap_or(0) == 0 {
        return Vec::new();
    }
    if f.order() <= SCAN_LIMIT {
        return roots_by_scan(f, a);
    }
    let a = monic(f, a);
    let xq = pow_mod(f, &x(f), f.order() as u64, &a);
    let split = gcd(f, &a, &sub(f, &xq, &x(f)));
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7007);
    split_linear(f, &split, &mut rng, &mut out);
    out.sort_unstable();
    out
}

/// Equal-degree splitting of a product of distinct monic linear factors.
fn split_linear(f: &FieldCtx, g: &[Code], rng: &mut ChaCha8Rng, out: &mut Vec<Code>) {
    match degree(g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.div(g[0], g[1]))),
        Some(d) => loop {
            let r = random_poly(f, d, rng);
            let w = if f.characteristic() == 2 {
                trace_map(f, &r, g)
            } else {
                sub(f, &pow_mod(f, &r, (f.order() as u64 - 1) / 2, g), &[1])
            };
            let h = gcd(f, g, &w);
            if let Some(dh) = degree(&h) {
                if dh > 0 && dh < d {
                    let (other, _) = divrem(f, g, &h);
                    split_linear(f, &h, rng, out);
                    split_linear(f, &monic(f, &other), rng, out);
                    return;
                }
            }
        },
    }
}

fn random_poly(f: &FieldCtx, below: usize, rng: &mut ChaCha8Rng) -> Vec<Code> {
    trim((0..below).map(|_| f.random(rng)).collect())
}

/// `r + r^2 + r^4 + ... + r^{2^{k-1}} mod g` for `|f| = 2^k`.
fn trace_map(f: &FieldCtx, r: &[Code], g: &[Code]) -> Vec<Code> {
    let mut term = rem(f, r, g);
    let mut acc = term.clone();
    for _ in 1..f.abs_degree() {
        term = mulmod(f, &term, &term, g);
        acc = add(f, &acc, &term);
    }
    acc
}

/// Distinct-degree split of a squarefree polynomial: `(d, product of degree-d factors)`.
pub fn distinct_degree(f: &FieldCtx, a: &[Code]) -> Vec<(usize, Vec<Code>)> {
    let mut rest = monic(f, a);
    let mut out = Vec::new();
    let xx = x(f);
    let mut h = xx.clone();
    let mut d = 0;
    while degree(&rest).unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > degree(&rest).unwrap() {
            out.push((degree(&rest).unwrap(), rest));
            break;
        }
        h = pow_mod(f, &h, f.order() as u64, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &xx));
        if degree(&g).unwrap_or(0) > 0 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((d, g));
        }
    }
    out
}

/// `p`-th root of a polynomial whose exponents are all multiples of `p`.
fn pth_root(f: &FieldCtx, a: &[Code]) -> Vec<Code> {
    let p = f.characteristic() as usize;
    let k = f.abs_degree();
    trim(
        a.iter()
            .step_by(p)
            .map(|&c| f.frobenius(c, k - 1))
            .collect(),
    )
}

/// Monic product of the distinct irreducible factors.
pub fn squarefree_part(f: &FieldCtx, a: &[Code]) -> Vec<Code> {
    if degree(a).unwrap_or(0) == 0 {
        return monic(f, a);
    }
    let d = derivative(f, a);
    if d.is_empty() {
        return squarefree_part(f, &pth_root(f, a));
    }
    let mut g = gcd(f, a, &d);
    let r = monic(f, &divrem(f, a, &g).0);
    loop {
        let h = gcd(f, &g, &r);
        if degree(&h).unwrap_or(0) == 0 {
            break;
        }
        g = divrem(f, &g, &h).0;
    }
    if degree(&g).unwrap_or(0) == 0 {
        r
    } else {
        monic(f, &mul(f, &r, &squarefree_part(f, &pth_root(f, &g))))
    }
}

pub fn is_squarefree(f: &FieldCtx, a: &[Code]) -> bool {
    let d = derivative(f, a);
    degree(&gcd(f, a, &d)).unwrap_or(0) == 0 && !d.is_empty()
}
