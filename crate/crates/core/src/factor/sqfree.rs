//! Bivariate gcd and squarefree part over `F_q`.
//!
//! Polynomials are viewed in `F_q[Y][X]`; gcds use primitive pseudo-remainder sequences.

use crate::gf::{Code, FieldCtx};
use crate::mpoly::MPoly;
use crate::upoly;

/// Coefficients of `X^i` as univariate polynomials in `Y`.
type Rec = Vec<Vec<Code>>;

fn to_rec(f: &MPoly) -> Rec {
    let mut r: Rec = vec![Vec::new(); f.degree_in(0).map_or(0, |d| d as usize + 1)];
    for (e, c) in f.terms() {
        let row = &mut r[e[0] as usize];
        let k = e[1] as usize;
        if row.len() <= k {
            row.resize(k + 1, 0);
        }
        row[k] = c;
    }
    r
}

fn from_rec(k: &FieldCtx, r: &Rec) -> MPoly {
    MPoly::from_terms(
        k,
        2,
        r.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, &c)| (vec![i as u32, j as u32], c))
        }),
    )
}

fn trim_rec(mut r: Rec) -> Rec {
    while r.last().is_some_and(|c| c.is_empty()) {
        r.pop();
    }
    r
}

fn content(k: &FieldCtx, r: &Rec) -> Vec<Code> {
    r.iter().fold(Vec::new(), |g, c| upoly::gcd(k, &g, c))
}

fn primitive(k: &FieldCtx, r: &Rec) -> Rec {
    let c = content(k, r);
    if c.is_empty() {
        return Vec::new();
    }
    r.iter().map(|x| upoly::divrem(k, x, &c).0).collect()
}

/// Pseudo-remainder of `a` by `b` in `F_q[Y][X]`.
fn prem(k: &FieldCtx, a: &Rec, b: &Rec) -> Rec {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for (i, ri) in r.iter_mut().enumerate() {
            let mut v = upoly::mul(k, ri, lb);
            if i >= shift && i - shift <= db {
                v = upoly::sub(k, &v, &upoly::mul(k, &lr, &b[i - shift]));
            }
            *ri = v;
        }
        r = trim_rec(r);
    }
    r
}

/// Monic (graded-lex) gcd of two bivariate polynomials; `gcd(0, 0) = 0`.
pub fn bivariate_gcd(f: &MPoly, g: &MPoly) -> MPoly {
    let k = f.ctx();
    let (a, b) = (trim_rec(to_rec(f)), trim_rec(to_rec(g)));
    if a.is_empty() {
        return g.make_monic();
    }
    if b.is_empty() {
        return f.make_monic();
    }
    let c = upoly::gcd(k, &content(k, &a), &content(k, &b));
    let (mut a, mut b) = (primitive(k, &a), primitive(k, &b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            a = vec![vec![1]];
            break;
        }
        let r = prem(k, &a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive(k, &r) };
    }
    let a = primitive(k, &a);
    let g = from_rec(k, &a);
    let c = MPoly::from_univariate(k, 2, 1, &c);
    (&g * &c).make_monic()
}

/// `p`-th root of a polynomial all of whose exponents are multiples of `p`.
pub fn pth_root(f: &MPoly) -> MPoly {
    let k = f.ctx();
    let p = k.characteristic();
    MPoly::from_terms(
        k,
        f.nvars(),
        f.terms().map(|(e, c)| {
            debug_assert!(e.iter().all(|x| x % p == 0));
            (
                e.iter().map(|x| x / p).collect(),
                k.frobenius(c, k.abs_degree() - 1),
            )
        }),
    )
}

/// Monic product of the distinct irreducible factors of a nonzero bivariate polynomial.
///
/// With `G = gcd(f, f_X, f_Y)`, `f / G` collects the factors whose multiplicity is prime to
/// `p`; after removing them from `G` the rest is a `p`-th power and is handled recursively.
pub fn radical(f: &MPoly) -> MPoly {
    if f.is_constant() {
        return MPoly::one(f.ctx(), 2);
    }
    let g = bivariate_gcd(&bivariate_gcd(f, &f.derivative(0)), &f.derivative(1));
    let r = f.make_monic().exact_divide(&g).expect("gcd divides f");
    let mut g = g;
    loop {
        let h = bivariate_gcd(&g, &r);
        if h.is_constant() {
            break;
        }
        g = g.exact_divide(&h).expect("gcd divides");
    }
    if g.is_constant() {
        r.make_monic()
    } else {
        (&r * &radical(&pth_root(&g))).make_monic()
    }
}
