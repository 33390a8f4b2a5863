//! Sparse multivariate polynomials over a [`FieldCtx`].
//!
//! A polynomial maps exponent vectors to nonzero coefficient codes. Terms are kept in a
//! `BTreeMap`, whose key order is lexicographic with `X1` most significant; printing uses
//! graded-lex order. The zero polynomial has no terms and degree `None` (minus infinity).

mod parse;
mod plane;
mod resultant;
mod series;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::gf::{Code, FieldCtx};
use crate::upoly;

pub use parse::parse_poly;
pub use plane::PlaneParam;
pub use series::TruncSeries;

/// Exponent vector, one entry per variable.
pub type Exps = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live over different fields or variable counts")]
    CtxMismatch,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("polynomial is not univariate in the requested variable")]
    NotUnivariate,
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    ctx: FieldCtx,
    nvars: usize,
    terms: BTreeMap<Exps, Code>,
}

impl Hash for MPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.terms.hash(state);
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({self})", self.ctx)
    }
}

impl MPoly {
    pub fn zero(ctx: &FieldCtx, nvars: usize) -> MPoly {
        MPoly {
            ctx: ctx.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &FieldCtx, nvars: usize, c: Code) -> MPoly {
        MPoly::monomial(ctx, vec![0; nvars], c)
    }

    pub fn one(ctx: &FieldCtx, nvars: usize) -> MPoly {
        MPoly::constant(ctx, nvars, 1)
    }

    /// The variable `X_{i+1}` (zero-based index `i`).
    pub fn var(ctx: &FieldCtx, nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(ctx, e, 1)
    }

    pub fn monomial(ctx: &FieldCtx, exps: Exps, c: Code) -> MPoly {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        MPoly {
            ctx: ctx.clone(),
            nvars,
            terms,
        }
    }

    /// Builds a polynomial from terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exps, Code)>>(
        ctx: &FieldCtx,
        nvars: usize,
        it: I,
    ) -> MPoly {
        let mut p = MPoly::zero(ctx, nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// Parses the text grammar (see [`parse_poly`]).
    pub fn parse(ctx: &FieldCtx, nvars: usize, text: &str) -> Result<MPoly, PolyError> {
        parse_poly(ctx, nvars, text)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Exps, Code)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn coeff(&self, exps: &[u32]) -> Code {
        self.terms.get(exps).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }
    /// Constant term.
    pub fn constant_term(&self) -> Code {
        self.coeff(&vec![0; self.nvars])
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in one variable, `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Coefficient of `var^d` as a polynomial in the remaining variables (same arity).
    pub fn coeff_in(&self, var: usize, d: u32) -> MPoly {
        MPoly::from_terms(
            &self.ctx,
            self.nvars,
            self.terms
                .iter()
                .filter(|(e, _)| e[var] == d)
                .map(|(e, &c)| {
                    let mut e = e.clone();
                    e[var] = 0;
                    (e, c)
                }),
        )
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Exps, Code)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex_cmp(a.0, b.0))
            .map(|(e, &c)| (e, c))
    }

    /// Scales so that the graded-lex leading coefficient is one.
    pub fn make_monic(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ctx.inv(c)),
        }
    }

    fn add_term(&mut self, e: Exps, c: Code) {
        if c == 0 {
            return;
        }
        let f = &self.ctx;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &MPoly) -> Result<(), PolyError> {
        if self.nvars == other.nvars && self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::CtxMismatch)
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), self.ctx.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let f = &self.ctx;
        let mut out = MPoly::zero(f, self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> MPoly {
        self.scale(self.ctx.neg(1))
    }

    pub fn scale(&self, c: Code) -> MPoly {
        if c == 0 {
            return MPoly::zero(&self.ctx, self.nvars);
        }
        MPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &x)| (e.clone(), self.ctx.mul(x, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one(&self.ctx, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> MPoly {
        let f = &self.ctx;
        MPoly::from_terms(
            f,
            self.nvars,
            self.terms
                .iter()
                .filter(|(e, _)| e[var] > 0)
                .map(|(e, &c)| {
                    let mut e2 = e.clone();
                    e2[var] -= 1;
                    (e2, f.mul(c, f.from_int(e[var] as i64)))
                }),
        )
    }

    /// Evaluates at a point whose coordinates are codes of `self.ctx` or of an extension `field`.
    pub fn eval_in(&self, field: &FieldCtx, point: &[Code]) -> Code {
        debug_assert!(self.ctx.is_subfield_of(field));
        debug_assert_eq!(point.len(), self.nvars);
        let maxdeg = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<Code>> = point
            .iter()
            .map(|&x| {
                let mut pw = Vec::with_capacity(maxdeg + 1);
                let mut acc = 1;
                for _ in 0..=maxdeg {
                    pw.push(acc);
                    acc = field.mul(acc, x);
                }
                pw
            })
            .collect();
        let mut sum = 0;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = field.mul(t, powers[i][k as usize]);
                }
            }
            sum = field.add(sum, t);
        }
        sum
    }

    /// Evaluates at a point over the polynomial's own field.
    pub fn eval(&self, point: &[Code]) -> Result<Code, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: point.len(),
            });
        }
        Ok(self.eval_in(&self.ctx, point))
    }

    /// The same polynomial over an extension field (codes are unchanged).
    pub fn embed(&self, target: &FieldCtx) -> MPoly {
        assert!(
            self.ctx.is_subfield_of(target),
            "{} is not below {}",
            self.ctx,
            target
        );
        MPoly {
            ctx: target.clone(),
            nvars: self.nvars,
            terms: self.terms.clone(),
        }
    }

    /// Reinterprets a polynomial whose coefficients all lie in `sub` as a polynomial over `sub`.
    pub fn restrict_field(&self, sub: &FieldCtx) -> Option<MPoly> {
        self.terms
            .values()
            .all(|&c| c < sub.order())
            .then(|| MPoly {
                ctx: sub.clone(),
                nvars: self.nvars,
                terms: self.terms.clone(),
            })
    }

    /// Applies `c -> map(c)` to every coefficient.
    pub fn map_coeffs(&self, map: impl Fn(Code) -> Code) -> MPoly {
        MPoly::from_terms(
            &self.ctx,
            self.nvars,
            self.terms.iter().map(|(e, &c)| (e.clone(), map(c))),
        )
    }

    /// Substitutes `X_i -> images[i]`; the images share a field and arity.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let (ctx, m) = match images.first() {
            Some(p) => (p.ctx.clone(), p.nvars),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| p.ctx != ctx || p.nvars != m) || !self.ctx.is_subfield_of(&ctx) {
            return Err(PolyError::CtxMismatch);
        }
        let maxdeg: Vec<u32> = (0..self.nvars)
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        let powers: Vec<Vec<MPoly>> = images
            .iter()
            .zip(&maxdeg)
            .map(|(p, &d)| {
                let mut v = vec![MPoly::one(&ctx, m)];
                for k in 1..=d as usize {
                    let next = &v[k - 1] * p;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MPoly::zero(&ctx, m);
        for (e, &c) in &self.terms {
            let mut t = MPoly::constant(&ctx, m, c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Affine substitution `X_i -> sum_j a[i][j] Y_j + b[i]` into `m` new variables.
    pub fn affine_substitute(&self, a: &[Vec<Code>], b: &[Code]) -> Result<MPoly, PolyError> {
        let m = a.first().map_or(0, |r| r.len());
        if a.len() != self.nvars || b.len() != self.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: a.len().min(b.len()),
            });
        }
        let images: Vec<MPoly> = a
            .iter()
            .zip(b)
            .map(|(row, &bi)| {
                let mut p = MPoly::constant(&self.ctx, m, bi);
                for (j, &c) in row.iter().enumerate() {
                    p = &p + &MPoly::var(&self.ctx, m, j).scale(c);
                }
                p
            })
            .collect();
        self.substitute(&images)
    }

    /// Exact quotient `self / g`.
    pub fn exact_divide(&self, g: &MPoly) -> Result<MPoly, PolyError> {
        self.check(g)?;
        let (lg, cg) = match g.terms.iter().next_back() {
            Some((e, &c)) => (e.clone(), c),
            None => return Err(PolyError::NotDivisible),
        };
        let f = &self.ctx;
        let cg_inv = f.inv(cg);
        let mut r = self.clone();
        let mut q = MPoly::zero(f, self.nvars);
        while let Some((lr, cr)) = r.terms.iter().next_back().map(|(e, &c)| (e.clone(), c)) {
            if lr.iter().zip(&lg).any(|(a, b)| a < b) {
                return Err(PolyError::NotDivisible);
            }
            let e: Exps = lr.iter().zip(&lg).map(|(a, b)| a - b).collect();
            let c = f.mul(cr, cg_inv);
            q.add_term(e.clone(), c);
            for (ge, &gc) in &g.terms {
                let te: Exps = ge.iter().zip(&e).map(|(a, b)| a + b).collect();
                r.add_term(te, f.neg(f.mul(gc, c)));
            }
        }
        Ok(q)
    }

    pub fn divides(&self, f: &MPoly) -> bool {
        f.exact_divide(self).is_ok()
    }

    /// Dense coefficient vector of a polynomial in `var` only, low to high.
    pub fn to_univariate(&self, var: usize) -> Result<Vec<Code>, PolyError> {
        let mut out = Vec::new();
        for (e, &c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return Err(PolyError::NotUnivariate);
            }
            let k = e[var] as usize;
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            out[k] = c;
        }
        Ok(out)
    }

    /// Inverse of [`MPoly::to_univariate`].
    pub fn from_univariate(ctx: &FieldCtx, nvars: usize, var: usize, coeffs: &[Code]) -> MPoly {
        MPoly::from_terms(
            ctx,
            nvars,
            coeffs.iter().enumerate().map(|(k, &c)| {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                (e, c)
            }),
        )
    }

    /// Monic gcd of two polynomials in `var` only.
    pub fn univariate_gcd(&self, other: &MPoly, var: usize) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let g = upoly::gcd(
            &self.ctx,
            &self.to_univariate(var)?,
            &other.to_univariate(var)?,
        );
        Ok(MPoly::from_univariate(&self.ctx, self.nvars, var, &g))
    }

    /// Monic squarefree part of a polynomial in `var` only.
    pub fn univariate_squarefree_part(&self, var: usize) -> Result<MPoly, PolyError> {
        let s = upoly::squarefree_part(&self.ctx, &self.to_univariate(var)?);
        Ok(MPoly::from_univariate(&self.ctx, self.nvars, var, &s))
    }

    /// Roots in the coefficient field of a nonzero polynomial in `var` only, sorted by code.
    pub fn univariate_roots(&self, var: usize) -> Result<Vec<Code>, PolyError> {
        Ok(upoly::roots_by_scan(&self.ctx, &self.to_univariate(var)?))
    }

    /// Resultant with respect to `var`; see the resultant submodule.
    pub fn resultant(&self, other: &MPoly, var: usize) -> Result<MPoly, PolyError> {
        resultant::resultant(self, other, var)
    }

    /// `Res_var(f, df/dvar)`, without normalization by the leading coefficient.
    pub fn discriminant(&self, var: usize) -> Result<MPoly, PolyError> {
        resultant::resultant(self, &self.derivative(var), var)
    }

    /// Restriction to the plane `L`, a bivariate polynomial in `(X, Y)`.
    pub fn restrict_to_plane(&self, plane: &PlaneParam) -> Result<MPoly, PolyError> {
        plane.restrict(self)
    }

    /// Terms sorted by decreasing graded-lex order.
    pub fn grlex_terms(&self) -> Vec<(&Exps, Code)> {
        let mut v: Vec<(&Exps, Code)> = self.terms().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }
}

/// Graded-lex comparison: total degree first, then lexicographic with `X1` most significant.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Variable name used in printing: `X`, `Y` for bivariate polynomials, `X1..Xn` otherwise.
pub fn var_name(nvars: usize, i: usize) -> String {
    if nvars == 2 {
        ["X", "Y"][i].to_string()
    } else {
        format!("X{}", i + 1)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.grlex_terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let v = var_name(self.nvars, i);
                    if k == 1 {
                        v
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                f.write_str(&self.ctx.format(c))?;
            } else if c == 1 {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{}*{}", self.ctx.format(c), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&MPoly> for &MPoly {
            type Output = MPoly;
            /// # Panics
            /// Panics when the operands differ in field or arity.
            fn $m(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs)
                    .expect("polynomial operands must share field and arity")
            }
        }
        impl std::ops::$tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    #[test]
    fn ring_identities() {
        let k = f(5);
        let a = MPoly::parse(&k, 3, "X1^2*X2 + 3*X3 - 1").unwrap();
        let b = MPoly::parse(&k, 3, "X1 + X2*X3 + 2").unwrap();
        let c = MPoly::parse(&k, 3, "X3^2 - X1").unwrap();
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!((&a - &a), MPoly::zero(&k, 3));
        assert_eq!(a.pow(3), &(&a * &a) * &a);
    }

    #[test]
    fn degrees_and_zero() {
        let k = f(3);
        let z = MPoly::zero(&k, 2);
        assert_eq!(z.total_degree(), None);
        let p = MPoly::parse(&k, 2, "X^2*Y + Y^4 + X").unwrap();
        assert_eq!(p.total_degree(), Some(4));
        assert_eq!(p.degree_in(0), Some(2));
    }

    #[test]
    fn exact_division() {
        let k = f(7);
        let a = MPoly::parse(&k, 2, "X + Y + 1").unwrap();
        let b = MPoly::parse(&k, 2, "X^2 - Y^3 + 4").unwrap();
        let prod = &a * &b;
        assert_eq!(prod.exact_divide(&a).unwrap(), b);
        assert_eq!(prod.exact_divide(&b).unwrap(), a);
        let c = MPoly::parse(&k, 2, "X + 2").unwrap();
        assert_eq!(prod.exact_divide(&c), Err(PolyError::NotDivisible));
    }

    #[test]
    fn substitution_and_evaluation_commute() {
        let k = f(11);
        let p = MPoly::parse(&k, 2, "X^3 + 2*X*Y + Y^2 + 5").unwrap();
        let a = vec![vec![1, 3], vec![0, 2]];
        let b = vec![4, 7];
        let q = p.affine_substitute(&a, &b).unwrap();
        for s in 0..11 {
            for t in 0..11 {
                let x = k.add(k.add(s, k.mul(3, t)), 4);
                let y = k.add(k.mul(2, t), 7);
                assert_eq!(q.eval(&[s, t]).unwrap(), p.eval(&[x, y]).unwrap());
            }
        }
    }

    #[test]
    fn graded_lex_printing() {
        let k = f(5);
        let p = MPoly::parse(&k, 3, "1 + X3 + X1*X2 + X1^2 - X2").unwrap();
        assert_eq!(p.to_string(), "X1^2 + X1*X2 + 4*X2 + X3 + 1");
        let q = MPoly::parse(&k, 2, "Y^2 + X^2").unwrap();
        assert_eq!(q.to_string(), "X^2 + Y^2");
        assert_eq!(MPoly::parse(&k, 2, &q.to_string()).unwrap(), q);
    }

    #[test]
    fn univariate_tools() {
        let k = f(5);
        let p = MPoly::parse(&k, 2, "(Y - 1)^2*(Y + 2)").unwrap();
        assert_eq!(p.univariate_roots(1).unwrap(), vec![1, 3]);
        let s = p.univariate_squarefree_part(1).unwrap();
        assert_eq!(s, MPoly::parse(&k, 2, "(Y - 1)*(Y + 2)").unwrap());
        let q = MPoly::parse(&k, 2, "Y^2 - 1").unwrap();
        assert_eq!(
            p.univariate_gcd(&q, 1).unwrap(),
            MPoly::parse(&k, 2, "Y - 1").unwrap()
        );
        assert_eq!(p.to_univariate(0), Err(PolyError::NotUnivariate));
    }
}
