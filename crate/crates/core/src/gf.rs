//! Finite fields `F_p`, `F_{p^k}` and explicit towers `F_{q^t}` over a smaller field.
//!
//! Every element is a `Code`: the integer whose base-`|base|` digits are the coefficient
//! vector over the immediate base field. Because `|base|` is a power of `p`, the same integer
//! read in base `p` is the coefficient vector over the prime field, and read in base `|K|` it
//! is the coordinate vector over any intermediate field `K` of the tower. Two consequences are
//! used throughout the crate:
//!
//! * embedding a subfield element into an extension leaves its code unchanged;
//! * addition is digitwise addition modulo `p`, independent of the tower shape.
//!
//! Code `0` is zero and code `1` is one, so enumeration by code yields `0` first, then `1`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::upoly;

/// Integer encoding of a field element, see the module docs.
pub type Code = u32;

/// Largest field order served by log/antilog tables; larger fields multiply directly.
const TABLE_LIMIT: u64 = 1 << 20;
/// Largest field order served by a full addition table.
const ADD_TABLE_LIMIT: u64 = 256;
/// Seed used for moduli of fields built from a `"p^k"` specification.
pub const DEFAULT_FIELD_SEED: u64 = 0x5eed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field order {0} does not fit the 32-bit element encoding")]
    FieldTooLarge(u128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    CtxMismatch,
    #[error("{0} is not a subfield of {1}")]
    NotSubfield(String, String),
    #[error("invalid field specification {0:?}")]
    InvalidSpec(String),
}

enum Kernel {
    Prime,
    Tables {
        log: Vec<u32>,
        /// `exp[i] = g^i` for `i < 2(q-1)`, so sums of two logs need no reduction.
        exp: Vec<Code>,
        add: Option<Vec<Code>>,
        neg: Vec<Code>,
    },
    Direct,
}

struct Inner {
    p: u32,
    order: u32,
    degree: u32,
    abs_degree: u32,
    base: Option<FieldCtx>,
    /// Monic modulus over the base, low to high, length `degree + 1`.
    modulus: Vec<Code>,
    seed: u64,
    key: Vec<u64>,
    kernel: Kernel,
}

/// Shared handle to a finite field. Cloning is cheap.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.key == other.0.key
    }
}
impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({self})")
    }
}

impl fmt::Display for FieldCtx {
    /// Prime-based steps render as `p^k`, further tower steps append `->t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.base {
            None => write!(f, "{}^1", self.0.p),
            Some(b) if b.is_prime_field() => write!(f, "{}^{}", self.0.p, self.0.degree),
            Some(b) => write!(f, "{b}->{}", self.0.degree),
        }
    }
}

/// Extensions keyed by base modulus chain, degree and seed.
type Registry = Mutex<HashMap<(Vec<u64>, u32, u64), FieldCtx>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldCtx {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<FieldCtx, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if p > u32::MAX as u64 {
            return Err(GfError::FieldTooLarge(p as u128));
        }
        let key = vec![p];
        let mut reg = registry().lock().unwrap();
        if let Some(f) = reg.get(&(key.clone(), 1, 0)) {
            return Ok(f.clone());
        }
        let f = FieldCtx(Arc::new(Inner {
            p: p as u32,
            order: p as u32,
            degree: 1,
            abs_degree: 1,
            base: None,
            modulus: Vec::new(),
            seed: 0,
            key: key.clone(),
            kernel: Kernel::Prime,
        }));
        reg.insert((key, 1, 0), f.clone());
        Ok(f)
    }

    /// `F_{p^k}` as a degree-`k` extension of `F_p` with a seeded random modulus.
    pub fn galois(p: u64, k: u32, seed: u64) -> Result<FieldCtx, GfError> {
        let fp = FieldCtx::prime(p)?;
        if k == 1 {
            Ok(fp)
        } else {
            fp.extension(k, seed)
        }
    }

    /// Parses `"p"`, `"p^k"`, and tower forms such as `"3^2->2"`.
    pub fn from_spec(spec: &str) -> Result<FieldCtx, GfError> {
        let bad = || GfError::InvalidSpec(spec.to_string());
        let mut parts = spec.trim().split("->");
        let head = parts.next().ok_or_else(bad)?.trim();
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                k.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (head.parse::<u64>().map_err(|_| bad())?, 1),
        };
        if k == 0 {
            return Err(bad());
        }
        let mut field = FieldCtx::galois(p, k, DEFAULT_FIELD_SEED)?;
        for step in parts {
            let t = step.trim().parse::<u32>().map_err(|_| bad())?;
            if t == 0 {
                return Err(bad());
            }
            field = field.extension(t, DEFAULT_FIELD_SEED)?;
        }
        Ok(field)
    }

    /// Degree-`t` extension of `self` with a modulus drawn from a seeded random search.
    ///
    /// A candidate monic `g` of degree `t` is accepted when `x^{Q^t} = x mod g` and
    /// `gcd(x^{Q^{t/r}} - x, g) = 1` for every prime `r | t`, with `Q = |self|`.
    /// Results are cached, so equal arguments return the same context.
    pub fn extension(&self, t: u32, seed: u64) -> Result<FieldCtx, GfError> {
        if t == 0 {
            return Err(GfError::InvalidDegree);
        }
        if t == 1 {
            return Ok(self.clone());
        }
        let order = (self.order() as u128).pow(t);
        if order > u32::MAX as u128 {
            return Err(GfError::FieldTooLarge(order));
        }
        let reg_key = (self.0.key.clone(), t, seed);
        if let Some(f) = registry().lock().unwrap().get(&reg_key) {
            return Ok(f.clone());
        }
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (t as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let modulus = loop {
            let mut g: Vec<Code> = (0..t).map(|_| self.random(&mut rng)).collect();
            g.push(1);
            if g[0] != 0 && upoly::is_irreducible(self, &g) {
                break g;
            }
        };
        let f = self.build_extension(t, modulus, seed, order as u32);
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry(reg_key).or_insert(f).clone())
    }

    /// Extension defined by an explicit monic irreducible modulus over `self`.
    pub fn extension_with_modulus(&self, modulus: &[Code]) -> Result<FieldCtx, GfError> {
        let t = modulus.len().saturating_sub(1) as u32;
        if t == 0 || modulus[t as usize] != 1 || !upoly::is_irreducible(self, modulus) {
            return Err(GfError::InvalidSpec(format!(
                "modulus {modulus:?} over {self}"
            )));
        }
        let order = (self.order() as u128).pow(t);
        if order > u32::MAX as u128 {
            return Err(GfError::FieldTooLarge(order));
        }
        Ok(self.build_extension(t, modulus.to_vec(), u64::MAX, order as u32))
    }

    fn build_extension(&self, t: u32, modulus: Vec<Code>, seed: u64, order: u32) -> FieldCtx {
        let mut key = self.0.key.clone();
        key.push(t as u64);
        key.extend(modulus.iter().map(|&c| c as u64));
        let kernel = if (order as u64) <= TABLE_LIMIT {
            build_tables(self, &modulus, order)
        } else {
            Kernel::Direct
        };
        FieldCtx(Arc::new(Inner {
            p: self.0.p,
            order,
            degree: t,
            abs_degree: self.0.abs_degree * t,
            base: Some(self.clone()),
            modulus,
            seed,
            key,
            kernel,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }
    /// Field order `q`.
    pub fn order(&self) -> u32 {
        self.0.order
    }
    /// Degree over the immediate base.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }
    /// Degree over the prime field.
    pub fn abs_degree(&self) -> u32 {
        self.0.abs_degree
    }
    pub fn base(&self) -> Option<&FieldCtx> {
        self.0.base.as_ref()
    }
    pub fn modulus(&self) -> &[Code] {
        &self.0.modulus
    }
    pub fn seed(&self) -> u64 {
        self.0.seed
    }
    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }
    pub fn prime_field(&self) -> FieldCtx {
        let mut f = self.clone();
        while let Some(b) = f.base().cloned() {
            f = b;
        }
        f
    }

    /// True when `self` is `other` or one of its tower ancestors.
    pub fn is_subfield_of(&self, other: &FieldCtx) -> bool {
        let mut cur = Some(other.clone());
        while let Some(f) = cur {
            if f == *self {
                return true;
            }
            cur = f.base().cloned();
        }
        false
    }

    /// Degree `[self : sub]`, if `sub` is in the tower below `self`.
    pub fn degree_over(&self, sub: &FieldCtx) -> Option<u32> {
        sub.is_subfield_of(self)
            .then(|| self.abs_degree() / sub.abs_degree())
    }

    pub fn zero(&self) -> Code {
        0
    }
    pub fn one(&self) -> Code {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Code {
        n.rem_euclid(self.0.p as i64) as Code
    }

    /// The integer of a prime-subfield element, `None` otherwise.
    pub fn to_int(&self, a: Code) -> Option<u32> {
        (a < self.0.p).then_some(a)
    }

    /// Generator of `self` over its base (the class of `x`), or `1` for a prime field.
    pub fn generator(&self) -> Code {
        match &self.0.base {
            None => 1,
            Some(b) => b.order(),
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Code {
        rng.gen_range(0..self.0.order)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Code {
        rng.gen_range(1..self.0.order)
    }

    /// All elements in code order: `0`, `1`, then the rest.
    pub fn codes(&self) -> std::ops::Range<Code> {
        0..self.0.order
    }

    /// All elements as checked handles, in code order.
    pub fn elements(&self) -> impl Iterator<Item = GFElem> + '_ {
        self.codes().map(move |c| GFElem {
            ctx: self.clone(),
            code: c,
        })
    }

    pub fn elem(&self, code: Code) -> GFElem {
        assert!(code < self.0.order, "code {code} out of range for {self}");
        GFElem {
            ctx: self.clone(),
            code,
        }
    }

    #[inline]
    pub fn add(&self, a: Code, b: Code) -> Code {
        match &self.0.kernel {
            Kernel::Prime => {
                let s = a as u64 + b as u64;
                let p = self.0.p as u64;
                (if s >= p { s - p } else { s }) as Code
            }
            Kernel::Tables { add: Some(t), .. } => t[(a * self.0.order + b) as usize],
            _ => add_digits(self.0.p, a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Code) -> Code {
        match &self.0.kernel {
            Kernel::Prime => {
                if a == 0 {
                    0
                } else {
                    self.0.p - a
                }
            }
            Kernel::Tables { neg, .. } => neg[a as usize],
            Kernel::Direct => neg_digits(self.0.p, a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Code, b: Code) -> Code {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Code, b: Code) -> Code {
        match &self.0.kernel {
            Kernel::Prime => ((a as u64 * b as u64) % self.0.p as u64) as Code,
            Kernel::Tables { log, exp, .. } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[(log[a as usize] + log[b as usize]) as usize]
                }
            }
            Kernel::Direct => {
                let base = self.0.base.as_ref().expect("direct kernel has a base");
                direct_mul(base, &self.0.modulus, a, b)
            }
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn try_inv(&self, a: Code) -> Option<Code> {
        if a == 0 {
            return None;
        }
        Some(match &self.0.kernel {
            Kernel::Prime => inv_mod(a as u64, self.0.p as u64) as Code,
            Kernel::Tables { log, exp, .. } => exp[(self.0.order - 1 - log[a as usize]) as usize],
            Kernel::Direct => self.pow(a, self.0.order as u64 - 2),
        })
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics on zero; use [`FieldCtx::try_inv`] for untrusted input.
    #[inline]
    pub fn inv(&self, a: Code) -> Code {
        self.try_inv(a).expect("inverse of zero")
    }

    #[inline]
    pub fn div(&self, a: Code, b: Code) -> Code {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Code, e: u64) -> Code {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Kernel::Tables { log, exp, .. } = &self.0.kernel {
            let m = (self.0.order - 1) as u64;
            return exp[((log[a as usize] as u64 * (e % m)) % m) as usize];
        }
        let mut result = 1;
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        result
    }

    /// Absolute Frobenius `x -> x^{p^j}`.
    pub fn frobenius(&self, a: Code, j: u32) -> Code {
        let j = j % self.0.abs_degree;
        let mut x = a;
        for _ in 0..j {
            x = self.pow(x, self.0.p as u64);
        }
        x
    }

    /// Coordinates of `a` over the subfield `sub`, low to high, `[self : sub]` entries.
    pub fn coords_over(&self, a: Code, sub: &FieldCtx) -> Vec<Code> {
        let t = self.abs_degree() / sub.abs_degree();
        let b = sub.order();
        let mut a = a;
        (0..t)
            .map(|_| {
                let d = a % b;
                a /= b;
                d
            })
            .collect()
    }

    /// Inverse of [`FieldCtx::coords_over`].
    pub fn from_coords(&self, coords: &[Code], sub: &FieldCtx) -> Code {
        let b = sub.order();
        coords.iter().rev().fold(0, |acc, &c| acc * b + c)
    }

    /// True when `a` lies in the subfield `sub` (its code is below `|sub|`).
    pub fn lies_in(&self, a: Code, sub: &FieldCtx) -> bool {
        a < sub.order()
    }

    /// Renders an element: integers for the prime field, coefficient lists otherwise.
    pub fn format(&self, a: Code) -> String {
        match &self.0.base {
            None => a.to_string(),
            Some(b) => {
                let digits: Vec<String> = self
                    .coords_over(a, b)
                    .into_iter()
                    .map(|c| b.format(c))
                    .collect();
                format!("[{}]", digits.join(","))
            }
        }
    }
}

fn build_tables(base: &FieldCtx, modulus: &[Code], order: u32) -> Kernel {
    let q = order as u64;
    let p = base.characteristic();
    let factors = prime_factors(q - 1);
    let slow_pow = |a: Code, mut e: u64| {
        let mut r: Code = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = direct_mul(base, modulus, r, b);
            }
            b = direct_mul(base, modulus, b, b);
            e >>= 1;
        }
        r
    };
    let g = (1..order)
        .find(|&c| factors.iter().all(|&r| slow_pow(c, (q - 1) / r) != 1))
        .expect("multiplicative group is cyclic");
    let m = (q - 1) as usize;
    let mut exp = vec![0 as Code; 2 * m];
    let mut log = vec![u32::MAX; q as usize];
    let mut x: Code = 1;
    for i in 0..m {
        exp[i] = x;
        exp[i + m] = x;
        log[x as usize] = i as u32;
        x = direct_mul(base, modulus, x, g);
    }
    let neg = (0..order).map(|a| neg_digits(p, a)).collect();
    let add = (q <= ADD_TABLE_LIMIT).then(|| {
        (0..order)
            .flat_map(|a| (0..order).map(move |b| add_digits(p, a, b)))
            .collect()
    });
    Kernel::Tables { log, exp, add, neg }
}

fn add_digits(p: u32, mut a: Code, mut b: Code) -> Code {
    if p == 2 {
        return a ^ b;
    }
    let (mut r, mut place) = (0u32, 1u32);
    while a > 0 || b > 0 {
        let s = (a % p + b % p) % p;
        r += s * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    r
}

fn neg_digits(p: u32, mut a: Code) -> Code {
    if p == 2 {
        return a;
    }
    let (mut r, mut place) = (0u32, 1u32);
    while a > 0 {
        let d = a % p;
        r += ((p - d) % p) * place;
        a /= p;
        place = place.wrapping_mul(p);
    }
    r
}

/// Product of two codes as polynomials over `base`, reduced by a monic `modulus`.
fn direct_mul(base: &FieldCtx, modulus: &[Code], a: Code, b: Code) -> Code {
    let t = modulus.len() - 1;
    let qb = base.order();
    let digits = |mut x: Code| {
        let mut d = vec![0; t];
        for slot in d.iter_mut() {
            *slot = x % qb;
            x /= qb;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0 as Code; 2 * t - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            if y != 0 {
                prod[i + j] = base.add(prod[i + j], base.mul(x, y));
            }
        }
    }
    for i in (t..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus[..t].iter().enumerate() {
            prod[i - t + j] = base.sub(prod[i - t + j], base.mul(c, m));
        }
    }
    prod[..t].iter().rev().fold(0, |acc, &c| acc * qb + c)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
    }
    s0.rem_euclid(p as i64) as u64
}

/// Element handle carrying its field, with context-checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct GFElem {
    ctx: FieldCtx,
    code: Code,
}

impl fmt::Debug for GFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.ctx.format(self.code), self.ctx)
    }
}

impl fmt::Display for GFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.format(self.code))
    }
}

impl GFElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }
    pub fn code(&self) -> Code {
        self.code
    }
    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &GFElem) -> Result<(), GfError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(GfError::CtxMismatch)
        }
    }

    fn wrap(&self, code: Code) -> GFElem {
        GFElem {
            ctx: self.ctx.clone(),
            code,
        }
    }

    pub fn add(&self, other: &GFElem) -> Result<GFElem, GfError> {
        self.check(other)?;
        Ok(self.wrap(self.ctx.add(self.code, other.code)))
    }
    pub fn sub(&self, other: &GFElem) -> Result<GFElem, GfError> {
        self.check(other)?;
        Ok(self.wrap(self.ctx.sub(self.code, other.code)))
    }
    pub fn mul(&self, other: &GFElem) -> Result<GFElem, GfError> {
        self.check(other)?;
        Ok(self.wrap(self.ctx.mul(self.code, other.code)))
    }
    pub fn div(&self, other: &GFElem) -> Result<GFElem, GfError> {
        self.check(other)?;
        let inv = self
            .ctx
            .try_inv(other.code)
            .ok_or(GfError::DivisionByZero)?;
        Ok(self.wrap(self.ctx.mul(self.code, inv)))
    }
    pub fn neg(&self) -> GFElem {
        self.wrap(self.ctx.neg(self.code))
    }
    pub fn inv(&self) -> Result<GFElem, GfError> {
        let inv = self.ctx.try_inv(self.code).ok_or(GfError::DivisionByZero)?;
        Ok(self.wrap(inv))
    }
    pub fn pow(&self, e: u64) -> GFElem {
        self.wrap(self.ctx.pow(self.code, e))
    }
    /// `x^{p^j}`.
    pub fn frobenius(&self, j: u32) -> GFElem {
        self.wrap(self.ctx.frobenius(self.code, j))
    }
    /// The same element viewed in an extension of its field.
    pub fn embed(&self, target: &FieldCtx) -> Result<GFElem, GfError> {
        if !self.ctx.is_subfield_of(target) {
            return Err(GfError::NotSubfield(
                self.ctx.to_string(),
                target.to_string(),
            ));
        }
        Ok(GFElem {
            ctx: target.clone(),
            code: self.code,
        })
    }
    /// Coefficient vector over the immediate base (the element itself for prime fields).
    pub fn rep(&self) -> Vec<Code> {
        match self.ctx.base() {
            None => vec![self.code],
            Some(b) => self.ctx.coords_over(self.code, b),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(p, k)` with `n = p^k`, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = prime_factors(n);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}
