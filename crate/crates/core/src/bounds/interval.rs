//! Closed intervals with exact rational endpoints.
//!
//! Irrational powers are bracketed on the dyadic grid `2^-bits`; refining `bits` never widens a
//! bracket, so every operation here is inclusion-monotone in the precision.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn big_pow(base: u64, e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(base).pow(e))
}

impl Interval {
    pub fn exact(x: BigRational) -> Interval {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn int(n: i64) -> Interval {
        Interval::exact(rat(n))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().cloned().expect("four products");
        let hi = c.iter().max().cloned().expect("four products");
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        self.mul(&Interval::exact(k.clone()))
    }

    /// `1 / self` for an interval of positive numbers.
    pub fn recip(&self) -> Interval {
        assert!(
            self.lo.is_positive(),
            "reciprocal of an interval containing zero"
        );
        Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn div(&self, o: &Interval) -> Interval {
        self.mul(&o.recip())
    }

    /// `x^(1/k)` for a nonnegative integer `x`; exact when `x` is a perfect `k`-th power.
    pub fn root(x: &BigUint, k: u32, bits: u32) -> Interval {
        let r = x.nth_root(k);
        if &r.pow(k) == x {
            return Interval::exact(BigRational::from_integer(BigInt::from(r)));
        }
        let scaled: BigUint = x << (k as usize * bits as usize);
        let s = scaled.nth_root(k);
        let den = BigInt::one() << bits as usize;
        let lo = BigRational::new(BigInt::from_biguint(Sign::Plus, s.clone()), den.clone());
        let hi = BigRational::new(BigInt::from_biguint(Sign::Plus, s + 1u32), den);
        Interval { lo, hi }
    }

    /// `base^(num/den)` for an integer `base >= 1`.
    pub fn pow_frac(base: u64, num: i64, den: u32, bits: u32) -> Interval {
        let (whole, rem) = num.div_mod_floor(&(den as i64));
        let frac = if rem == 0 {
            Interval::int(1)
        } else {
            Interval::root(&BigUint::from(base).pow(rem as u32), den, bits)
        };
        let w = big_pow(base, whole.unsigned_abs() as u32);
        if whole >= 0 {
            frac.scale(&w)
        } else {
            frac.scale(&w.recip())
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / rat(2))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// Smallest `e` with `|x| < 10^(e+1)`, i.e. `floor(log10 |x|)` for `x != 0`.
fn decimal_exponent(x: &BigRational) -> i64 {
    let ax = x.abs();
    let ten = rat(10);
    let mut e = ((ax.numer().bits() as f64 - ax.denom().bits() as f64) * std::f64::consts::LOG10_2)
        .floor() as i64;
    let pow10 = |e: i64| {
        if e >= 0 {
            big_pow(10, e as u32)
        } else {
            big_pow(10, (-e) as u32).recip()
        }
    };
    while pow10(e) > ax {
        e -= 1;
    }
    while pow10(e) * &ten <= ax {
        e += 1;
    }
    e
}

/// `x` to `digits` significant digits, rounded toward `+inf` when `up`, else toward `-inf`.
pub fn format_sig(x: &BigRational, digits: u32, up: bool) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if x.is_integer() && x.numer().abs() < BigInt::from(10).pow(digits) {
        return x.numer().to_string();
    }
    let e = decimal_exponent(x);
    let shift = digits as i64 - 1 - e;
    let scaled = if shift >= 0 {
        x * big_pow(10, shift as u32)
    } else {
        x / big_pow(10, (-shift) as u32)
    };
    let m = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = m.is_negative();
    let mut s = m.abs().to_string();
    // A carry can add a digit (e.g. 9.99 -> 10.0).
    let e = e + (s.len() as i64 - digits as i64);
    let sign = if neg { "-" } else { "" };
    if (-5..15).contains(&e) {
        if e >= s.len() as i64 - 1 {
            s.push_str(&"0".repeat((e + 1 - s.len() as i64) as usize));
            return format!("{sign}{s}");
        }
        let s = if e >= 0 {
            let (a, b) = s.split_at(e as usize + 1);
            format!("{a}.{b}")
        } else {
            format!("0.{}{s}", "0".repeat((-e - 1) as usize))
        };
        let s = s.trim_end_matches('0').trim_end_matches('.');
        format!("{sign}{s}")
    } else {
        let (a, b) = s.split_at(1);
        let b = b.trim_end_matches('0');
        if b.is_empty() {
            format!("{sign}{a}e{e}")
        } else {
            format!("{sign}{a}.{b}e{e}")
        }
    }
}
