//! Exact plane counts, degree bounds of the genericity conditions and per-class ceilings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::interval::{big_pow, rat, ratio, Interval};
use super::{BoundValue, BoundsError, Direction, Evaluator};

fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_display_opt<T: std::fmt::Display, S: Serializer>(
    v: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Plane counts in `A^n` over `F_q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneStatistics {
    pub q: u64,
    pub n: u32,
    /// Planes with a parametrization `X1 = nu1 + X`, `Xi = nui + omegai X + etai Y`.
    #[serde(serialize_with = "ser_display")]
    pub a: BigInt,
    /// All affine planes.
    #[serde(serialize_with = "ser_display")]
    pub m_t: BigInt,
    /// Planes through a fixed point.
    #[serde(serialize_with = "ser_display")]
    pub e: BigInt,
    /// `m_t - a`.
    #[serde(serialize_with = "ser_display")]
    pub d: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub d_over_a: BigRational,
    /// `4 / (3 q^2)`.
    #[serde(serialize_with = "ser_display")]
    pub d_over_a_ceiling: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub a_over_e: BigRational,
    /// `q^(n-2)`.
    #[serde(serialize_with = "ser_display")]
    pub a_over_e_ceiling: BigRational,
}

impl PlaneStatistics {
    /// `delta^2 / q^2`.
    pub fn c_over_a_ceiling(&self, delta: u32) -> BigRational {
        ratio((delta as i64).pow(2), 1) / big_pow(self.q, 2)
    }

    /// Parametrizations of one plane of type `a`: `q^3 (q - 1)`.
    pub fn reparametrizations(&self) -> u64 {
        self.q.pow(3) * (self.q - 1)
    }
}

fn exact_div(num: BigInt, den: BigInt, what: &str) -> Result<BigInt, BoundsError> {
    let (quo, rem) = num.div_rem(&den);
    if rem.is_zero() {
        Ok(quo)
    } else {
        Err(BoundsError::NonIntegerSanity(format!(
            "{what}: {num} / {den}"
        )))
    }
}

/// Closed forms for the plane counts; each division is checked to be exact.
pub fn plane_statistics(q: u64, n: u32) -> Result<PlaneStatistics, BoundsError> {
    if n < 2 || q < 2 {
        return Err(BoundsError::InvalidInput(format!(
            "need n >= 2 and q >= 2, got n = {n}, q = {q}"
        )));
    }
    let b = |x: u64| BigInt::from(x);
    let qp = |e: u32| b(q).pow(e);
    let qq = qp(2);
    let a = exact_div(qp(2 * n - 1) * (qp(n - 1) - 1), qp(3) * (b(q) - 1), "A")?;
    let m_t = exact_div(
        qp(n) * (qp(n) - 1) * (qp(n) - b(q)),
        &qq * (&qq - 1) * (&qq - b(q)),
        "M_T",
    )?;
    let e = exact_div((qp(n) - 1) * (qp(n) - b(q)), (&qq - 1) * (&qq - b(q)), "E")?;
    let d = &m_t - &a;
    let d_closed = exact_div(
        qp(n) * (qp(n - 1) - 1) * (qp(n - 1) - b(q)),
        &qq * (&qq - 1) * (&qq - b(q)),
        "D",
    )?;
    if d != d_closed {
        return Err(BoundsError::NonIntegerSanity(format!(
            "D = {d} but the closed form gives {d_closed}"
        )));
    }
    let r = |x: &BigInt| BigRational::from_integer(x.clone());
    Ok(PlaneStatistics {
        q,
        n,
        d_over_a: r(&d) / r(&a),
        d_over_a_ceiling: ratio(4, 3) / r(&qq),
        a_over_e: r(&a) / r(&e),
        a_over_e_ceiling: r(&qp(n - 2)),
        a,
        m_t,
        e,
        d,
    })
}

/// Degree bounds of the polynomials whose nonvanishing guarantees absolutely irreducible
/// plane sections (`xi_deg`), and the absence of factors of degree at most `D` (`psi_d_deg`,
/// `xi_d_deg`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeBounds {
    pub delta: u32,
    pub d: Option<u32>,
    #[serde(serialize_with = "ser_display")]
    pub xi_deg: BigRational,
    #[serde(serialize_with = "ser_display_opt")]
    pub psi_d_deg: Option<BigRational>,
    #[serde(serialize_with = "ser_display_opt")]
    pub xi_d_deg: Option<BigRational>,
}

/// `3 d^4 / 2 - 2 d^3 + 5 d^2 / 2`.
pub(crate) fn xi_deg(delta: u32) -> BigRational {
    let d = rat(delta as i64);
    ratio(3, 2) * d.pow(4) - rat(2) * d.pow(3) + ratio(5, 2) * d.pow(2)
}

pub(crate) fn psi_d_deg(delta: u32, dd: u32) -> BigRational {
    let (d, k) = (rat(delta as i64), rat(dd as i64));
    let k2 = &k * &k;
    &k * d.pow(2) * (&k + rat(1)) * (&k + rat(2))
        - (&k2 + rat(3) * &k) * (&k2 + rat(3) * &k + rat(2)) * &d / rat(8)
}

pub(crate) fn xi_d_deg(delta: u32, dd: u32) -> BigRational {
    let (d, k) = (rat(delta as i64), rat(dd as i64));
    let d2 = d.pow(2);
    k.pow(3) * &d2 - k.pow(4) * &d / rat(8) - ratio(3, 4) * k.pow(3) * &d + rat(3) * k.pow(2) * &d2
        - ratio(11, 8) * k.pow(2) * &d
        + rat(2) * &k * &d2
        - ratio(3, 4) * &k * &d
        + rat(2) * &d2
}

pub fn bertini_degree_bounds(delta: u32, dd: Option<u32>) -> Result<DegreeBounds, BoundsError> {
    if delta < 2 {
        return Err(BoundsError::InvalidInput(format!(
            "need delta >= 2, got {delta}"
        )));
    }
    if let Some(k) = dd {
        if k < 1 || k > delta - 1 {
            return Err(BoundsError::DOutOfRange {
                d: k,
                max: delta - 1,
            });
        }
    }
    Ok(DegreeBounds {
        delta,
        d: dd,
        xi_deg: xi_deg(delta),
        psi_d_deg: dd.map(|k| psi_d_deg(delta, k)),
        xi_d_deg: dd.map(|k| xi_d_deg(delta, k)),
    })
}

/// Coefficient of `q^(3n-6) / (q-1)` in the ceiling on the planes of classes `j..delta-1`.
pub(crate) fn tail_coefficient(delta: u32, j: u32) -> BigRational {
    let d = rat(delta as i64);
    let j = rat(j as i64);
    let inv = |k: u32| j.pow(k as i32).recip();
    d.pow(5) * (inv(3) - inv(4) / rat(8))
        + rat(3) * d.pow(4) * (inv(2) - inv(3) / rat(4))
        + d.pow(3) * (rat(2) * inv(1) - ratio(11, 8) * inv(2))
        - ratio(3, 4) * d.pow(2) * inv(1)
        + rat(2) * d.pow(2)
}

/// Ceilings on plane counts by class, all in units of planes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiClassBounds {
    pub delta: u32,
    pub q: u64,
    pub n: u32,
    pub j: u32,
    /// Planes in classes `j, ..., delta - 1`.
    pub tail: BoundValue,
    /// `sum_j j #(Pi_j)` over `j = 1..delta-1`.
    pub weighted_sum: BoundValue,
    /// `#(Pi_1)` when `delta = 2`.
    pub delta_two: Option<BoundValue>,
    /// Planes with a non-absolutely-irreducible restriction when `p > 2 delta^2`.
    pub gao_planes: BoundValue,
    /// `sum_j j #(Pi_j)` including the vanishing class, from a second-moment argument.
    pub second_moment: BoundValue,
}

pub fn pi_class_bounds(delta: u32, q: u64, n: u32, j: u32) -> Result<PiClassBounds, BoundsError> {
    Evaluator::default().pi_class_bounds(delta, q, n, j)
}

impl Evaluator {
    pub fn pi_class_bounds(
        &self,
        delta: u32,
        q: u64,
        n: u32,
        j: u32,
    ) -> Result<PiClassBounds, BoundsError> {
        if delta < 2 || j < 1 || n < 2 || q < 2 {
            return Err(BoundsError::InvalidInput(format!(
                "delta = {delta}, j = {j}, n = {n}, q = {q}"
            )));
        }
        let inputs = [
            ("delta", delta as i64),
            ("q", q as i64),
            ("n", n as i64),
            ("j", j as i64),
        ];
        let qm1 = rat(q as i64 - 1);
        // q^(3n-6) / (q - 1) and q^(3n-3) / (q^3 (q - 1)) coincide.
        let unit = big_pow(q, 3 * n - 6) / &qm1;
        let up = |name, v: Interval| BoundValue::new(name, Direction::RoundUp, v, &inputs);
        let tail = up(
            "pi_tail",
            Interval::exact(tail_coefficient(delta, j) * &unit),
        );
        let delta_two =
            (delta == 2).then(|| up("pi_delta_two", Interval::exact(xi_deg(2) * &unit)));
        let weighted = if delta == 2 {
            Interval::exact(xi_deg(2) * &unit)
        } else {
            self.dthird(delta, 13)
                .scale(&rat(2))
                .add(&self.dthird(delta, 11).scale(&rat(3)))
                .scale(&unit)
        };
        let gao = Interval::exact(ratio(3, 2) * rat(delta as i64).pow(3) * &unit);
        let e = plane_statistics(q, n)?.e;
        let lemma6 = Interval::exact(
            rat(4 * delta as i64)
                * BigRational::from_integer(e)
                * Evaluator::new(self.bits).qpow(q, n as i64 - 3).hi,
        );
        Ok(PiClassBounds {
            delta,
            q,
            n,
            j,
            tail,
            weighted_sum: up("pi_weighted_sum", weighted),
            delta_two,
            gao_planes: up("gao_planes", gao),
            second_moment: up("pi_second_moment", lemma6),
        })
    }
}
