//! Certified interval arithmetic on dyadic fixed-point numbers.
//!
//! An [`Interval`] at precision `bits` is a pair of integers `lo <= hi`
//! standing for the real interval `[lo / 2^bits, hi / 2^bits]`. Every
//! operation rounds outward, so the true value of any expression built from
//! these operations is always enclosed.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Extra working bits used inside the transcendental kernels.
const GUARD_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

pub(crate) fn floor_shr(v: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return v.clone();
    }
    v.div_floor(&pow2(shift))
}

pub(crate) fn ceil_shr(v: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return v.clone();
    }
    -((-v).div_floor(&pow2(shift)))
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Largest f64 not above `v / 2^bits`.
fn lower_f64(v: &BigInt, bits: u32) -> f64 {
    to_f64_directed(v, bits, false)
}

/// Smallest f64 not below `v / 2^bits`.
fn upper_f64(v: &BigInt, bits: u32) -> f64 {
    to_f64_directed(v, bits, true)
}

fn to_f64_directed(v: &BigInt, bits: u32, up: bool) -> f64 {
    let drop = v.bits().saturating_sub(53) as u32;
    let m = if up { ceil_shr(v, drop) } else { floor_shr(v, drop) };
    // |m| <= 2^53, exact as f64
    let m = m.to_f64().expect("53-bit integer fits f64");
    let e = drop as i64 - bits as i64;
    scale_pow2(m, e)
}

fn scale_pow2(mut x: f64, mut e: i64) -> f64 {
    // Steps of 2^±500 keep every intermediate power exact.
    while e > 500 {
        x *= 2f64.powi(500);
        e -= 500;
    }
    while e < -500 {
        x *= 2f64.powi(-500);
        e += 500;
    }
    x * 2f64.powi(e as i32)
}

impl Interval {
    pub fn exact(value: BigInt, bits: u32) -> Self {
        let v = value << bits;
        Interval { lo: v.clone(), hi: v, bits }
    }

    pub fn from_i64(value: i64, bits: u32) -> Self {
        Self::exact(BigInt::from(value), bits)
    }

    /// Encloses `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let scaled = num << bits;
        Interval { lo: scaled.div_floor(&den), hi: ceil_div(&scaled, &den), bits }
    }

    fn from_raw(lo: BigInt, hi: BigInt, bits: u32) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lo_f64(&self) -> f64 {
        lower_f64(&self.lo, self.bits)
    }

    pub fn hi_f64(&self) -> f64 {
        upper_f64(&self.hi, self.bits)
    }

    pub fn mid_f64(&self) -> f64 {
        let sum: BigInt = &self.lo + &self.hi;
        lower_f64(&sum, self.bits + 1)
    }

    /// Width in units of the last place.
    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// Upper bound on the width as a power of two exponent (`width <= 2^result`).
    pub fn width_log2(&self) -> i64 {
        let w = self.width_ulps();
        if w.is_zero() {
            return i64::MIN;
        }
        w.bits() as i64 - self.bits as i64
    }

    /// The sign of every value in the interval, or `None` if it straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Certain ordering of two intervals, `None` if they overlap.
    pub fn compare(&self, other: &Interval) -> Option<Ordering> {
        assert_eq!(self.bits, other.bits);
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        assert_eq!(self.bits, other.bits);
        Interval::from_raw(&self.lo + &other.lo, &self.hi + &other.hi, self.bits)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        assert_eq!(self.bits, other.bits);
        Interval::from_raw(&self.lo - &other.hi, &self.hi - &other.lo, self.bits)
    }

    pub fn neg(&self) -> Interval {
        Interval::from_raw(-&self.hi, -&self.lo, self.bits)
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        assert_eq!(self.bits, other.bits);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        Interval::from_raw(floor_shr(min, self.bits), ceil_shr(max, self.bits), self.bits)
    }

    /// Quotient, or `None` when the divisor may be zero.
    pub fn div(&self, other: &Interval) -> Option<Interval> {
        assert_eq!(self.bits, other.bits);
        if other.contains_zero() {
            return None;
        }
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&self.lo, &self.hi] {
            let scaled = a << self.bits;
            for b in [&other.lo, &other.hi] {
                let (sa, sb) = if b.is_negative() { (-&scaled, -b) } else { (scaled.clone(), b.clone()) };
                let q_lo = sa.div_floor(&sb);
                let q_hi = ceil_div(&sa, &sb);
                if lo.as_ref().is_none_or(|l| q_lo < *l) {
                    lo = Some(q_lo);
                }
                if hi.as_ref().is_none_or(|h| q_hi > *h) {
                    hi = Some(q_hi);
                }
            }
        }
        Some(Interval::from_raw(lo.unwrap(), hi.unwrap(), self.bits))
    }

    /// Rescales to a different precision, rounding outward.
    pub fn with_bits(&self, bits: u32) -> Interval {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = bits - self.bits;
                Interval::from_raw(&self.lo << s, &self.hi << s, bits)
            }
            Ordering::Less => {
                let s = self.bits - bits;
                Interval::from_raw(floor_shr(&self.lo, s), ceil_shr(&self.hi, s), bits)
            }
        }
    }

    /// Widens by `ulps` units on both sides.
    fn pad(&self, ulps: u64) -> Interval {
        let p = BigInt::from(ulps);
        Interval::from_raw(&self.lo - &p, &self.hi + &p, self.bits)
    }
}

/// `atan(1/x)` in `w`-bit fixed point, with an error bound in ulps.
fn atan_inv(x: u64, w: u32) -> (BigInt, u64) {
    let x2 = BigInt::from(x * x);
    let mut power = pow2(w) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &x2;
        k += 1;
    }
    (sum, 3 * k + 5)
}

fn pi_cache() -> &'static Mutex<HashMap<u32, Interval>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// An enclosure of π at the requested precision (Machin's formula).
pub fn pi(bits: u32) -> Interval {
    if let Some(p) = pi_cache().lock().unwrap().get(&bits) {
        return p.clone();
    }
    let w = bits + GUARD_BITS;
    let (a5, e5) = atan_inv(5, w);
    let (a239, e239) = atan_inv(239, w);
    let value: BigInt = a5 * 16 - a239 * 4;
    let err = 16 * e5 + 4 * e239;
    let wide = Interval::from_raw(value.clone(), value, w).pad(err);
    let result = wide.with_bits(bits);
    pi_cache().lock().unwrap().insert(bits, result.clone());
    result
}

/// `sin(x)` for a point `x = v / 2^w` with `0 <= x <= 1.6`, with an error bound in ulps.
fn sin_point(x: &BigInt, w: u32) -> (BigInt, u64) {
    let x2 = floor_shr(&(x * x), w);
    let mut term = x.clone();
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        k += 1;
        let denom = BigInt::from((2 * k) * (2 * k + 1));
        term = floor_shr(&(&term * &x2), w) / denom;
    }
    (sum, 4 * k + 8)
}

/// An enclosure of `sin(π · num / den)`.
pub fn sin_pi_frac(num: i64, den: u64, bits: u32) -> Interval {
    assert!(den > 0);
    let period = 2 * den as i128;
    let mut r = (num as i128).rem_euclid(period);
    let mut negate = false;
    if r >= den as i128 {
        r -= den as i128;
        negate = true;
    }
    if 2 * r > den as i128 {
        r = den as i128 - r;
    }
    let result = if r == 0 {
        Interval::from_i64(0, bits)
    } else if 2 * r == den as i128 {
        Interval::from_i64(1, bits)
    } else {
        let w = bits + GUARD_BITS;
        let p = pi(w);
        let r = BigInt::from(r);
        let d = BigInt::from(den);
        let x_lo = (&p.lo * &r).div_floor(&d);
        let x_hi = ceil_div(&(&p.hi * &r), &d);
        // sin is increasing on [0, π/2]; the reduced argument stays below π/2.
        debug_assert!(&x_hi * 2 < p.lo);
        let (s_lo, e_lo) = sin_point(&x_lo, w);
        let (s_hi, e_hi) = sin_point(&x_hi, w);
        let lo = s_lo - BigInt::from(e_lo);
        let hi = s_hi + BigInt::from(e_hi);
        Interval::from_raw(lo, hi, w).with_bits(bits)
    };
    if negate {
        result.neg()
    } else {
        result
    }
}

/// An enclosure of `cos(π · num / den)`.
pub fn cos_pi_frac(num: i64, den: u64, bits: u32) -> Interval {
    // cos(πa/b) = sin(π(b - 2a) / 2b)
    sin_pi_frac(den as i64 - 2 * num, 2 * den, bits)
}

/// Certified `[lo, hi]` f64 bounds of `sin(π k / n)` for `k = 0..=n`.
pub fn sine_table_f64(n: u32) -> Vec<(f64, f64)> {
    (0..=n as i64)
        .map(|k| {
            let iv = sin_pi_frac(k, n as u64, 128);
            (iv.lo_f64(), iv.hi_f64())
        })
        .collect()
}

/// Lower bound of a product of nonnegative f64 lower bounds.
pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if p == 0.0 {
        0.0
    } else {
        p.next_down()
    }
}

/// Upper bound of a product of nonnegative f64 upper bounds.
pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    (a * b).next_up()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(iv: &Interval, x: f64) -> bool {
        iv.lo_f64() <= x && x <= iv.hi_f64()
    }

    #[test]
    fn shifts_round_toward_the_right_side() {
        let v = BigInt::from(-7);
        assert_eq!(floor_shr(&v, 1), BigInt::from(-4));
        assert_eq!(ceil_shr(&v, 1), BigInt::from(-3));
        assert_eq!(floor_shr(&BigInt::from(7), 1), BigInt::from(3));
        assert_eq!(ceil_shr(&BigInt::from(7), 1), BigInt::from(4));
    }

    #[test]
    fn pi_encloses_known_digits() {
        let p = pi(256);
        assert!(contains(&p, std::f64::consts::PI));
        assert!(p.width_log2() < -200);
        // 40 decimal digits of π, as an exact rational.
        let num: BigInt = "31415926535897932384626433832795028841971".parse().unwrap();
        let den: BigInt = BigInt::from(10).pow(40);
        let lo = Interval::from_ratio(&(&num - 1), &den, 256);
        let hi = Interval::from_ratio(&(&num + 1), &den, 256);
        assert_eq!(p.compare(&lo), Some(Ordering::Greater));
        assert_eq!(p.compare(&hi), Some(Ordering::Less));
    }

    #[test]
    fn sine_values_match_closed_forms() {
        for bits in [64, 128, 512] {
            let half = sin_pi_frac(1, 6, bits);
            assert!(half.compare(&Interval::from_ratio(&BigInt::from(1), &BigInt::from(2), bits)).is_none());
            assert!(half.width_log2() < -(bits as i64) + 8);
            let s = sin_pi_frac(1, 4, bits);
            let sq = s.mul(&s);
            assert!(sq.sub(&Interval::from_ratio(&BigInt::one(), &BigInt::from(2), bits)).contains_zero());
        }
        assert_eq!(sin_pi_frac(0, 7, 64).sign(), Some(Ordering::Equal));
        assert_eq!(sin_pi_frac(7, 7, 64).sign(), Some(Ordering::Equal));
        assert_eq!(sin_pi_frac(9, 7, 64).sign(), Some(Ordering::Less));
    }

    #[test]
    fn sine_agrees_with_libm() {
        for n in 1..40u64 {
            for k in -(2 * n as i64)..=(2 * n as i64) {
                let x = std::f64::consts::PI * k as f64 / n as f64;
                let s = sin_pi_frac(k, n, 128);
                assert!((s.mid_f64() - x.sin()).abs() < 1e-14, "k={k} n={n}");
                let c = cos_pi_frac(k, n, 128);
                assert!((c.mid_f64() - x.cos()).abs() < 1e-14, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn division_encloses_quotient() {
        let a = sin_pi_frac(1, 7, 128);
        let b = cos_pi_frac(3, 11, 128);
        let q = a.div(&b).unwrap();
        let expect = (std::f64::consts::PI / 7.0).sin() / (3.0 * std::f64::consts::PI / 11.0).cos();
        assert!((q.mid_f64() - expect).abs() < 1e-14);
        assert!(a.div(&Interval::from_raw(BigInt::from(-1), BigInt::from(1), 128)).is_none());
    }

    #[test]
    fn f64_bounds_are_outward() {
        let table = sine_table_f64(13);
        for (k, (lo, hi)) in table.iter().enumerate() {
            let s = sin_pi_frac(k as i64, 13, 512).mid_f64();
            assert!(*lo <= s && s <= *hi);
        }
    }
}
