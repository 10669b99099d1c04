//! Exact arithmetic in `Z[x] / Φ_m(x)` and the concurrency test for three
//! pairwise-crossing chords of a regular polygon.
//!
//! Three chords whose six endpoints cut the circle into arcs
//! `u, x, v, y, w, z` (counted in steps of `2π/n`, listed in circular order)
//! pass through one point exactly when
//!
//! ```text
//! sin(πu/n) sin(πv/n) sin(πw/n) = sin(πx/n) sin(πy/n) sin(πz/n)
//! ```
//!
//! With `ζ = exp(iπ/n)` we have `sin(πk/n) = (ζ^k - ζ^-k) / 2i`, so the
//! identity is a polynomial identity in `ζ`, which is decided by reducing
//! modulo the `2n`-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Poly = Vec<BigInt>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(&mut out);
    out
}

/// Division by a monic polynomial; returns `(quotient, remainder)`.
fn poly_divrem_monic(num: &[BigInt], den: &[BigInt]) -> (Poly, Poly) {
    let d = den.len() - 1;
    debug_assert!(den[d].is_one());
    let mut rem: Poly = num.to_vec();
    trim(&mut rem);
    if rem.len() <= d {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for top in (d..rem.len()).rev() {
        let c = std::mem::take(&mut rem[top]);
        if c.is_zero() {
            continue;
        }
        for k in 0..d {
            rem[top - d + k] -= &c * &den[k];
        }
        quot[top - d] = c;
    }
    rem.truncate(d);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Poly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Poly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn phi(m: u32) -> Arc<Poly> {
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut acc: Poly = vec![BigInt::zero(); m as usize + 1];
    acc[0] = BigInt::from(-1);
    acc[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let (q, r) = poly_divrem_monic(&acc, &phi(d));
        debug_assert!(r.is_empty(), "Φ_{d} does not divide x^{m} - 1");
        acc = q;
    }
    let p = Arc::new(acc);
    phi_cache().lock().unwrap().insert(m, p.clone());
    p
}

/// Coefficients of the `m`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic index must be positive");
    phi(m).as_ref().clone()
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    let mut result = m;
    let mut k = m;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            while k.is_multiple_of(p) {
                k /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if k > 1 {
        result -= result / k;
    }
    result
}

/// A residue class of `Z[x]` modulo `Φ_m(x)`, stored by its canonical
/// representative of degree below `φ(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicPoly {
    modulus_index: u32,
    coefficients: Vec<BigInt>,
}

impl CyclotomicPoly {
    /// Reduces an arbitrary integer polynomial (constant term first).
    pub fn from_poly(m: u32, coefficients: &[BigInt]) -> Self {
        assert!(m >= 1);
        let modulus = phi(m);
        let degree = modulus.len() - 1;
        let (_, mut rem) = poly_divrem_monic(coefficients, &modulus);
        rem.resize(degree, BigInt::zero());
        CyclotomicPoly { modulus_index: m, coefficients: rem }
    }

    pub fn zero(m: u32) -> Self {
        Self::from_poly(m, &[])
    }

    pub fn one(m: u32) -> Self {
        Self::from_poly(m, &[BigInt::one()])
    }

    /// The class of `x^e`; negative exponents use `x^m ≡ 1`.
    pub fn monomial(m: u32, e: i64) -> Self {
        let e = e.rem_euclid(m as i64) as usize;
        let mut p = vec![BigInt::zero(); e + 1];
        p[e] = BigInt::one();
        Self::from_poly(m, &p)
    }

    pub fn modulus_index(&self) -> u32 {
        self.modulus_index
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.modulus_index, other.modulus_index, "mixing residues of different cyclotomic rings");
    }
}

impl Add for &CyclotomicPoly {
    type Output = CyclotomicPoly;
    fn add(self, rhs: &CyclotomicPoly) -> CyclotomicPoly {
        self.check_same(rhs);
        let coefficients = self.coefficients.iter().zip(&rhs.coefficients).map(|(a, b)| a + b).collect();
        CyclotomicPoly { modulus_index: self.modulus_index, coefficients }
    }
}

impl Sub for &CyclotomicPoly {
    type Output = CyclotomicPoly;
    fn sub(self, rhs: &CyclotomicPoly) -> CyclotomicPoly {
        self.check_same(rhs);
        let coefficients = self.coefficients.iter().zip(&rhs.coefficients).map(|(a, b)| a - b).collect();
        CyclotomicPoly { modulus_index: self.modulus_index, coefficients }
    }
}

impl Neg for &CyclotomicPoly {
    type Output = CyclotomicPoly;
    fn neg(self) -> CyclotomicPoly {
        let coefficients = self.coefficients.iter().map(|a| -a).collect();
        CyclotomicPoly { modulus_index: self.modulus_index, coefficients }
    }
}

impl Mul for &CyclotomicPoly {
    type Output = CyclotomicPoly;
    fn mul(self, rhs: &CyclotomicPoly) -> CyclotomicPoly {
        self.check_same(rhs);
        CyclotomicPoly::from_poly(self.modulus_index, &poly_mul(&self.coefficients, &rhs.coefficients))
    }
}

impl fmt::Display for CyclotomicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod Φ_{}", format_poly(&self.coefficients), self.modulus_index)
    }
}

/// Renders integer coefficients (constant term first) as `x^2 - x + 1`.
pub fn format_poly(coefficients: &[BigInt]) -> String {
    let mut out = String::new();
    for (e, c) in coefficients.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let show_coeff = !mag.is_one() || e == 0;
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        match e {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{e}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The six arc counts cut from the circle of a regular `n`-gon by three
/// pairwise-crossing chords, in circular order `u, x, v, y, w, z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcTuple {
    n: u32,
    arcs: [u32; 6],
}

impl ArcTuple {
    pub fn new(n: u32, arcs: [u32; 6]) -> Result<Self> {
        let total: u64 = arcs.iter().map(|&a| a as u64).sum();
        if n == 0 || total != n as u64 {
            return Err(Error::InvalidInput(format!("arc counts {arcs:?} do not sum to n = {n}")));
        }
        Ok(ArcTuple { n, arcs })
    }

    /// Builds a tuple from the two alternating triples `(u, v, w)` and `(x, y, z)`.
    pub fn from_triples(n: u32, uvw: [u32; 3], xyz: [u32; 3]) -> Result<Self> {
        Self::new(n, [uvw[0], xyz[0], uvw[1], xyz[1], uvw[2], xyz[2]])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arcs(&self) -> [u32; 6] {
        self.arcs
    }

    pub fn uvw(&self) -> [u32; 3] {
        [self.arcs[0], self.arcs[2], self.arcs[4]]
    }

    pub fn xyz(&self) -> [u32; 3] {
        [self.arcs[1], self.arcs[3], self.arcs[5]]
    }

    /// The arcs as fractions of the full circle, in `(U, V, W, X, Y, Z)` order.
    pub fn fractions(&self) -> [Ratio<i64>; 6] {
        let n = self.n as i64;
        let [u, v, w] = self.uvw();
        let [x, y, z] = self.xyz();
        [u, v, w, x, y, z].map(|a| Ratio::new(a as i64, n))
    }
}

impl fmt::Display for ArcTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fractions().iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Exact decision of the sine-product identity for `t`.
pub fn sine_product_equal(t: &ArcTuple) -> bool {
    let m = 2 * t.n;
    let [u, v, w] = t.uvw().map(|a| a as i64);
    let [x, y, z] = t.xyz().map(|a| a as i64);
    // Π(ζ^a - ζ^-a) over (u,v,w) minus the same over (x,y,z); exponents are taken mod 2n.
    let mut coeffs = vec![0i64; m as usize];
    let mut expand = |base: i64, triple: [i64; 3], sign: i64| {
        for mask in 0..8u32 {
            let mut e = base;
            let mut s = sign;
            for (bit, a) in triple.iter().enumerate() {
                if mask & (1 << bit) == 0 {
                    e += a;
                } else {
                    e -= a;
                    s = -s;
                }
            }
            coeffs[e.rem_euclid(m as i64) as usize] += s;
        }
    };
    expand(0, [u, v, w], 1);
    expand(0, [x, y, z], -1);
    let big: Vec<BigInt> = coeffs.into_iter().map(BigInt::from).collect();
    CyclotomicPoly::from_poly(m, &big).is_zero()
}

/// Label of a solution of the sine-product identity under the classification
/// into trivial solutions, four one-parameter families and sporadic ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SolutionTag {
    NotASolution,
    Trivial,
    FamilyI,
    FamilyII,
    FamilyIII,
    FamilyIV,
    SporadicKnown,
    SporadicUnlisted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SolutionClass {
    tag: SolutionTag,
    parameter: Option<Ratio<i64>>,
}

impl SolutionClass {
    fn plain(tag: SolutionTag) -> Self {
        SolutionClass { tag, parameter: None }
    }

    pub fn tag(&self) -> SolutionTag {
        self.tag
    }

    /// The family parameter `t`; present exactly for the four families.
    pub fn parameter(&self) -> Option<Ratio<i64>> {
        self.parameter
    }
}

impl fmt::Display for SolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter {
            Some(t) => write!(f, "{:?}(t={t})", self.tag),
            None => write!(f, "{:?}", self.tag),
        }
    }
}

impl Serialize for SolutionClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SolutionClass", 2)?;
        st.serialize_field("tag", &self.tag)?;
        st.serialize_field("t", &self.parameter.map(|t| t.to_string()))?;
        st.end()
    }
}

type Frac = Ratio<i64>;

fn fr(n: i64, d: i64) -> Frac {
    Ratio::new(n, d)
}

/// One row `U..Z` of a family: each entry is `a + b·t`.
struct FamilyRow {
    tag: SolutionTag,
    entries: [(Frac, Frac); 6],
    upper: Frac,
}

fn family_rows() -> [FamilyRow; 4] {
    let c = |a: Frac| (a, fr(0, 1));
    let lin = |a: Frac, b: i64| (a, fr(b, 1));
    [
        FamilyRow {
            tag: SolutionTag::FamilyI,
            entries: [c(fr(1, 6)), lin(fr(0, 1), 1), lin(fr(1, 3), -2), lin(fr(1, 3), 1), lin(fr(0, 1), 1), lin(fr(1, 6), -1)],
            upper: fr(1, 6),
        },
        FamilyRow {
            tag: SolutionTag::FamilyII,
            entries: [c(fr(1, 6)), lin(fr(1, 2), -3), lin(fr(0, 1), 1), lin(fr(1, 6), -1), lin(fr(0, 1), 2), lin(fr(1, 6), 1)],
            upper: fr(1, 6),
        },
        FamilyRow {
            tag: SolutionTag::FamilyIII,
            entries: [c(fr(1, 6)), lin(fr(1, 6), -2), lin(fr(0, 1), 2), lin(fr(1, 6), -2), lin(fr(0, 1), 1), lin(fr(1, 2), 1)],
            upper: fr(1, 12),
        },
        FamilyRow {
            tag: SolutionTag::FamilyIV,
            entries: [lin(fr(1, 3), -4), lin(fr(0, 1), 1), lin(fr(1, 3), 1), lin(fr(1, 6), -2), lin(fr(0, 1), 3), lin(fr(1, 6), 1)],
            upper: fr(1, 12),
        },
    ]
}

/// Sporadic solutions with a value repeated three times.
fn known_sporadic() -> [[Frac; 6]; 2] {
    [
        [fr(1, 15), fr(1, 15), fr(7, 15), fr(1, 15), fr(1, 10), fr(7, 30)],
        [fr(1, 30), fr(1, 30), fr(7, 10), fr(1, 30), fr(1, 15), fr(2, 15)],
    ]
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// All 72 images of `(U, V, W, X, Y, Z)` under permutations within each
/// triple and swapping the triples.
pub fn symmetry_images<T: Copy>(values: [T; 6]) -> Vec<[T; 6]> {
    let mut out = Vec::with_capacity(72);
    for swap in [false, true] {
        let (first, second) = if swap {
            ([values[3], values[4], values[5]], [values[0], values[1], values[2]])
        } else {
            ([values[0], values[1], values[2]], [values[3], values[4], values[5]])
        };
        for p in PERMS3 {
            for q in PERMS3 {
                out.push([first[p[0]], first[p[1]], first[p[2]], second[q[0]], second[q[1]], second[q[2]]]);
            }
        }
    }
    out
}

fn canonical(values: [Frac; 6]) -> [Frac; 6] {
    symmetry_images(values).into_iter().min().unwrap()
}

fn sorted3(mut t: [Frac; 3]) -> [Frac; 3] {
    t.sort();
    t
}

fn family_parameter(row: &FamilyRow, image: &[Frac; 6]) -> Option<Frac> {
    let zero = fr(0, 1);
    let (j, (a, b)) = row.entries.iter().enumerate().find(|(_, (_, b))| *b != zero)?;
    let t = (image[j] - a) / b;
    if !(t > zero && t < row.upper) {
        return None;
    }
    let reproduces = row.entries.iter().zip(image).all(|((a, b), v)| *a + *b * t == *v);
    reproduces.then_some(t)
}

/// Least image of `(u, v, w, x, y, z)` under the 72 symmetries; equal for
/// tuples that agree up to permutation within and swapping of the triples.
pub fn canonical_form(t: &ArcTuple) -> [u32; 6] {
    let [u, v, w] = t.uvw();
    let [x, y, z] = t.xyz();
    symmetry_images([u, v, w, x, y, z]).into_iter().min().expect("images exist")
}

/// Classifies a tuple: not a solution, trivial, one of the four families
/// (with the smallest admissible parameter), a tabulated sporadic solution,
/// or an unlisted one.
pub fn classify_solution(t: &ArcTuple) -> SolutionClass {
    if !sine_product_equal(t) {
        return SolutionClass::plain(SolutionTag::NotASolution);
    }
    let values = t.fractions();
    let first = [values[0], values[1], values[2]];
    let second = [values[3], values[4], values[5]];
    let half = fr(1, 2);
    if sorted3(first) == sorted3(second) && first.iter().sum::<Frac>() == half {
        return SolutionClass::plain(SolutionTag::Trivial);
    }
    let images = symmetry_images(values);
    for row in family_rows() {
        let best = images.iter().filter_map(|img| family_parameter(&row, img)).min();
        if let Some(t) = best {
            return SolutionClass { tag: row.tag, parameter: Some(t) };
        }
    }
    let key = canonical(values);
    if known_sporadic().into_iter().any(|s| canonical(s) == key) {
        return SolutionClass::plain(SolutionTag::SporadicKnown);
    }
    SolutionClass::plain(SolutionTag::SporadicUnlisted)
}

/// Re-instantiates the table row of a family label at its parameter.
pub fn family_row_values(class: &SolutionClass) -> Option<[Frac; 6]> {
    let t = class.parameter?;
    let row = family_rows().into_iter().find(|r| r.tag == class.tag)?;
    Some(row.entries.map(|(a, b)| a + b * t))
}

fn check_even_n(n: u32) -> Result<()> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("n must be even and at least 8, got {n}")));
    }
    Ok(())
}

/// Arc tuple of the chords `v1v4`, `v2v(6+b)`, `v3v(n-b-1)` (1-based labels).
pub fn c1_tuple(n: u32, b: u32) -> Result<ArcTuple> {
    check_even_n(n)?;
    if b + 5 > n / 2 {
        return Err(Error::InvalidInput(format!("b = {b} outside 0..={} for n = {n}", n as i64 / 2 - 5)));
    }
    ArcTuple::new(n, [b + 2, 1, 1, 1, b + 2, n - 2 * b - 7])
}

/// Arc tuple of the chords `v1v4`, `v2v(6+b)`, `v3v(n-b)` (1-based labels).
pub fn c2_tuple(n: u32, b: u32) -> Result<ArcTuple> {
    check_even_n(n)?;
    if b + 4 > n / 2 {
        return Err(Error::InvalidInput(format!("b = {b} outside 0..={} for n = {n}", n / 2 - 4)));
    }
    ArcTuple::new(n, [b + 1, 1, 1, 1, b + 2, n - 2 * b - 6])
}

/// Whether the heavy crossing `C1` occurs in the regular `n`-gon for offset `b`.
pub fn check_c1(n: u32, b: u32) -> Result<bool> {
    Ok(sine_product_equal(&c1_tuple(n, b)?))
}

/// Whether the heavy crossing `C2` occurs in the regular `n`-gon for offset `b`.
pub fn check_c2(n: u32, b: u32) -> Result<bool> {
    Ok(sine_product_equal(&c2_tuple(n, b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Schoolbook long division over the rationals, written independently of
    /// the monic division used by the implementation.
    fn oracle_divide(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let mut rem: Vec<Ratio<i64>> = num.iter().map(|&c| Ratio::from_integer(c)).collect();
        let dlead = Ratio::from_integer(*den.last().unwrap());
        let dd = den.len() - 1;
        let mut quot = vec![Ratio::from_integer(0); num.len().saturating_sub(dd)];
        for i in (dd..num.len()).rev() {
            let c = rem[i] / dlead;
            quot[i - dd] = c;
            for (k, &dk) in den.iter().enumerate() {
                rem[i - dd + k] -= c * dk;
            }
        }
        let q = quot.iter().map(|r| r.to_integer()).collect();
        let r = rem[..dd].iter().map(|r| r.to_integer()).collect();
        (q, r)
    }

    fn oracle_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
    }

    #[test]
    fn phi_12_by_independent_division() {
        // x^12 - 1 divided by Φ1 Φ2 Φ3 Φ4 Φ6 = (x-1)(x+1)(x²+x+1)(x²+1)(x²-x+1)
        let mut divisor = vec![1];
        for f in [&[-1, 1][..], &[1, 1], &[1, 1, 1], &[1, 0, 1], &[1, -1, 1]] {
            divisor = oracle_mul(&divisor, f);
        }
        let mut num = vec![0i64; 13];
        num[0] = -1;
        num[12] = 1;
        let (q, r) = oracle_divide(&num, &divisor);
        assert!(r.iter().all(|&c| c == 0));
        assert_eq!(q, vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), ints(&q));
        assert_eq!(format_poly(&cyclotomic_polynomial(12)), "x^4 - x^2 + 1");
    }

    #[test]
    fn degree_is_totient_and_product_recovers_x_m_minus_one() {
        for m in 1..=90u32 {
            let p = cyclotomic_polynomial(m);
            assert_eq!(p.len() as u32 - 1, euler_phi(m), "m = {m}");
            let mut prod = vec![BigInt::one()];
            for d in (1..=m).filter(|d| m % d == 0) {
                prod = poly_mul(&prod, &cyclotomic_polynomial(d));
            }
            let mut expect = vec![BigInt::zero(); m as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[m as usize] = BigInt::one();
            assert_eq!(prod, expect, "m = {m}");
        }
    }

    #[test]
    fn residue_ring_arithmetic() {
        let m = 12;
        let z = CyclotomicPoly::monomial(m, 1);
        // ζ^12 = 1 and ζ^6 = -1 for a primitive 12th root
        let mut p = CyclotomicPoly::one(m);
        for _ in 0..12 {
            p = &p * &z;
        }
        assert_eq!(p, CyclotomicPoly::one(m));
        let six = CyclotomicPoly::monomial(m, 6);
        assert!((&six + &CyclotomicPoly::one(m)).is_zero());
        assert_eq!(CyclotomicPoly::monomial(m, -1), CyclotomicPoly::monomial(m, 11));
        assert_eq!(CyclotomicPoly::zero(m).coefficients().len(), 4);
    }

    /// Evaluates the identity through explicit ring multiplication, a second
    /// exact route independent of the exponent-expansion shortcut.
    fn ring_route(t: &ArcTuple) -> bool {
        let m = 2 * t.n();
        let sine = |a: u32| &CyclotomicPoly::monomial(m, a as i64) - &CyclotomicPoly::monomial(m, -(a as i64));
        let [u, v, w] = t.uvw();
        let [x, y, z] = t.xyz();
        // Clear negative exponents with the same factor on both sides.
        let shift = CyclotomicPoly::monomial(m, t.n() as i64);
        let lhs = &(&(&sine(u) * &sine(v)) * &sine(w)) * &shift;
        let rhs = &(&(&sine(x) * &sine(y)) * &sine(z)) * &shift;
        (&lhs - &rhs).is_zero()
    }

    #[test]
    fn predicate_examples() {
        let k8 = ArcTuple::new(8, [1, 1, 2, 1, 1, 2]).unwrap();
        assert!(sine_product_equal(&k8));
        assert!(!sine_product_equal(&ArcTuple::new(10, [1, 1, 1, 1, 1, 5]).unwrap()));
        for n in 6..=20u32 {
            for a in 1..n {
                for b in 1..n {
                    if 2 * (a + b) >= n {
                        continue;
                    }
                    let c = n / 2 - a - b;
                    if 2 * (a + b + c) != n || c == 0 {
                        continue;
                    }
                    let t = ArcTuple::from_triples(n, [a, b, c], [b, c, a]).unwrap();
                    assert!(sine_product_equal(&t));
                }
            }
        }
    }

    #[test]
    fn two_exact_routes_agree() {
        for n in [7u32, 8, 12, 15, 18] {
            let mut count = 0;
            for u in 1..n {
                for x in 1..n - u {
                    for v in 1..n - u - x {
                        for y in 1..n - u - x - v {
                            for w in 1..n - u - x - v - y {
                                let z = n - u - x - v - y - w;
                                if z == 0 {
                                    continue;
                                }
                                let t = ArcTuple::new(n, [u, x, v, y, w, z]).unwrap();
                                assert_eq!(sine_product_equal(&t), ring_route(&t), "{t:?}");
                                count += 1;
                            }
                        }
                    }
                }
            }
            assert!(count > 0);
        }
    }

    #[test]
    fn arc_tuple_rejects_bad_sums() {
        assert!(ArcTuple::new(8, [1, 1, 1, 1, 1, 1]).is_err());
        assert!(ArcTuple::new(0, [0; 6]).is_err());
    }

    #[test]
    fn classification_examples() {
        let k12 = ArcTuple::from_triples(12, [2, 1, 2], [1, 1, 5]).unwrap();
        let c = classify_solution(&k12);
        assert_eq!(c.tag(), SolutionTag::FamilyI);
        assert_eq!(c.parameter(), Some(fr(1, 12)));

        let k18 = ArcTuple::from_triples(18, [3, 1, 2], [1, 1, 10]).unwrap();
        let c = classify_solution(&k18);
        assert_eq!(c.tag(), SolutionTag::FamilyIII);
        assert_eq!(c.parameter(), Some(fr(1, 18)));

        let k8 = ArcTuple::from_triples(8, [1, 2, 1], [1, 1, 2]).unwrap();
        assert_eq!(classify_solution(&k8).tag(), SolutionTag::Trivial);

        let none = ArcTuple::new(10, [1, 1, 1, 1, 1, 5]).unwrap();
        assert_eq!(classify_solution(&none).tag(), SolutionTag::NotASolution);
        assert_eq!(classify_solution(&none).parameter(), None);
    }

    #[test]
    fn k18_trivial_tuple_needs_the_corrected_entry() {
        // As printed, one entry reads 2/8; with 2/18 the six entries sum to one.
        assert!(ArcTuple::from_triples(18, [3, 2, 4], [2, 3, 4]).is_ok());
        let t = ArcTuple::from_triples(18, [3, 2, 4], [2, 3, 4]).unwrap();
        assert!(sine_product_equal(&t));
        assert_eq!(classify_solution(&t).tag(), SolutionTag::Trivial);
        let printed: Frac = fr(3, 18) + fr(2, 18) + fr(4, 18) + fr(2, 8) + fr(3, 18) + fr(4, 18);
        assert_ne!(printed, fr(1, 1));
    }

    #[test]
    fn tabulated_sporadic_solutions_hold() {
        let a = ArcTuple::from_triples(30, [2, 2, 14], [2, 3, 7]).unwrap();
        let b = ArcTuple::from_triples(30, [1, 1, 21], [1, 2, 4]).unwrap();
        for t in [a, b] {
            assert!(sine_product_equal(&t), "{t}");
            assert_eq!(classify_solution(&t).tag(), SolutionTag::SporadicKnown);
        }
        // Images under the symmetry group keep the label.
        let swapped = ArcTuple::from_triples(30, [7, 3, 2], [14, 2, 2]).unwrap();
        assert_eq!(classify_solution(&swapped).tag(), SolutionTag::SporadicKnown);
    }

    #[test]
    fn family_rows_are_solutions_where_instantiated() {
        // t = 1/N with N a multiple of 12 keeps every entry a positive multiple of 1/N.
        for n in [24u32, 36, 48, 60] {
            for k in 1..n as i64 {
                let t = fr(k, n as i64);
                for row in family_rows() {
                    if !(t > fr(0, 1) && t < row.upper) {
                        continue;
                    }
                    let vals = row.entries.map(|(a, b)| a + b * t);
                    if vals.iter().any(|v| *v <= fr(0, 1)) {
                        continue;
                    }
                    let ks = vals.map(|v| (v * n as i64).to_integer() as u32);
                    let tuple = ArcTuple::from_triples(n, [ks[0], ks[1], ks[2]], [ks[3], ks[4], ks[5]]).unwrap();
                    assert!(sine_product_equal(&tuple), "{:?} t={t}", row.tag);
                    let class = classify_solution(&tuple);
                    assert_ne!(class.tag(), SolutionTag::NotASolution);
                    if let Some(values) = family_row_values(&class) {
                        let ks = values.map(|v| (v * n as i64).to_integer() as u32);
                        let again = ArcTuple::from_triples(n, [ks[0], ks[1], ks[2]], [ks[3], ks[4], ks[5]]).unwrap();
                        assert!(sine_product_equal(&again));
                    }
                }
            }
        }
    }

    #[test]
    fn c1_and_c2_examples() {
        assert!(check_c1(12, 0).unwrap());
        for b in 0..=3 {
            assert!(!check_c1(16, b).unwrap());
        }
        assert!(!check_c1(10, 0).unwrap());
        assert!(check_c1(8, 0).is_err());
        assert!(check_c1(12, 2).is_err());
        assert!(check_c1(13, 0).is_err());

        assert!(check_c2(8, 0).unwrap());
        assert!(check_c2(18, 1).unwrap());
        for b in 0..=3 {
            assert!(!check_c2(14, b).unwrap());
        }
        assert!(check_c2(14, 4).is_err());
    }
}
