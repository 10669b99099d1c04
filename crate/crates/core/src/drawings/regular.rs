use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;

use super::{chords_cross, Chord};
use crate::cyclotomic::{sine_product_equal, ArcTuple};
use crate::error::{Error, Result};
use crate::interval::{cos_pi_frac, mul_down, mul_up, sin_pi_frac, sine_table_f64, Interval};

/// Hard ceiling for interval refinement; reaching it means a bug, not math.
pub const CEILING_BITS: u32 = 4096;

type TripleKey = ([u32; 3], [u32; 3]);

/// Certified chord-level geometry of the regular `n`-gon.
///
/// Crossings along a chord `AB` are ordered by the ratio `AX/XB`, which for a
/// crossing chord `PQ` equals `|AP||AQ| / (|BP||BQ|)`; chord lengths are
/// `2 sin(πk/n)` for an arc of `k` steps.
pub struct RegularGeometry {
    n: u32,
    sines: Vec<(f64, f64)>,
    concurrency: Mutex<HashMap<TripleKey, bool>>,
}

impl RegularGeometry {
    pub fn new(n: u32) -> Self {
        RegularGeometry { n, sines: sine_table_f64(n), concurrency: Mutex::new(HashMap::new()) }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The arc tuple of three pairwise-crossing chords with six endpoints.
    pub fn arc_tuple(&self, chords: [Chord; 3]) -> Result<ArcTuple> {
        let [a, b, c] = chords;
        if !(chords_cross(a, b) && chords_cross(b, c) && chords_cross(a, c)) {
            return Err(Error::Precondition(format!("{a}, {b}, {c} do not pairwise cross")));
        }
        let mut e = [a.i, a.j, b.i, b.j, c.i, c.j];
        e.sort_unstable();
        let mut arcs = [0u32; 6];
        for k in 0..5 {
            arcs[k] = e[k + 1] - e[k];
        }
        arcs[5] = self.n - e[5] + e[0];
        ArcTuple::new(self.n, arcs)
    }

    /// Exact concurrency of three pairwise-crossing chords.
    pub fn concurrent(&self, chords: [Chord; 3]) -> Result<bool> {
        let t = self.arc_tuple(chords)?;
        let mut uvw = t.uvw();
        let mut xyz = t.xyz();
        uvw.sort_unstable();
        xyz.sort_unstable();
        let key = if uvw <= xyz { (uvw, xyz) } else { (xyz, uvw) };
        if let Some(&hit) = self.concurrency.lock().unwrap().get(&key) {
            return Ok(hit);
        }
        let value = sine_product_equal(&t);
        self.concurrency.lock().unwrap().insert(key, value);
        Ok(value)
    }

    /// `(inner, outer)` arc offsets of a chord crossing `base`, measured from
    /// `base.i` forwards and backwards.
    fn offsets(&self, base: Chord, c: Chord) -> (u32, u32) {
        let (p, q) = if base.vertex_side(c.i) == 1 { (c.i, c.j) } else { (c.j, c.i) };
        (p - base.i, (base.i + self.n - q) % self.n)
    }

    pub(crate) fn compare_along(&self, base: Chord, c: Chord, d: Chord) -> Result<Ordering> {
        let n = self.n;
        let len = base.j - base.i;
        let (ci, co) = self.offsets(base, c);
        let (di, dox) = self.offsets(base, d);
        if ci == di {
            return Ok(co.cmp(&dox));
        }
        if co == dox {
            return Ok(ci.cmp(&di));
        }
        // ratio(c) < ratio(d)  <=>  lhs < rhs
        let mut lhs = vec![ci, co, len - di, n - len - dox];
        let mut rhs = vec![di, dox, len - ci, n - len - co];
        cancel_common(n, &mut lhs, &mut rhs);
        if let Some(ord) = self.compare_f64(&lhs, &rhs) {
            return Ok(ord);
        }
        if chords_cross(c, d) && self.concurrent([base, c, d])? {
            return Ok(Ordering::Equal);
        }
        compare_products_refined(n, &lhs, &rhs)
    }

    fn compare_f64(&self, lhs: &[u32], rhs: &[u32]) -> Option<Ordering> {
        let bound = |args: &[u32]| {
            args.iter().fold((1.0f64, 1.0f64), |(lo, hi), &k| {
                let (slo, shi) = self.sines[k as usize];
                (mul_down(lo, slo), mul_up(hi, shi))
            })
        };
        let (llo, lhi) = bound(lhs);
        let (rlo, rhi) = bound(rhs);
        if lhi < rlo {
            Some(Ordering::Less)
        } else if llo > rhi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Vertex `k` as certified coordinates at the given precision.
    pub fn vertex_box(&self, k: u32, bits: u32) -> (Interval, Interval) {
        (cos_pi_frac(2 * k as i64, self.n as u64, bits), sin_pi_frac(2 * k as i64, self.n as u64, bits))
    }

    /// A certified box around `c1 ∩ c2` whose sides shrink as `bits` grows.
    pub fn crossing_box(&self, c1: Chord, c2: Chord, bits: u32) -> Result<(Interval, Interval)> {
        if !chords_cross(c1, c2) {
            return Err(Error::Precondition(format!("{c1} and {c2} do not cross")));
        }
        let mut w = bits.max(64);
        loop {
            let (ax, ay) = self.vertex_box(c1.i, w);
            let (bx, by) = self.vertex_box(c1.j, w);
            let (px, py) = self.vertex_box(c2.i, w);
            let (qx, qy) = self.vertex_box(c2.j, w);
            let (ux, uy) = (bx.sub(&ax), by.sub(&ay));
            let (vx, vy) = (qx.sub(&px), qy.sub(&py));
            let (wx, wy) = (px.sub(&ax), py.sub(&ay));
            let num = wx.mul(&vy).sub(&wy.mul(&vx));
            let den = ux.mul(&vy).sub(&uy.mul(&vx));
            if let Some(t) = num.div(&den) {
                let x = ax.add(&t.mul(&ux));
                let y = ay.add(&t.mul(&uy));
                return Ok((x.with_bits(bits), y.with_bits(bits)));
            }
            w *= 2;
            if w > CEILING_BITS {
                return Err(Error::PrecisionCeiling { bits: CEILING_BITS });
            }
        }
    }

    /// Display coordinates of a crossing (midpoint of a 64-bit box).
    pub fn crossing_f64(&self, c1: Chord, c2: Chord) -> (f64, f64) {
        let (x, y) = self.crossing_box(c1, c2, 64).expect("crossing chords have a box");
        (x.mid_f64(), y.mid_f64())
    }
}

/// Removes sine arguments present on both sides; `sin(πk/n) = sin(π(n-k)/n)`.
fn cancel_common(n: u32, lhs: &mut Vec<u32>, rhs: &mut Vec<u32>) {
    for k in lhs.iter_mut().chain(rhs.iter_mut()) {
        *k = (*k).min(n - *k);
    }
    let mut i = 0;
    while i < lhs.len() {
        if let Some(j) = rhs.iter().position(|&r| r == lhs[i]) {
            lhs.swap_remove(i);
            rhs.swap_remove(j);
        } else {
            i += 1;
        }
    }
}

fn compare_products_refined(n: u32, lhs: &[u32], rhs: &[u32]) -> Result<Ordering> {
    let mut bits = 128;
    while bits <= CEILING_BITS {
        let product = |args: &[u32]| {
            args.iter().fold(Interval::from_i64(1, bits), |acc, &k| acc.mul(&sin_pi_frac(k as i64, n as u64, bits)))
        };
        if let Some(ord) = product(lhs).compare(&product(rhs)) {
            return Ok(ord);
        }
        bits *= 2;
    }
    Err(Error::PrecisionCeiling { bits: CEILING_BITS })
}
