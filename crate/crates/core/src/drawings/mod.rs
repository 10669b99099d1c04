//! Convex drawings of `K_n`: regular polygons kept symbolic, and exact
//! rational point sets (user supplied or the cup construction).

mod capcup;
mod cup;
mod random;
mod rational;
mod regular;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use capcup::{boxes_separated_in_x, cap_cup_profile, cap_cup_profile_boxes, CapCupProfile};
pub use cup::{generic_cup_drawing, verify_cup_conditions, CupConditionReport, CupWitness};
pub use random::random_convex_drawing;
pub use rational::{orientation, Point};
pub(crate) use rational::{intersection as rational_intersection, parameter as rational_parameter};
pub use regular::{RegularGeometry, CEILING_BITS};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// A straight edge between two vertices, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub i: u32,
    pub j: u32,
}

impl Chord {
    /// Builds the chord between `a` and `b` in either order.
    pub fn new(a: u32, b: u32) -> Self {
        assert_ne!(a, b, "a chord needs two distinct endpoints");
        Chord { i: a.min(b), j: a.max(b) }
    }

    pub fn has_endpoint(&self, v: u32) -> bool {
        self.i == v || self.j == v
    }

    /// Position of the chord in the lexicographic enumeration of all
    /// `n(n-1)/2` chords.
    pub fn index(&self, n: u32) -> usize {
        let (i, j, n) = (self.i as usize, self.j as usize, n as usize);
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Strict side of vertex `v`: `+1` inside the arc `(i, j)`, `-1` outside,
    /// `0` for the endpoints.
    pub fn vertex_side(&self, v: u32) -> i8 {
        if self.has_endpoint(v) {
            0
        } else if self.i < v && v < self.j {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}v{}", self.i, self.j)
    }
}

impl Serialize for Chord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.i, self.j].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Chord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[u32; 2]>::deserialize(d)?;
        if a == b {
            return Err(serde::de::Error::custom("chord endpoints must differ"));
        }
        Ok(Chord::new(a, b))
    }
}

/// All chords of `K_n` in index order.
pub fn all_chords(n: u32) -> Vec<Chord> {
    let mut out = Vec::with_capacity((n as usize * n.saturating_sub(1) as usize) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(Chord { i, j });
        }
    }
    out
}

/// True iff the endpoint pairs strictly interleave in cyclic order.
pub fn chords_cross(c1: Chord, c2: Chord) -> bool {
    if c1.has_endpoint(c2.i) || c1.has_endpoint(c2.j) {
        return false;
    }
    c1.vertex_side(c2.i) != c1.vertex_side(c2.j)
}

/// Rank of the 4-subset of endpoints of two crossing chords; every 4-subset
/// carries exactly one crossing pair.
pub fn crossing_pair_id(c1: Chord, c2: Chord) -> usize {
    let mut v = [c1.i, c1.j, c2.i, c2.j].map(|x| x as usize);
    v.sort_unstable();
    binom(v[0], 1) + binom(v[1], 2) + binom(v[2], 3) + binom(v[3], 4)
}

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for t in 0..k {
        r = r * (n - t) as u128 / (t + 1) as u128;
    }
    r as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DrawingKind {
    /// Vertex `k` at angle `2πk/n` on the unit circle.
    Regular,
    Rational(Vec<Point>),
}

/// A convex drawing of `K_n`; vertices are indexed `0..n` in boundary order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexDrawing {
    n: u32,
    kind: DrawingKind,
}

impl ConvexDrawing {
    pub fn regular(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("a drawing needs at least one vertex".into()));
        }
        Ok(ConvexDrawing { n, kind: DrawingKind::Regular })
    }

    /// Validates strict convex position in the listed boundary order.
    pub fn rational(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("a drawing needs at least one vertex".into()));
        }
        rational::check_convex_position(&points)?;
        Ok(ConvexDrawing { n: points.len() as u32, kind: DrawingKind::Rational(points) })
    }

    pub(crate) fn rational_unchecked(points: Vec<Point>) -> Self {
        ConvexDrawing { n: points.len() as u32, kind: DrawingKind::Rational(points) }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> &DrawingKind {
        &self.kind
    }

    pub fn is_regular(&self) -> bool {
        matches!(self.kind, DrawingKind::Regular)
    }

    pub fn points(&self) -> Option<&[Point]> {
        match &self.kind {
            DrawingKind::Rational(p) => Some(p),
            DrawingKind::Regular => None,
        }
    }

    /// The drawing induced on the first `k` vertices.
    pub fn prefix(&self, k: u32) -> Result<Self> {
        match &self.kind {
            DrawingKind::Rational(p) if k >= 1 && k <= self.n => {
                Ok(Self::rational_unchecked(p[..k as usize].to_vec()))
            }
            _ => Err(Error::InvalidInput(format!("cannot take a {k}-vertex prefix of this drawing"))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("drawings always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Approximate coordinates for display only.
    pub fn vertex_f64(&self, v: u32) -> (f64, f64) {
        match &self.kind {
            DrawingKind::Regular => {
                let a = 2.0 * std::f64::consts::PI * v as f64 / self.n as f64;
                (a.cos(), a.sin())
            }
            DrawingKind::Rational(p) => p[v as usize].to_f64(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum DrawingFile {
    Regular { n: u32 },
    Rational { points: Vec<[String; 2]> },
}

impl Serialize for ConvexDrawing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let file = match &self.kind {
            DrawingKind::Regular => DrawingFile::Regular { n: self.n },
            DrawingKind::Rational(points) => DrawingFile::Rational {
                points: points.iter().map(|p| [p.x.to_string(), p.y.to_string()]).collect(),
            },
        };
        file.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexDrawing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match DrawingFile::deserialize(d)? {
            DrawingFile::Regular { n } => ConvexDrawing::regular(n).map_err(D::Error::custom),
            DrawingFile::Rational { points } => {
                let parsed = points
                    .iter()
                    .map(|[x, y]| Ok(Point::new(parse_rational(x)?, parse_rational(y)?)))
                    .collect::<Result<Vec<_>>>()
                    .map_err(D::Error::custom)?;
                ConvexDrawing::rational(parsed).map_err(D::Error::custom)
            }
        }
    }
}

/// Parses `"p/q"` or `"p"` with arbitrary-size integers.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
    let (num, den) = match text.trim().split_once('/') {
        Some((p, q)) => (BigInt::from_str(p.trim()).map_err(|_| bad())?, BigInt::from_str(q.trim()).map_err(|_| bad())?),
        None => (BigInt::from_str(text.trim()).map_err(|_| bad())?, BigInt::from(1)),
    };
    if num_traits::Zero::is_zero(&den) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Location of a crossing: exact for rational drawings, a certified box for
/// regular ones.
#[derive(Clone, Debug)]
pub enum CrossingPoint {
    Exact(Point),
    Box(Interval, Interval),
}

/// The crossing of two chords; `bits` sets the box precision for regular drawings.
pub fn crossing_point(d: &ConvexDrawing, c1: Chord, c2: Chord, bits: u32) -> Result<CrossingPoint> {
    if c1.j >= d.n() || c2.j >= d.n() || !chords_cross(c1, c2) {
        return Err(Error::Precondition(format!("{c1} and {c2} do not cross")));
    }
    match &d.kind {
        DrawingKind::Rational(p) => Ok(CrossingPoint::Exact(rational::intersection(p, c1, c2))),
        DrawingKind::Regular => {
            let (x, y) = RegularGeometry::new(d.n).crossing_box(c1, c2, bits)?;
            Ok(CrossingPoint::Box(x, y))
        }
    }
}

/// Exact ordering of crossings along a chord, shared by both geometry kinds.
pub enum Geometry<'a> {
    Regular(RegularGeometry),
    Rational(&'a [Point]),
}

impl<'a> Geometry<'a> {
    pub fn of(d: &'a ConvexDrawing) -> Self {
        match &d.kind {
            DrawingKind::Regular => Geometry::Regular(RegularGeometry::new(d.n)),
            DrawingKind::Rational(p) => Geometry::Rational(p),
        }
    }

    /// Orders the crossings `base ∩ c` and `base ∩ d` along `base` from
    /// `base.i` to `base.j`; `Equal` means the two crossings coincide.
    pub fn compare_along(&self, base: Chord, c: Chord, d: Chord) -> Result<Ordering> {
        if !chords_cross(base, c) || !chords_cross(base, d) {
            return Err(Error::Precondition(format!("{c} and {d} must both cross {base}")));
        }
        if c == d {
            return Ok(Ordering::Equal);
        }
        match self {
            Geometry::Regular(g) => g.compare_along(base, c, d),
            Geometry::Rational(p) => Ok(rational::parameter(p, base, c).cmp(&rational::parameter(p, base, d))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interleaving_examples() {
        assert!(chords_cross(Chord::new(0, 2), Chord::new(1, 3)));
        assert!(!chords_cross(Chord::new(0, 1), Chord::new(2, 3)));
        assert!(!chords_cross(Chord::new(0, 3), Chord::new(3, 5)));
    }

    #[test]
    fn crossing_pairs_match_four_subsets() {
        for n in 1..=30u32 {
            let chords = all_chords(n);
            let mut seen = vec![false; binom(n as usize, 4)];
            let mut count = 0usize;
            for (a, &c1) in chords.iter().enumerate() {
                for &c2 in &chords[a + 1..] {
                    if chords_cross(c1, c2) {
                        count += 1;
                        let id = crossing_pair_id(c1, c2);
                        assert!(!seen[id]);
                        seen[id] = true;
                    }
                }
            }
            assert_eq!(count, binom(n as usize, 4), "n = {n}");
        }
    }

    #[test]
    fn chord_indices_are_dense() {
        let n = 9;
        for (k, c) in all_chords(n).iter().enumerate() {
            assert_eq!(c.index(n), k);
        }
    }

    #[test]
    fn json_round_trip() {
        let d = ConvexDrawing::regular(12).unwrap();
        assert_eq!(d.to_json(), r#"{"kind":"regular","n":12}"#);
        assert_eq!(ConvexDrawing::from_json(&d.to_json()).unwrap(), d);

        let text = r#"{"kind":"rational","points":[["0","0"],["1","0"],["1","1"],["-1/3","7/5"]]}"#;
        let d = ConvexDrawing::from_json(text).unwrap();
        assert_eq!(d.to_json(), text);
    }

    #[test]
    fn rejects_bad_drawings() {
        let collinear = r#"{"kind":"rational","points":[["0","0"],["1","0"],["2","0"],["1","1"]]}"#;
        assert!(ConvexDrawing::from_json(collinear).is_err());
        let reflex = r#"{"kind":"rational","points":[["0","0"],["2","0"],["1","1/2"],["2","2"],["0","2"]]}"#;
        assert!(ConvexDrawing::from_json(reflex).is_err());
        let wrong_order = r#"{"kind":"rational","points":[["0","0"],["1","1"],["1","0"],["0","1"]]}"#;
        assert!(ConvexDrawing::from_json(wrong_order).is_err());
        assert!(ConvexDrawing::from_json(r#"{"kind":"regular","n":0}"#).is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }
}
