use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Chord;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    pub fn from_bigints(x: BigInt, y: BigInt) -> Self {
        Point::new(BigRational::from_integer(x), BigRational::from_integer(y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

fn cross(ax: &BigRational, ay: &BigRational, bx: &BigRational, by: &BigRational) -> BigRational {
    ax * by - ay * bx
}

/// Sign of the turn `a → b → c`: `1` counterclockwise, `-1` clockwise, `0` collinear.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> i8 {
    let v = cross(&(&b.x - &a.x), &(&b.y - &a.y), &(&c.x - &a.x), &(&c.y - &a.y));
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Every edge of the listed polygon must have all other points strictly on
/// one common side; this rules out collinear triples, reflex corners and
/// orderings that disagree with the hull.
pub(crate) fn check_convex_position(points: &[Point]) -> Result<()> {
    let n = points.len();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if a == b {
                return Err(Error::InvalidInput("repeated point".into()));
            }
        }
    }
    if n < 3 {
        return Ok(());
    }
    let turn = orientation(&points[0], &points[1], &points[2]);
    for i in 0..n {
        let (a, b) = (&points[i], &points[(i + 1) % n]);
        for (k, c) in points.iter().enumerate() {
            if k == i || k == (i + 1) % n {
                continue;
            }
            let o = orientation(a, b, c);
            if o != turn || o == 0 {
                return Err(Error::InvalidInput(format!(
                    "points are not in strictly convex position in the listed order (edge {i}-{}, point {k})",
                    (i + 1) % n
                )));
            }
        }
    }
    Ok(())
}

/// Affine parameter in `[0, 1]` of `base ∩ c` along `base`, measured from `base.i`.
pub(crate) fn parameter(points: &[Point], base: Chord, c: Chord) -> BigRational {
    let (a, b) = (&points[base.i as usize], &points[base.j as usize]);
    let (p, q) = (&points[c.i as usize], &points[c.j as usize]);
    let (qx, qy) = (&q.x - &p.x, &q.y - &p.y);
    let num = cross(&(&p.x - &a.x), &(&p.y - &a.y), &qx, &qy);
    let den = cross(&(&b.x - &a.x), &(&b.y - &a.y), &qx, &qy);
    num / den
}

/// Exact intersection point of two crossing chords.
pub(crate) fn intersection(points: &[Point], c1: Chord, c2: Chord) -> Point {
    let t = parameter(points, c1, c2);
    let (a, b) = (&points[c1.i as usize], &points[c1.j as usize]);
    Point::new(&a.x + &t * (&b.x - &a.x), &a.y + &t * (&b.y - &a.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawings::ConvexDrawing;

    #[test]
    fn square_diagonals_meet_in_the_middle() {
        let pts = vec![Point::from_ints(0, 0), Point::from_ints(1, 0), Point::from_ints(1, 1), Point::from_ints(0, 1)];
        ConvexDrawing::rational(pts.clone()).unwrap();
        let x = intersection(&pts, Chord::new(0, 2), Chord::new(1, 3));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(x, Point::new(half.clone(), half));
    }

    #[test]
    fn intersection_lies_on_both_lines() {
        let pts = vec![
            Point::from_ints(0, 0),
            Point::from_ints(7, -2),
            Point::from_ints(11, 5),
            Point::from_ints(4, 13),
            Point::from_ints(-3, 6),
        ];
        for (c1, c2) in [((0, 2), (1, 3)), ((0, 3), (1, 4)), ((1, 3), (2, 4))] {
            let (c1, c2) = (Chord::new(c1.0, c1.1), Chord::new(c2.0, c2.1));
            let x = intersection(&pts, c1, c2);
            for c in [c1, c2] {
                assert_eq!(orientation(&pts[c.i as usize], &pts[c.j as usize], &x), 0);
            }
        }
    }

    #[test]
    fn clockwise_input_is_accepted() {
        let pts = vec![Point::from_ints(0, 0), Point::from_ints(0, 1), Point::from_ints(1, 1), Point::from_ints(1, 0)];
        assert!(ConvexDrawing::rational(pts).is_ok());
    }
}
