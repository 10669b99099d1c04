use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{all_chords, chords_cross, orientation, rational, Chord, ConvexDrawing, Point};
use crate::arrangement::build_arrangement;
use crate::error::{Error, Result};

/// Upper bound on doublings of the new height; the conditions hold for every
/// sufficiently large height, so hitting this means a bug.
const MAX_DOUBLINGS: u32 = 512;

/// The first violation found for a condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupWitness {
    pub condition: u8,
    /// The crossing (or face side) involved.
    pub chords: Vec<Chord>,
    pub vertex: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupConditionReport {
    pub step: u32,
    pub condition1: bool,
    pub condition2: bool,
    pub condition3: bool,
    pub witnesses: Vec<CupWitness>,
}

impl CupConditionReport {
    pub fn all_hold(&self) -> bool {
        self.condition1 && self.condition2 && self.condition3
    }
}

fn crossings_of(points: &[Point]) -> Vec<([Chord; 2], Point)> {
    let chords = all_chords(points.len() as u32);
    let mut out = Vec::new();
    for (a, &c1) in chords.iter().enumerate() {
        for &c2 in &chords[a + 1..] {
            if chords_cross(c1, c2) {
                out.push(([c1, c2], rational::intersection(points, c1, c2)));
            }
        }
    }
    out
}

/// Checks the three height conditions for adding vertex `step - 1` to the
/// drawing on the first `step - 1` vertices.
pub fn verify_cup_conditions(d: &ConvexDrawing, step: u32) -> Result<CupConditionReport> {
    let points = d.points().ok_or_else(|| Error::Precondition("cup conditions need a rational drawing".into()))?;
    if step < 1 || step > d.n() {
        return Err(Error::InvalidInput(format!("step {step} outside 1..={}", d.n())));
    }
    let pts = &points[..step as usize];
    let m = step as usize - 1;
    let mut report =
        CupConditionReport { step, condition1: true, condition2: true, condition3: true, witnesses: Vec::new() };

    // 1: old crossings are left of p_i p_n exactly when left of x = x(p_i).
    'c1: for (pair, x) in crossings_of(&pts[..m]) {
        for (i, p) in pts[..m].iter().enumerate() {
            let o = orientation(p, &pts[m], &x);
            if o == 0 || (o > 0) != (x.x < p.x) {
                report.condition1 = false;
                report.witnesses.push(CupWitness { condition: 1, chords: pair.to_vec(), vertex: Some(i as u32) });
                break 'c1;
            }
        }
    }

    // 3: no crossing on a vertical line through a vertex.
    let xs: HashSet<&BigRational> = pts.iter().map(|p| &p.x).collect();
    for (pair, x) in crossings_of(pts) {
        if xs.contains(&x.x) {
            report.condition3 = false;
            let vertex = pts.iter().position(|p| p.x == x.x).map(|i| i as u32);
            report.witnesses.push(CupWitness { condition: 3, chords: pair.to_vec(), vertex });
            break;
        }
    }

    // 2: faces bounded above by exactly two edges have no vertex below the
    // interior of their leftmost upper edge.
    let sub = ConvexDrawing::rational_unchecked(pts.to_vec());
    let arrangement = build_arrangement(&sub)?;
    'c2: for f in arrangement.bounded_faces() {
        let nodes = arrangement.face_nodes(f);
        let sides = arrangement.face_sides(f);
        let corners: Vec<Point> = nodes.iter().map(|&v| arrangement.node_point(v).unwrap()).collect();
        let Some((upper_edges, first, first_side)) = upper_chain(&corners, &sides) else {
            continue;
        };
        if upper_edges != 2 {
            continue;
        }
        let (a, b) = (&corners[first.0], &corners[first.1]);
        for (i, p) in pts.iter().enumerate() {
            if a.x < p.x && p.x < b.x && orientation(a, b, p) < 0 {
                report.condition2 = false;
                report.witnesses.push(CupWitness { condition: 2, chords: vec![first_side], vertex: Some(i as u32) });
                break 'c2;
            }
        }
    }
    Ok(report)
}

/// Number of edges on the upper chain of a convex polygon, its leftmost
/// upper edge (as corner indices) and the chord carrying it.
fn upper_chain(corners: &[Point], sides: &[Chord]) -> Option<(usize, (usize, usize), Chord)> {
    let k = corners.len();
    if k < 3 {
        return None;
    }
    let left = (0..k).min_by(|&a, &b| corners[a].x.cmp(&corners[b].x))?;
    let right = (0..k).max_by(|&a, &b| corners[a].x.cmp(&corners[b].x))?;
    let forward_len = (right + k - left) % k;
    let backward_len = k - forward_len;
    // Decide which walk from the leftmost corner runs along the top.
    let forward_is_upper = if forward_len > 1 {
        orientation(&corners[left], &corners[right], &corners[(left + 1) % k]) > 0
    } else {
        orientation(&corners[left], &corners[right], &corners[(left + k - 1) % k]) < 0
    };
    Some(if forward_is_upper {
        let next = (left + 1) % k;
        (forward_len, (left, next), sides[left])
    } else {
        let next = (left + k - 1) % k;
        (backward_len, (left, next), sides[next])
    })
}

/// The cup construction: `p_i = (i, y_i)` with `y_1 = y_2 = 0` and each new
/// height found by doubling until the cup property and the three conditions
/// hold exactly.
pub fn generic_cup_drawing(n: u32) -> Result<ConvexDrawing> {
    if n == 0 {
        return Err(Error::InvalidInput("a drawing needs at least one vertex".into()));
    }
    let mut points = vec![Point::from_ints(1, 0)];
    if n >= 2 {
        points.push(Point::from_ints(2, 0));
    }
    for step in 3..=n {
        let max_abs = points.iter().map(|p| p.y.abs()).max().unwrap();
        let start = BigRational::from_integer(BigInt::from(step)) * (max_abs + BigRational::one());
        let mut y = start;
        let mut accepted = false;
        for _ in 0..MAX_DOUBLINGS {
            let candidate = Point::new(BigRational::from_integer(BigInt::from(step)), y.clone());
            let k = points.len();
            if orientation(&points[k - 2], &points[k - 1], &candidate) > 0 {
                points.push(candidate);
                let d = ConvexDrawing::rational_unchecked(points.clone());
                if verify_cup_conditions(&d, step)?.all_hold() {
                    accepted = true;
                    break;
                }
                points.pop();
            }
            y *= BigRational::from_integer(BigInt::from(2));
        }
        if !accepted {
            return Err(Error::Invariant(format!("no admissible height found for vertex {step}")));
        }
    }
    ConvexDrawing::rational(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_points() {
        let d2 = generic_cup_drawing(2).unwrap();
        assert_eq!(d2.points().unwrap(), &[Point::from_ints(1, 0), Point::from_ints(2, 0)]);
        assert_eq!(generic_cup_drawing(1).unwrap().n(), 1);
    }

    #[test]
    fn cup_shape_and_conditions() {
        let d = generic_cup_drawing(8).unwrap();
        let p = d.points().unwrap();
        for (i, q) in p.iter().enumerate() {
            assert_eq!(q.x, BigRational::from_integer(BigInt::from(i + 1)));
        }
        for w in p.windows(3) {
            assert_eq!(orientation(&w[0], &w[1], &w[2]), 1);
        }
        for step in 1..=8 {
            assert!(verify_cup_conditions(&d, step).unwrap().all_hold(), "step {step}");
        }
    }

    #[test]
    fn lower_heights_can_break_a_condition() {
        // 0.1·y_5 happens to pass; scan a fine grid of lower heights instead.
        let d = generic_cup_drawing(5).unwrap();
        let p = d.points().unwrap().to_vec();
        let mut failures = Vec::new();
        for k in (1..200).rev() {
            let mut q = p.clone();
            q[4].y = &p[4].y * BigRational::new(BigInt::from(k), BigInt::from(200));
            if orientation(&q[2], &q[3], &q[4]) <= 0 {
                continue;
            }
            let report = verify_cup_conditions(&ConvexDrawing::rational(q).unwrap(), 5).unwrap();
            if !report.all_hold() {
                assert!(!report.witnesses.is_empty());
                failures.push(k);
            }
        }
        assert!(!failures.is_empty());
    }
}
