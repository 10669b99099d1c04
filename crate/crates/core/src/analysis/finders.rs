use serde::Serialize;

use super::region::{side_of, Region};
use super::FaceCertificate;
use crate::arrangement::{build_arrangement, Arrangement, NodeRef};
use crate::cyclotomic::{check_c1, check_c2};
use crate::drawings::{Chord, ConvexDrawing, Geometry};
use crate::error::{Error, Result};

/// Regular drawings without any 5-face.
pub const NO_FIVE_FACE: [u32; 7] = [1, 2, 3, 4, 6, 8, 12];

fn v(k: u32) -> NodeRef {
    NodeRef::Vertex(k)
}

fn ch(a: u32, b: u32) -> Chord {
    Chord::new(a, b)
}

/// The face at `v1` bounded by `v0v1`, `v0v2` and `v1v(n-1)`.
pub fn find_3_face(d: &ConvexDrawing) -> Result<FaceCertificate> {
    let n = d.n();
    if n < 3 {
        return Err(Error::Precondition(format!("no 3-face exists for n = {n} < 3")));
    }
    let g = Geometry::of(d);
    let r = Region::hull(n).cut_towards(&g, ch(0, 2), v(1))?.cut_towards(&g, ch(1, n - 1), v(0))?;
    Ok(FaceCertificate::from_region(d, r))
}

/// The inner pentagon of the sub-drawing on `vertices` (five vertices in
/// boundary order), bounded by the chords skipping one vertex.
fn inner_pentagon(g: &Geometry<'_>, n: u32, vertices: [u32; 5]) -> Result<Region> {
    let mut r = Region::hull(n);
    for a in 0..5 {
        r = r.cut_towards(g, ch(vertices[a], vertices[(a + 2) % 5]), v(vertices[(a + 3) % 5]))?;
    }
    Ok(r)
}

/// Splits the inner pentagon of `v0..v4` by `v2v(n-1)` (left part) or
/// `v2v5` (right part); one of the two is a 4-face.
pub fn find_4_face(d: &ConvexDrawing) -> Result<FaceCertificate> {
    let n = d.n();
    if n < 6 {
        return Err(Error::Precondition(format!("no 4-face exists for n = {n} < 6")));
    }
    let g = Geometry::of(d);
    let pentagon = inner_pentagon(&g, n, [0, 1, 2, 3, 4])?;
    let left = pentagon.cut_towards(&g, ch(2, n - 1), v(0))?;
    if left.len() == 4 {
        return Ok(FaceCertificate::from_region(d, left));
    }
    let right = pentagon.cut_towards(&g, ch(2, 5), v(4))?;
    if right.len() == 4 {
        return Ok(FaceCertificate::from_region(d, right));
    }
    Err(Error::Invariant("neither part of the split pentagon is a 4-gon".into()))
}

/// The triangle `T = p v1 v3` with `p = v0v3 ∩ v1v4` is crossed by the fan
/// `e_i = v2v_i`; the last fan edge leaving through `pv3` and its successor
/// cut out a 5-face with corner `p`.
pub fn find_5_face_generic(d: &ConvexDrawing) -> Result<FaceCertificate> {
    find_5_face_generic_in(&build_arrangement(d)?)
}

pub fn find_5_face_generic_in(a: &Arrangement) -> Result<FaceCertificate> {
    let d = a.drawing();
    let n = d.n();
    if n < 5 {
        return Err(Error::Precondition(format!("no 5-face exists for n = {n} < 5")));
    }
    if !a.is_generic() {
        return Err(Error::Precondition("the drawing has heavy crossings".into()));
    }
    let g = Geometry::of(d);
    if n == 5 {
        return Ok(FaceCertificate::from_region(d, inner_pentagon(&g, n, [0, 1, 2, 3, 4])?));
    }
    let p = NodeRef::crossing(ch(0, 3), ch(1, 4));
    let triangle = Region { corners: vec![p, v(1), v(3)], sides: vec![ch(1, 4), ch(1, 3), ch(0, 3)] };
    let mut k = None;
    for i in 4..n {
        let e = ch(2, i);
        let (sp, s3) = (side_of(&g, p, e)?, side_of(&g, v(3), e)?);
        if sp * s3 == -1 {
            k = Some(i);
        }
    }
    let k = k.ok_or_else(|| Error::Invariant("no fan edge crosses pv3".into()))?;
    let next = if k == n - 1 { 0 } else { k + 1 };
    let face = triangle.cut_towards(&g, ch(2, k), p)?.cut_towards(&g, ch(2, next), p)?;
    Ok(FaceCertificate::from_region(d, face))
}

/// For `i = 0..7`, splits the inner pentagon of `v_i..v_{i+4}` by
/// `v_{i+2}v_{i+5}` and `v_{i+2}v_{i+6}` unless one of them passes through
/// `p_i = v_iv_{i+3} ∩ v_{i+1}v_{i+4}`; returns the first success.
pub fn find_5_face_k7(d: &ConvexDrawing) -> Result<FaceCertificate> {
    if d.n() != 7 {
        return Err(Error::Precondition(format!("the K_7 procedure needs n = 7, got {}", d.n())));
    }
    let g = Geometry::of(d);
    let at = |i: u32, s: u32| (i + s) % 7;
    for i in 0..7 {
        let p = NodeRef::crossing(ch(at(i, 0), at(i, 3)), ch(at(i, 1), at(i, 4)));
        let (s1, s2) = (ch(at(i, 2), at(i, 5)), ch(at(i, 2), at(i, 6)));
        if side_of(&g, p, s1)? == 0 || side_of(&g, p, s2)? == 0 {
            continue;
        }
        let pentagon = inner_pentagon(&g, 7, [0, 1, 2, 3, 4].map(|s| at(i, s)))?;
        let face = pentagon.cut_towards(&g, s1, p)?.cut_towards(&g, s2, p)?;
        if face.len() == 5 {
            return Ok(FaceCertificate::from_region(d, face));
        }
    }
    Err(Error::Invariant("no index yields a 5-face".into()))
}

/// The region bounded by `v1v(4+a)`, `v1v(5+a)`, `v2v(n-a-2)`, `v2v(n-a-1)`.
pub fn region_ra(d: &ConvexDrawing, a: u32) -> Result<Region> {
    let n = d.n();
    if n < 8 || n % 2 == 1 || a + 4 > n / 2 {
        return Err(Error::Precondition(format!("region R_{a} needs even n >= 8 and a <= n/2 - 4")));
    }
    let g = Geometry::of(d);
    Region::hull(n)
        .cut_towards(&g, ch(1, 4 + a), v(5 + a))?
        .cut_towards(&g, ch(1, 5 + a), v(4 + a))?
        .cut_towards(&g, ch(2, n - a - 2), v(n - a - 1))?
        .cut_towards(&g, ch(2, n - a - 1), v(n - a - 2))
}

/// A 5-face of the regular `K_18`, corners in boundary order. Its corner
/// `v1v8 ∩ v3v12` is a heavy crossing (also on `v5v16`) whose arcs are
/// `(2,3,4 | 2,3,4)/18`; the `R_b` procedure stalls on this drawing.
pub const K18_FIVE_FACE: [[[u32; 2]; 2]; 5] = [
    [[0, 6], [4, 15]],
    [[0, 6], [3, 12]],
    [[1, 8], [3, 12]],
    [[1, 8], [2, 10]],
    [[2, 10], [4, 15]],
];

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FiveFaceOutcome {
    Face { certificate: FaceCertificate },
    /// No 5-face; established from the full histogram.
    ProvenAbsent,
}

pub fn find_5_face_regular(n: u32) -> Result<FiveFaceOutcome> {
    find_5_face_regular_in(&build_arrangement(&ConvexDrawing::regular(n)?)?)
}

/// The regular-drawing procedure on a prebuilt arrangement.
pub fn find_5_face_regular_in(a: &Arrangement) -> Result<FiveFaceOutcome> {
    let d = a.drawing();
    if !d.is_regular() {
        return Err(Error::Precondition("expected a regular drawing".into()));
    }
    let n = d.n();
    if NO_FIVE_FACE.contains(&n) {
        if a.histogram().contains_key(&5) {
            return Err(Error::Invariant(format!("regular K_{n} unexpectedly has a 5-face")));
        }
        return Ok(FiveFaceOutcome::ProvenAbsent);
    }
    if n % 2 == 1 {
        return Ok(FiveFaceOutcome::Face { certificate: find_5_face_generic_in(a)? });
    }
    if n == 18 {
        let corners = K18_FIVE_FACE.map(|[x, y]| NodeRef::crossing(ch(x[0], x[1]), ch(y[0], y[1]))).to_vec();
        let sides = (0..5)
            .map(|t| {
                let (NodeRef::Crossing(p), NodeRef::Crossing(q)) = (corners[t], corners[(t + 1) % 5]) else {
                    unreachable!()
                };
                p.into_iter().find(|c| q.contains(c)).expect("consecutive corners share a chord")
            })
            .collect();
        return Ok(FiveFaceOutcome::Face { certificate: FaceCertificate { k: 5, corners, sides, drawing: d.clone() } });
    }
    let g = Geometry::of(d);
    let line = ch(0, 3);
    for b in 0..=n / 2 - 4 {
        let r = region_ra(d, b)?;
        let s = r.sides_against(&g, line)?;
        if s.iter().all(|&x| x == 1) || s.iter().all(|&x| x == -1) {
            continue;
        }
        // v0v3 meets R_b; a corner on it would be one of the excluded heavy crossings.
        let c1 = b + 5 <= n / 2 && check_c1(n, b)?;
        let c2 = check_c2(n, b)?;
        if c1 || c2 || s.contains(&0) {
            return Err(Error::Invariant(format!("v0v3 passes through a corner of R_{b} (n = {n})")));
        }
        for keep in [1, -1] {
            let piece = r.cut(&g, line, keep)?;
            if piece.len() == 5 {
                return Ok(FiveFaceOutcome::Face { certificate: FaceCertificate::from_region(d, piece) });
            }
        }
        return Err(Error::Invariant(format!("v0v3 does not cut a pentagon from R_{b} (n = {n})")));
    }
    Err(Error::Invariant(format!("v0v3 meets no region R_a (n = {n})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_preconditions() {
        let d2 = ConvexDrawing::regular(2).unwrap();
        assert!(find_3_face(&d2).is_err());
        assert!(find_4_face(&ConvexDrawing::regular(5).unwrap()).is_err());
        assert!(find_5_face_generic(&ConvexDrawing::regular(8).unwrap()).is_err());
        assert!(find_5_face_k7(&ConvexDrawing::regular(6).unwrap()).is_err());
    }

    #[test]
    fn finders_validate_on_small_regular_drawings() {
        for n in 3..=9 {
            let d = ConvexDrawing::regular(n).unwrap();
            let a = build_arrangement(&d).unwrap();
            find_3_face(&d).unwrap().validate_in(&a).unwrap();
            if n >= 6 {
                let c = find_4_face(&d).unwrap();
                assert_eq!(c.k, 4);
                c.validate_in(&a).unwrap();
            }
        }
        let d7 = ConvexDrawing::regular(7).unwrap();
        let a7 = build_arrangement(&d7).unwrap();
        find_5_face_k7(&d7).unwrap().validate_in(&a7).unwrap();
        find_5_face_generic(&d7).unwrap().validate_in(&a7).unwrap();
    }

    #[test]
    fn r0_of_the_decagon() {
        match find_5_face_regular(10).unwrap() {
            FiveFaceOutcome::Face { certificate } => {
                assert_eq!(certificate.k, 5);
                certificate.validate().unwrap();
            }
            FiveFaceOutcome::ProvenAbsent => panic!("K_10 has a 5-face"),
        }
    }
}
