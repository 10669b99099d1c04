//! Convex regions bounded by chords, cut exactly by further chords.
//!
//! Corners are named combinatorially ([`NodeRef`]), so a region computed here
//! can be matched against a face of an independently built arrangement.

use std::cmp::Ordering;

use crate::arrangement::NodeRef;
use crate::drawings::{chords_cross, Chord, Geometry};
use crate::error::{Error, Result};

/// Exact side of a node relative to a chord: the sign convention of
/// [`Chord::vertex_side`], `0` when the node lies on the chord.
pub fn side_of(geom: &Geometry<'_>, node: NodeRef, c: Chord) -> Result<i8> {
    match node {
        NodeRef::Vertex(v) => Ok(c.vertex_side(v)),
        NodeRef::Crossing([c1, c2]) => {
            if c == c1 || c == c2 {
                return Ok(0);
            }
            for (base, other) in [(c1, c2), (c2, c1)] {
                if chords_cross(base, c) {
                    return Ok(match geom.compare_along(base, other, c)? {
                        Ordering::Equal => 0,
                        Ordering::Less => c.vertex_side(base.i),
                        Ordering::Greater => c.vertex_side(base.j),
                    });
                }
            }
            // Neither chord crosses c: c1 lies in one closed half-plane and the
            // crossing is interior to c1.
            let s = c.vertex_side(c1.i);
            Ok(if s != 0 { s } else { c.vertex_side(c1.j) })
        }
    }
}

/// A convex polygon; `sides[k]` carries the edge from `corners[k]` to
/// `corners[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub corners: Vec<NodeRef>,
    pub sides: Vec<Chord>,
}

impl Region {
    /// The convex hull of the drawing.
    pub fn hull(n: u32) -> Self {
        Region {
            corners: (0..n).map(NodeRef::Vertex).collect(),
            sides: (0..n).map(|k| Chord::new(k, (k + 1) % n)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// Corner sides relative to `c`.
    pub fn sides_against(&self, geom: &Geometry<'_>, c: Chord) -> Result<Vec<i8>> {
        self.corners.iter().map(|&p| side_of(geom, p, c)).collect()
    }

    /// Keeps the part on side `keep` (±1) of chord `c`.
    pub fn cut(&self, geom: &Geometry<'_>, c: Chord, keep: i8) -> Result<Region> {
        assert!(keep == 1 || keep == -1);
        let s = self.sides_against(geom, c)?;
        let k = self.len();
        let mut out = Region { corners: Vec::new(), sides: Vec::new() };
        for i in 0..k {
            let (cur, nxt) = (s[i], s[(i + 1) % k]);
            let side = self.sides[i];
            if cur == keep || cur == 0 {
                let stays = nxt == keep || (nxt == 0 && cur == keep) || (nxt == 0 && cur == 0);
                if stays {
                    out.corners.push(self.corners[i]);
                    out.sides.push(side);
                } else if cur == 0 {
                    // Leaving into the discarded part: continue along the cut.
                    out.corners.push(self.corners[i]);
                    out.sides.push(c);
                } else {
                    out.corners.push(self.corners[i]);
                    out.sides.push(side);
                    out.corners.push(NodeRef::crossing(side, c));
                    out.sides.push(c);
                }
            } else if nxt == keep {
                out.corners.push(NodeRef::crossing(side, c));
                out.sides.push(side);
            }
        }
        if out.len() < 3 {
            return Err(Error::Invariant(format!("cutting by {c} leaves a degenerate region")));
        }
        Ok(out)
    }

    /// Keeps the side of `c` containing `reference`.
    pub fn cut_towards(&self, geom: &Geometry<'_>, c: Chord, reference: NodeRef) -> Result<Region> {
        let keep = side_of(geom, reference, c)?;
        if keep == 0 {
            return Err(Error::Invariant(format!("reference {reference} lies on {c}")));
        }
        self.cut(geom, c, keep)
    }
}
