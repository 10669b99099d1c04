//! Constructive face finders with machine-checkable certificates, and the
//! searches and checks built on them.

mod finders;
pub mod region;
mod search;
pub mod suites;

use serde::{Deserialize, Serialize};

pub use finders::{
    find_3_face, find_4_face, find_5_face_generic, find_5_face_generic_in, find_5_face_k7, find_5_face_regular,
    find_5_face_regular_in, region_ra, FiveFaceOutcome, K18_FIVE_FACE, NO_FIVE_FACE,
};
pub use search::{
    regular_histogram, smallest_n_with_k_face, verify_5_face_characterization, verify_no_large_faces,
    CharacterizationReport, CharacterizationRow,
};

use crate::arrangement::{build_arrangement, Arrangement, NodeRef};
use crate::drawings::{Chord, ConvexDrawing};
use crate::error::{Error, Result};

/// A claimed `k`-face: its corners in boundary order and the chord carrying
/// each boundary edge (`sides[t]` runs from `corners[t]` to `corners[t + 1]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCertificate {
    pub k: usize,
    pub corners: Vec<NodeRef>,
    pub sides: Vec<Chord>,
    pub drawing: ConvexDrawing,
}

impl FaceCertificate {
    pub(crate) fn from_region(d: &ConvexDrawing, r: region::Region) -> Self {
        FaceCertificate { k: r.corners.len(), corners: r.corners, sides: r.sides, drawing: d.clone() }
    }

    /// The certificate for a face of a built arrangement.
    pub fn from_face(a: &Arrangement, f: u32) -> Self {
        let corners = a.face_nodes(f).iter().map(|&v| a.node_ref(v)).collect::<Vec<_>>();
        FaceCertificate { k: corners.len(), corners, sides: a.face_sides(f), drawing: a.drawing().clone() }
    }

    /// Checks the certificate against `a` and returns the matching face.
    pub fn validate_in(&self, a: &Arrangement) -> Result<u32> {
        if &self.drawing != a.drawing() {
            return Err(Error::Certificate("certificate belongs to another drawing".into()));
        }
        let k = self.k;
        if self.corners.len() != k || self.sides.len() != k || k < 3 {
            return Err(Error::Certificate(format!("a {k}-face needs {k} corners and sides")));
        }
        let ids = self
            .corners
            .iter()
            .map(|r| a.resolve(r).ok_or_else(|| Error::Certificate(format!("corner {r} is not a node"))))
            .collect::<Result<Vec<u32>>>()?;
        let mut distinct = ids.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != k {
            return Err(Error::Certificate("corners do not name distinct nodes".into()));
        }
        for f in a.faces_at(ids[0]) {
            if Some(f) == a.outer_face() || a.face_len(f) != k {
                continue;
            }
            let nodes = a.face_nodes(f);
            let sides = a.face_sides(f);
            let Some(off) = nodes.iter().position(|&v| v == ids[0]) else { continue };
            let forward = (0..k).all(|t| nodes[(off + t) % k] == ids[t] && sides[(off + t) % k] == self.sides[t]);
            let backward =
                (0..k).all(|t| nodes[(off + k - t) % k] == ids[t] && sides[(off + 2 * k - t - 1) % k] == self.sides[t]);
            if forward || backward {
                return Ok(f);
            }
        }
        Err(Error::Certificate(format!("no bounded {k}-face with these corners and sides")))
    }

    /// Builds the arrangement of the certificate's drawing and validates.
    pub fn validate(&self) -> Result<u32> {
        self.validate_in(&build_arrangement(&self.drawing)?)
    }
}
