use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::finders::{find_5_face_regular_in, FiveFaceOutcome, NO_FIVE_FACE};
use crate::arrangement::{build_arrangement, Arrangement, FaceHistogram, NodeRef};
use crate::drawings::{
    boxes_separated_in_x, cap_cup_profile, cap_cup_profile_boxes, CapCupProfile, ConvexDrawing, RegularGeometry,
};
use crate::error::{Error, Result};

fn histogram_memo() -> &'static Mutex<HashMap<u32, FaceHistogram>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, FaceHistogram>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Face histogram of the regular `K_n`, memoized for the process.
pub fn regular_histogram(n: u32) -> Result<FaceHistogram> {
    if let Some(h) = histogram_memo().lock().unwrap().get(&n) {
        return Ok(h.clone());
    }
    let h = build_arrangement(&ConvexDrawing::regular(n)?)?.histogram();
    histogram_memo().lock().unwrap().insert(n, h.clone());
    Ok(h)
}

fn remember(a: &Arrangement) {
    if a.drawing().is_regular() {
        histogram_memo().lock().unwrap().entry(a.n()).or_insert_with(|| a.histogram());
    }
}

/// Least `n <= n_max` whose regular drawing has a `k`-face.
pub fn smallest_n_with_k_face(k: usize, n_max: u32) -> Result<Option<u32>> {
    if k < 3 {
        return Err(Error::InvalidInput(format!("face sizes start at 3, got {k}")));
    }
    for n in 1..=n_max {
        if regular_histogram(n)?.contains_key(&k) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// No face of size ≥ 6, and no bounded face has a 4-cap or a 5-cup among its
/// corners.
pub fn verify_no_large_faces(d: &ConvexDrawing) -> Result<bool> {
    let a = build_arrangement(d)?;
    if a.histogram().keys().any(|&k| k >= 6) {
        return Ok(false);
    }
    for f in a.bounded_faces() {
        let profile = face_profile(&a, f)?;
        if profile.cap > 3 || profile.cup > 4 {
            return Ok(false);
        }
    }
    Ok(true)
}

const BOX_BITS: [u32; 4] = [128, 512, 1024, 2048];

/// Cap/cup profile of a face's corners. Regular drawings go through
/// certified boxes; corners still `x`-overlapping at the last precision are
/// taken as vertically aligned.
fn face_profile(a: &Arrangement, f: u32) -> Result<CapCupProfile> {
    let nodes = a.face_nodes(f);
    if a.drawing().points().is_some() {
        let corners: Vec<_> = nodes.iter().map(|&v| a.node_point(v).unwrap()).collect();
        return cap_cup_profile(&corners);
    }
    let g = RegularGeometry::new(a.n());
    for (step, &bits) in BOX_BITS.iter().enumerate() {
        let boxes = nodes
            .iter()
            .map(|&v| match a.node_ref(v) {
                NodeRef::Vertex(k) => Ok(g.vertex_box(k, bits)),
                NodeRef::Crossing([c1, c2]) => g.crossing_box(c1, c2, bits),
            })
            .collect::<Result<Vec<_>>>()?;
        let last = step + 1 == BOX_BITS.len();
        if !last && !boxes_separated_in_x(&boxes) {
            continue;
        }
        if let Some(p) = cap_cup_profile_boxes(&boxes) {
            return Ok(p);
        }
    }
    Err(Error::PrecisionCeiling { bits: BOX_BITS[BOX_BITS.len() - 1] })
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterizationRow {
    pub n: u32,
    pub has_five_face: bool,
    pub expected: bool,
    pub heavy_crossings: usize,
    /// `Some(true)` when the finder's certificate validated.
    pub certificate_valid: Option<bool>,
}

impl CharacterizationRow {
    pub fn passed(&self) -> bool {
        self.has_five_face == self.expected && self.certificate_valid.unwrap_or(!self.expected)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterizationReport {
    pub rows: Vec<CharacterizationRow>,
    pub first_violation: Option<u32>,
}

/// For each `n <= n_max`: 5-face present exactly when `n` is not exceptional,
/// and the finder's certificate validates against the histogram's arrangement.
pub fn verify_5_face_characterization(n_max: u32) -> Result<CharacterizationReport> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let a = build_arrangement(&ConvexDrawing::regular(n)?)?;
        remember(&a);
        let has_five_face = a.histogram().contains_key(&5);
        let certificate_valid = match find_5_face_regular_in(&a) {
            Ok(FiveFaceOutcome::Face { certificate }) => {
                Some(certificate.k == 5 && certificate.validate_in(&a).is_ok())
            }
            Ok(FiveFaceOutcome::ProvenAbsent) => None,
            Err(Error::PrecisionCeiling { bits }) => return Err(Error::PrecisionCeiling { bits }),
            Err(_) => Some(false),
        };
        rows.push(CharacterizationRow {
            n,
            has_five_face,
            expected: !NO_FIVE_FACE.contains(&n),
            heavy_crossings: a.heavy_nodes().len(),
            certificate_valid,
        });
    }
    let first_violation = rows.iter().find(|r| !r.passed()).map(|r| r.n);
    Ok(CharacterizationReport { rows, first_violation })
}
