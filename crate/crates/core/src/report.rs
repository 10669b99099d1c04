//! The per-drawing JSON report.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::analysis::{find_5_face_generic_in, find_5_face_regular_in, FaceCertificate, FiveFaceOutcome};
use crate::arrangement::{heavy_crossing_census, Arrangement, FaceHistogram, HeavyCrossing};
use crate::cyclotomic::{canonical_form, SolutionClass};
use crate::drawings::ConvexDrawing;
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Heavy-crossing triples sharing one canonical arc tuple.
#[derive(Clone, Debug, Serialize)]
pub struct ClassCount {
    /// `(U, V, W, X, Y, Z)` in units of `1/n`, least under the symmetries.
    pub tuple: [u32; 6],
    pub class: SolutionClass,
    pub triples: usize,
    /// Heavy crossings with at least one triple of this type.
    pub crossings: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DrawingReport {
    pub schema_version: u32,
    pub drawing: ConvexDrawing,
    pub n: u32,
    pub crossings: usize,
    /// Every heavy cluster counts once, the center included.
    pub heavy_crossings: usize,
    pub heavy_crossings_off_center: usize,
    pub generic: bool,
    pub histogram: FaceHistogram,
    pub five_face: FiveFaceOutcome,
    /// Regular drawings only; empty otherwise.
    pub solution_classes: Vec<ClassCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heavy_census: Option<Vec<HeavyCrossing>>,
}

/// A 5-face: from the constructive finders where they apply, otherwise the
/// first one in the arrangement.
fn five_face(a: &Arrangement) -> Result<FiveFaceOutcome> {
    if a.drawing().is_regular() {
        return find_5_face_regular_in(a);
    }
    if a.is_generic() && a.n() >= 5 {
        return Ok(FiveFaceOutcome::Face { certificate: find_5_face_generic_in(a)? });
    }
    Ok(match a.bounded_faces().find(|&f| a.face_len(f) == 5) {
        Some(f) => FiveFaceOutcome::Face { certificate: FaceCertificate::from_face(a, f) },
        None => FiveFaceOutcome::ProvenAbsent,
    })
}

fn classes(census: &[HeavyCrossing]) -> Vec<ClassCount> {
    let mut by_tuple: BTreeMap<[u32; 6], ClassCount> = BTreeMap::new();
    for h in census {
        let mut seen = Vec::new();
        for t in &h.triples {
            let key = canonical_form(&t.tuple);
            let entry =
                by_tuple.entry(key).or_insert(ClassCount { tuple: key, class: t.class, triples: 0, crossings: 0 });
            entry.triples += 1;
            if !seen.contains(&key) {
                seen.push(key);
                entry.crossings += 1;
            }
        }
    }
    by_tuple.into_values().collect()
}

/// The full report for a built arrangement; `with_census` adds every heavy
/// crossing with its labelled triples.
pub fn drawing_report(a: &Arrangement, with_census: bool) -> Result<DrawingReport> {
    let census = if a.drawing().is_regular() { heavy_crossing_census(a)? } else { Vec::new() };
    let heavy = a.heavy_nodes();
    let center = a.center_node();
    Ok(DrawingReport {
        schema_version: SCHEMA_VERSION,
        drawing: a.drawing().clone(),
        n: a.n(),
        crossings: a.crossing_count(),
        heavy_crossings: heavy.len(),
        heavy_crossings_off_center: heavy.iter().filter(|&&v| Some(v) != center).count(),
        generic: a.is_generic(),
        histogram: a.histogram(),
        five_face: five_face(a)?,
        solution_classes: classes(&census),
        heavy_census: with_census.then_some(census),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_arrangement;

    #[test]
    fn octagon_report() {
        let a = build_arrangement(&ConvexDrawing::regular(8).unwrap()).unwrap();
        let r = drawing_report(&a, false).unwrap();
        assert_eq!((r.heavy_crossings, r.heavy_crossings_off_center), (9, 8));
        assert!(matches!(r.five_face, FiveFaceOutcome::ProvenAbsent));
        assert!(r.solution_classes.iter().all(|c| c.class.tag() == crate::cyclotomic::SolutionTag::Trivial));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert!(v.get("heavy_census").is_none());
    }
}
