use serde::Serialize;

use super::{Arrangement, Node};
use crate::cyclotomic::{classify_solution, ArcTuple, SolutionClass};
use crate::drawings::{Chord, RegularGeometry};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct TripleClass {
    pub chords: [Chord; 3],
    pub tuple: ArcTuple,
    pub class: SolutionClass,
}

/// A point where at least three chords meet, with every chord triple through
/// it labelled by the solution classifier.
#[derive(Clone, Debug, Serialize)]
pub struct HeavyCrossing {
    pub node: u32,
    pub chords: Vec<Chord>,
    pub center: bool,
    pub triples: Vec<TripleClass>,
}

/// All heavy crossings of a regular drawing. Each triple is re-checked with
/// the exact concurrency predicate, so a wrongly merged cluster is reported.
pub fn heavy_crossing_census(a: &Arrangement) -> Result<Vec<HeavyCrossing>> {
    if !a.drawing().is_regular() {
        return Err(Error::Precondition("the heavy-crossing census needs a regular drawing".into()));
    }
    let geom = RegularGeometry::new(a.n());
    let center = a.center_node();
    let mut out = Vec::new();
    for node in a.heavy_nodes() {
        let Node::Cluster(chords) = a.node(node) else { continue };
        let mut triples = Vec::new();
        for x in 0..chords.len() {
            for y in x + 1..chords.len() {
                for z in y + 1..chords.len() {
                    let triple = [chords[x], chords[y], chords[z]];
                    let tuple = geom.arc_tuple(triple)?;
                    let class = classify_solution(&tuple);
                    if class.tag() == crate::cyclotomic::SolutionTag::NotASolution {
                        return Err(Error::Invariant(format!("merged chords {triple:?} are not concurrent")));
                    }
                    triples.push(TripleClass { chords: triple, tuple, class });
                }
            }
        }
        out.push(HeavyCrossing { node, chords: chords.clone(), center: Some(node) == center, triples });
    }
    Ok(out)
}
