//! The planar subdivision cut out by all edges of a convex drawing.
//!
//! Nodes are the drawing vertices followed by crossing clusters (points where
//! two or more chords meet). Every cluster is found by sorting the crossings
//! along each chord and merging neighbours that coincide; faces come from a
//! rotation-system walk, which is purely combinatorial in convex position: at
//! an interior point the directions towards the polygon vertices appear in
//! boundary order.

mod census;

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use census::{heavy_crossing_census, HeavyCrossing, TripleClass};

use crate::drawings::{all_chords, binom, chords_cross, crossing_pair_id, Chord, ConvexDrawing, Geometry, Point};
use crate::error::{Error, Result};

/// A node of the arrangement named by drawing data alone: a vertex, or the
/// crossing of two chords (any pair through a cluster names that cluster).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeRef {
    Vertex(u32),
    Crossing([Chord; 2]),
}

impl NodeRef {
    pub fn crossing(a: Chord, b: Chord) -> Self {
        NodeRef::Crossing(if a <= b { [a, b] } else { [b, a] })
    }
}

impl std::fmt::Display for NodeRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NodeRef::Vertex(v) => write!(f, "v{v}"),
            NodeRef::Crossing([a, b]) => write!(f, "{a}∩{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Vertex(u32),
    /// Chords through the point, sorted.
    Cluster(Vec<Chord>),
}

impl Node {
    pub fn degree(&self) -> usize {
        match self {
            Node::Vertex(_) => 0,
            Node::Cluster(c) => c.len(),
        }
    }
}

/// Counts of bounded faces by size.
pub type FaceHistogram = BTreeMap<usize, u64>;

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    /// Roots are always the smaller id, which keeps node numbering canonical.
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi as usize] = lo;
        }
    }
}

pub struct Arrangement {
    drawing: ConvexDrawing,
    chords: Vec<Chord>,
    nodes: Vec<Node>,
    /// Node sequence along each chord from `i` to `j`.
    chord_nodes: Vec<Vec<u32>>,
    pair_node: Vec<u32>,
    seg_offset: Vec<usize>,
    he_src: Vec<u32>,
    he_chord: Vec<u32>,
    rot_start: Vec<usize>,
    rot: Vec<u32>,
    rot_pos: Vec<u32>,
    face_start: Vec<usize>,
    face_he: Vec<u32>,
    face_of: Vec<u32>,
    outer: Option<u32>,
}

/// Sorted crossings along one chord, with a flag marking those equal to
/// their predecessor.
fn sort_along(geom: &Geometry<'_>, n: u32, base: Chord) -> Result<(Vec<Chord>, Vec<bool>)> {
    let mut others = Vec::new();
    for p in base.i + 1..base.j {
        for q in (0..base.i).chain(base.j + 1..n) {
            others.push(Chord::new(p, q));
        }
    }
    match geom {
        Geometry::Rational(points) => {
            let mut keyed: Vec<_> =
                others.into_iter().map(|c| (crate::drawings::rational_parameter(points, base, c), c)).collect();
            keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
            let equal = (0..keyed.len()).map(|k| k > 0 && keyed[k - 1].0 == keyed[k].0).collect();
            Ok((keyed.into_iter().map(|(_, c)| c).collect(), equal))
        }
        Geometry::Regular(_) => {
            let failure: RefCell<Option<Error>> = RefCell::new(None);
            let cmp = |a: &Chord, b: &Chord| match geom.compare_along(base, *a, *b) {
                Ok(o) => o,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    Ordering::Equal
                }
            };
            others.sort_by(|a, b| cmp(a, b).then(a.cmp(b)));
            let mut equal = vec![false; others.len()];
            for k in 1..others.len() {
                equal[k] = cmp(&others[k - 1], &others[k]) == Ordering::Equal;
            }
            match failure.into_inner() {
                Some(e) => Err(e),
                None => Ok((others, equal)),
            }
        }
    }
}

/// Builds the arrangement with exact coincidence detection.
pub fn build_arrangement(drawing: &ConvexDrawing) -> Result<Arrangement> {
    let n = drawing.n();
    let chords = all_chords(n);
    let geom = Geometry::of(drawing);
    let sorted: Vec<(Vec<Chord>, Vec<bool>)> =
        chords.par_iter().map(|&c| sort_along(&geom, n, c)).collect::<Result<Vec<_>>>()?;

    let pairs = binom(n as usize, 4);
    let mut uf = UnionFind::new(pairs);
    for (base, (order, equal)) in chords.iter().zip(&sorted) {
        for k in 1..order.len() {
            if equal[k] {
                uf.union(crossing_pair_id(*base, order[k - 1]) as u32, crossing_pair_id(*base, order[k]) as u32);
            }
        }
    }
    let mut root_node = vec![u32::MAX; pairs];
    let mut pair_node = vec![0u32; pairs];
    let mut next = n;
    for id in 0..pairs as u32 {
        let r = uf.find(id) as usize;
        if root_node[r] == u32::MAX {
            root_node[r] = next;
            next += 1;
        }
        pair_node[id as usize] = root_node[r];
    }
    let chord_nodes: Vec<Vec<u32>> = chords
        .iter()
        .zip(&sorted)
        .map(|(base, (order, _))| {
            let mut seq = vec![base.i];
            for &c in order {
                let node = pair_node[crossing_pair_id(*base, c)];
                if *seq.last().unwrap() != node {
                    seq.push(node);
                }
            }
            seq.push(base.j);
            seq
        })
        .collect();
    let arrangement = Arrangement::assemble(drawing.clone(), chords, chord_nodes, Some(pair_node))?;
    arrangement.check_cluster_consistency()?;
    Ok(arrangement)
}

impl Arrangement {
    /// Derives nodes, rotation system and faces from the chord orders.
    fn assemble(
        drawing: ConvexDrawing,
        chords: Vec<Chord>,
        chord_nodes: Vec<Vec<u32>>,
        pair_node: Option<Vec<u32>>,
    ) -> Result<Self> {
        let n = drawing.n();
        let node_count = chord_nodes.iter().flat_map(|s| s.iter()).map(|&v| v as usize + 1).max().unwrap_or(n as usize);
        let node_count = node_count.max(n as usize);
        let mut cluster_chords: Vec<Vec<Chord>> = vec![Vec::new(); node_count];
        for (c, seq) in chords.iter().zip(&chord_nodes) {
            if seq.len() < 2 || seq[0] != c.i || *seq.last().unwrap() != c.j {
                return Err(Error::Invariant(format!("malformed node sequence along {c}")));
            }
            for &v in &seq[1..seq.len() - 1] {
                if v < n {
                    return Err(Error::Invariant(format!("vertex v{v} inside chord {c}")));
                }
                cluster_chords[v as usize].push(*c);
            }
        }
        let nodes: Vec<Node> = (0..node_count)
            .map(|v| {
                if v < n as usize {
                    Node::Vertex(v as u32)
                } else {
                    let mut cs = std::mem::take(&mut cluster_chords[v]);
                    cs.sort_unstable();
                    Node::Cluster(cs)
                }
            })
            .collect();
        if let Some(bad) = nodes.iter().position(|nd| matches!(nd, Node::Cluster(c) if c.len() < 2)) {
            return Err(Error::Invariant(format!("node {bad} lies on fewer than two chords")));
        }
        let pair_node = match pair_node {
            Some(p) => p,
            None => {
                let mut p = vec![u32::MAX; binom(n as usize, 4)];
                for (id, nd) in nodes.iter().enumerate() {
                    if let Node::Cluster(cs) = nd {
                        for (a, &x) in cs.iter().enumerate() {
                            for &y in &cs[a + 1..] {
                                p[crossing_pair_id(x, y)] = id as u32;
                            }
                        }
                    }
                }
                if p.contains(&u32::MAX) {
                    return Err(Error::Invariant("some crossing pair has no node".into()));
                }
                p
            }
        };

        let mut seg_offset = Vec::with_capacity(chords.len() + 1);
        let mut total = 0usize;
        for seq in &chord_nodes {
            seg_offset.push(total);
            total += seq.len() - 1;
        }
        seg_offset.push(total);
        let mut he_src = vec![0u32; 2 * total];
        let mut he_chord = vec![0u32; 2 * total];
        let mut he_target = vec![0u32; 2 * total];
        for (ci, (c, seq)) in chords.iter().zip(&chord_nodes).enumerate() {
            for k in 0..seq.len() - 1 {
                let s = seg_offset[ci] + k;
                he_src[2 * s] = seq[k];
                he_src[2 * s + 1] = seq[k + 1];
                he_chord[2 * s] = ci as u32;
                he_chord[2 * s + 1] = ci as u32;
                he_target[2 * s] = c.j;
                he_target[2 * s + 1] = c.i;
            }
        }
        let mut degree = vec![0usize; node_count];
        for &s in &he_src {
            degree[s as usize] += 1;
        }
        let mut rot_start = Vec::with_capacity(node_count + 1);
        let mut acc = 0usize;
        for d in &degree {
            rot_start.push(acc);
            acc += d;
        }
        rot_start.push(acc);
        let mut fill = rot_start.clone();
        let mut rot = vec![0u32; he_src.len()];
        for (h, &s) in he_src.iter().enumerate() {
            rot[fill[s as usize]] = h as u32;
            fill[s as usize] += 1;
        }
        let mut rot_pos = vec![0u32; he_src.len()];
        for v in 0..node_count {
            let base = if v < n as usize { v as u32 } else { 0 };
            let slice = &mut rot[rot_start[v]..rot_start[v + 1]];
            slice.sort_unstable_by_key(|&h| (he_target[h as usize] + n - base) % n);
            for (k, &h) in slice.iter().enumerate() {
                rot_pos[h as usize] = k as u32;
            }
            if v >= n as usize {
                // Corner property: neighbours in the rotation are different chords.
                let d = slice.len();
                for k in 0..d {
                    if he_chord[slice[k] as usize] == he_chord[slice[(k + 1) % d] as usize] {
                        return Err(Error::Invariant(format!("antipodal neighbours in the rotation at node {v}")));
                    }
                }
            }
        }

        let mut arrangement = Arrangement {
            drawing,
            chords,
            nodes,
            chord_nodes,
            pair_node,
            seg_offset,
            he_src,
            he_chord,
            rot_start,
            rot,
            rot_pos,
            face_start: vec![0],
            face_he: Vec::new(),
            face_of: Vec::new(),
            outer: None,
        };
        arrangement.trace_faces()?;
        arrangement.check_counts()?;
        Ok(arrangement)
    }

    fn next_half_edge(&self, h: u32) -> u32 {
        let twin = h ^ 1;
        let w = self.he_src[twin as usize] as usize;
        let deg = (self.rot_start[w + 1] - self.rot_start[w]) as u32;
        let p = self.rot_pos[twin as usize];
        self.rot[self.rot_start[w] + ((p + deg - 1) % deg) as usize]
    }

    fn trace_faces(&mut self) -> Result<()> {
        let m = self.he_src.len();
        let mut face_of = vec![u32::MAX; m];
        let mut face_start = vec![0usize];
        let mut face_he = Vec::with_capacity(m);
        for start in 0..m as u32 {
            if face_of[start as usize] != u32::MAX {
                continue;
            }
            let f = (face_start.len() - 1) as u32;
            let mut h = start;
            loop {
                if face_of[h as usize] != u32::MAX {
                    return Err(Error::Invariant("face walk revisited a half-edge".into()));
                }
                face_of[h as usize] = f;
                face_he.push(h);
                h = self.next_half_edge(h);
                if h == start {
                    break;
                }
            }
            face_start.push(face_he.len());
        }
        self.face_of = face_of;
        self.face_start = face_start;
        self.face_he = face_he;
        self.outer = if m == 0 {
            None
        } else {
            // The two sides of the hull edge v0v1: the outer face is the larger.
            let s = self.seg_offset[0];
            let (a, b) = (self.face_of[2 * s], self.face_of[2 * s + 1]);
            Some(if self.face_len(b) > self.face_len(a) { b } else { a })
        };
        Ok(())
    }

    fn check_counts(&self) -> Result<()> {
        let v = self.nodes.len() as i64;
        let e = (self.he_src.len() / 2) as i64;
        let f = self.bounded_face_count() as i64 + 1;
        if v - e + f != 2 {
            return Err(Error::Invariant(format!("Euler check failed: V={v} E={e} F={f}")));
        }
        if let Some(f) = self.bounded_faces().find(|&f| self.face_len(f) < 3) {
            return Err(Error::Invariant(format!("bounded face {f} has fewer than three corners")));
        }
        if self.is_generic() {
            let n = self.n() as usize;
            let expected = (binom(n, 4) + binom(n, 2) + 1) as i64 - n as i64;
            let expected = expected.max(0);
            if self.bounded_face_count() as i64 != expected {
                return Err(Error::Invariant(format!(
                    "generic drawing has {} bounded faces, expected {expected}",
                    self.bounded_face_count()
                )));
            }
        }
        Ok(())
    }

    /// Every cluster of `k` chords must absorb exactly the `C(k,2)` crossing pairs.
    fn check_cluster_consistency(&self) -> Result<()> {
        let mut pairs_at = vec![0usize; self.nodes.len()];
        for &node in &self.pair_node {
            pairs_at[node as usize] += 1;
        }
        for (id, nd) in self.nodes.iter().enumerate() {
            if let Node::Cluster(cs) = nd {
                if pairs_at[id] != binom(cs.len(), 2) {
                    return Err(Error::Invariant(format!(
                        "cluster {id} has {} chords but {} crossing pairs",
                        cs.len(),
                        pairs_at[id]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn drawing(&self) -> &ConvexDrawing {
        &self.drawing
    }

    pub fn n(&self) -> u32 {
        self.drawing.n()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: u32) -> &Node {
        &self.nodes[id as usize]
    }

    /// Node ids along a chord from `c.i` to `c.j`.
    pub fn nodes_along(&self, c: Chord) -> &[u32] {
        &self.chord_nodes[c.index(self.n())]
    }

    pub fn segment_count(&self) -> usize {
        self.he_src.len() / 2
    }

    /// Crossing nodes; a cluster of several chords counts once.
    pub fn crossing_count(&self) -> usize {
        self.nodes.len() - self.n() as usize
    }

    pub fn is_generic(&self) -> bool {
        self.nodes.iter().all(|nd| nd.degree() <= 2)
    }

    /// Clusters where at least three chords meet.
    pub fn heavy_nodes(&self) -> Vec<u32> {
        (0..self.nodes.len() as u32).filter(|&v| self.node(v).degree() >= 3).collect()
    }

    /// The center of an even regular drawing, where all diameters meet.
    pub fn center_node(&self) -> Option<u32> {
        let n = self.n();
        if !self.drawing.is_regular() || n % 2 == 1 || n < 4 {
            return None;
        }
        Some(self.pair_node[crossing_pair_id(Chord::new(0, n / 2), Chord::new(1, n / 2 + 1))])
    }

    pub fn resolve(&self, r: &NodeRef) -> Option<u32> {
        match *r {
            NodeRef::Vertex(v) => (v < self.n()).then_some(v),
            NodeRef::Crossing([a, b]) => {
                let n = self.n();
                let valid = a.j < n && b.j < n && chords_cross(a, b);
                valid.then(|| self.pair_node[crossing_pair_id(a, b)])
            }
        }
    }

    /// A descriptor naming `id` in drawing terms.
    pub fn node_ref(&self, id: u32) -> NodeRef {
        match &self.nodes[id as usize] {
            Node::Vertex(v) => NodeRef::Vertex(*v),
            Node::Cluster(cs) => NodeRef::crossing(cs[0], cs[1]),
        }
    }

    /// Exact location of a node of a rational drawing.
    pub fn node_point(&self, id: u32) -> Option<Point> {
        let points = self.drawing.points()?;
        Some(match &self.nodes[id as usize] {
            Node::Vertex(v) => points[*v as usize].clone(),
            Node::Cluster(cs) => crate::drawings::rational_intersection(points, cs[0], cs[1]),
        })
    }

    pub fn face_count(&self) -> usize {
        self.face_start.len() - 1
    }

    pub fn outer_face(&self) -> Option<u32> {
        self.outer
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.face_count() as u32).filter(move |&f| Some(f) != self.outer)
    }

    pub fn bounded_face_count(&self) -> usize {
        self.face_count() - usize::from(self.outer.is_some())
    }

    pub fn face_len(&self, f: u32) -> usize {
        self.face_start[f as usize + 1] - self.face_start[f as usize]
    }

    fn face_half_edges(&self, f: u32) -> &[u32] {
        &self.face_he[self.face_start[f as usize]..self.face_start[f as usize + 1]]
    }

    /// Boundary nodes of a face in walking order.
    pub fn face_nodes(&self, f: u32) -> Vec<u32> {
        self.face_half_edges(f).iter().map(|&h| self.he_src[h as usize]).collect()
    }

    /// Chord carrying the boundary edge that leaves each corner of the face.
    pub fn face_sides(&self, f: u32) -> Vec<Chord> {
        self.face_half_edges(f).iter().map(|&h| self.chords[self.he_chord[h as usize] as usize]).collect()
    }

    /// Faces having `node` on their boundary, each listed once.
    pub fn faces_at(&self, node: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self.rot[self.rot_start[node as usize]..self.rot_start[node as usize + 1]]
            .iter()
            .map(|&h| self.face_of[h as usize])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn histogram(&self) -> FaceHistogram {
        let mut hist = FaceHistogram::new();
        for f in self.bounded_faces() {
            *hist.entry(self.face_len(f)).or_default() += 1;
        }
        hist
    }

    pub fn to_record(&self) -> ArrangementRecord {
        let clusters = self.nodes[self.n() as usize..]
            .iter()
            .map(|nd| match nd {
                Node::Cluster(cs) => cs.clone(),
                Node::Vertex(_) => unreachable!("vertices precede clusters"),
            })
            .collect();
        ArrangementRecord {
            format_version: RECORD_VERSION,
            drawing: self.drawing.clone(),
            clusters,
            chord_nodes: self.chord_nodes.clone(),
            histogram: self.histogram(),
        }
    }

    /// Rebuilds from a record without re-running any geometry, then checks the
    /// stored histogram and cluster table against the rebuilt structure.
    pub fn from_record(record: ArrangementRecord) -> Result<Self> {
        if record.format_version != RECORD_VERSION {
            return Err(Error::InvalidInput(format!("unsupported arrangement record version {}", record.format_version)));
        }
        let chords = all_chords(record.drawing.n());
        if record.chord_nodes.len() != chords.len() {
            return Err(Error::InvalidInput("record has the wrong number of chords".into()));
        }
        let a = Arrangement::assemble(record.drawing, chords, record.chord_nodes, None)?;
        a.check_cluster_consistency()?;
        let clusters_match = a.nodes[a.n() as usize..]
            .iter()
            .zip(&record.clusters)
            .all(|(nd, cs)| matches!(nd, Node::Cluster(x) if x == cs));
        if !clusters_match || a.crossing_count() != record.clusters.len() || a.histogram() != record.histogram {
            return Err(Error::InvalidInput("arrangement record is inconsistent".into()));
        }
        Ok(a)
    }
}

pub const RECORD_VERSION: u32 = 1;

/// Serializable arrangement: node table, per-chord node order and histogram.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementRecord {
    pub format_version: u32,
    pub drawing: ConvexDrawing,
    /// Chords through each crossing node, in node order after the vertices.
    pub clusters: Vec<Vec<Chord>>,
    pub chord_nodes: Vec<Vec<u32>>,
    pub histogram: FaceHistogram,
}

pub fn face_histogram(a: &Arrangement) -> FaceHistogram {
    a.histogram()
}

pub fn crossing_count(a: &Arrangement) -> usize {
    a.crossing_count()
}

pub fn is_generic(a: &Arrangement) -> bool {
    a.is_generic()
}
