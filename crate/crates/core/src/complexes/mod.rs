//! Ordered 2-dimensional simplicial complexes built from an edge chain
//! by expansion and contraction moves, with boundary-path analysis and
//! the disk/segment decomposition behind the 2^d boundary-path law.
//!
//! Vertices carry exact rational labels; an expansion inserts a fresh
//! label strictly between the edge endpoints (a mediant, nudged past
//! already-used labels), so the total order extends without relabeling.

mod lace;
mod nerve;

pub use lace::{
    lace_decomposition, lace_sequence, verify_lace_sequence, EdgePath, LaceCheck, LaceReport,
};
pub use nerve::{boundary_words, realize_equivalence, MapError, NerveMap, PathError};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An exact rational vertex label; the vertex order of the complex is
/// the numeric order of labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Ratio<i64>);

impl Label {
    pub fn integer(n: i64) -> Self {
        Label(Ratio::from_integer(n))
    }

    pub fn fraction(num: i64, den: i64) -> Self {
        Label(Ratio::new(num, den))
    }

    /// The mediant (p+r)/(q+s) of two labels, which lies strictly
    /// between them.
    fn mediant(a: Label, b: Label) -> Label {
        Label(Ratio::new(
            a.0.numer() + b.0.numer(),
            a.0.denom() + b.0.denom(),
        ))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl std::str::FromStr for Label {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            Some((n, d)) => Ok(Label(Ratio::new(n.trim().parse()?, d.trim().parse()?))),
            None => Ok(Label::integer(s.trim().parse()?)),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// An edge as an ordered label pair `u < w`.
pub type Edge = (Label, Label);

/// A face as an ordered label triple `u < v < w`.
pub type Face = (Label, Label, Label);

fn edge(a: Label, b: Label) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn face(a: Label, b: Label, c: Label) -> Face {
    let mut t = [a, b, c];
    t.sort_unstable();
    (t[0], t[1], t[2])
}

/// One construction move, replayable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    Start { k: u32 },
    Expand { u: Label, w: Label, inserted: Label },
    Contract { u: Label, v: Label, w: Label },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("{{{0}, {1}}} is not a boundary edge")]
    NotBoundaryEdge(Label, Label),
    #[error("edge {{{0}, {1}}} already exists")]
    EdgeExists(Label, Label),
    #[error("labels must satisfy u < v < w")]
    NotOrdered,
    #[error("replay diverged at move {0}")]
    ReplayMismatch(usize),
}

/// An ordered 2-complex reachable from an edge chain by moves, together
/// with its construction log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodComplex {
    vertices: BTreeSet<Label>,
    edges: BTreeSet<Edge>,
    faces: BTreeSet<Face>,
    log: Vec<Move>,
}

impl GoodComplex {
    /// The chain of `k` edges on vertices `0 < 1 < … < k`: the seed of
    /// every good complex.
    pub fn edge_chain(k: u32) -> Self {
        assert!(k >= 1);
        let vertices: BTreeSet<Label> = (0..=i64::from(k)).map(Label::integer).collect();
        let edges = (0..i64::from(k))
            .map(|i| (Label::integer(i), Label::integer(i + 1)))
            .collect();
        GoodComplex {
            vertices,
            edges,
            faces: BTreeSet::new(),
            log: vec![Move::Start { k }],
        }
    }

    pub fn vertices(&self) -> &BTreeSet<Label> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn faces(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn log(&self) -> &[Move] {
        &self.log
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn faces_attached(&self, e: Edge) -> usize {
        self.faces
            .iter()
            .filter(|&&(a, b, c)| {
                let es = [edge(a, b), edge(b, c), edge(a, c)];
                es.contains(&e)
            })
            .count()
    }

    pub fn is_boundary_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e) && self.faces_attached(e) <= 1
    }

    pub fn boundary_edges(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|&e| self.faces_attached(e) <= 1)
            .collect()
    }

    /// Minimal boundary vertex.
    pub fn source(&self) -> Label {
        self.boundary_vertices()
            .into_iter()
            .next()
            .expect("good complexes have boundary edges")
    }

    /// Maximal boundary vertex.
    pub fn target(&self) -> Label {
        self.boundary_vertices()
            .into_iter()
            .next_back()
            .expect("good complexes have boundary edges")
    }

    fn boundary_vertices(&self) -> BTreeSet<Label> {
        self.boundary_edges()
            .into_iter()
            .flat_map(|(u, w)| [u, w])
            .collect()
    }

    /// Fresh label strictly between `u` and `w`: the mediant, nudged
    /// toward `u` until unused.
    fn fresh_between(&self, u: Label, w: Label) -> Label {
        let mut v = Label::mediant(u, w);
        while self.vertices.contains(&v) {
            v = Label::mediant(u, v);
        }
        v
    }

    /// Expansion at a boundary edge `{u, w}`: adds a new vertex `v` with
    /// `u < v < w`, edges `{u,v}`, `{v,w}`, and the face `{u,v,w}`.
    pub fn expand(&self, u: Label, w: Label) -> Result<GoodComplex, MoveError> {
        let e = edge(u, w);
        if !self.is_boundary_edge(e) {
            return Err(MoveError::NotBoundaryEdge(e.0, e.1));
        }
        let v = self.fresh_between(e.0, e.1);
        let mut out = self.clone();
        out.vertices.insert(v);
        out.edges.insert(edge(e.0, v));
        out.edges.insert(edge(v, e.1));
        out.faces.insert(face(e.0, v, e.1));
        out.log.push(Move::Expand {
            u: e.0,
            w: e.1,
            inserted: v,
        });
        Ok(out)
    }

    /// Contraction over a vertex `v` with boundary edges `{u,v}` and
    /// `{v,w}`, `u < v < w`: adds the edge `{u,w}` (which must be new)
    /// and the face `{u,v,w}`.
    pub fn contract(&self, u: Label, v: Label, w: Label) -> Result<GoodComplex, MoveError> {
        if !(u < v && v < w) {
            return Err(MoveError::NotOrdered);
        }
        if !self.is_boundary_edge(edge(u, v)) {
            return Err(MoveError::NotBoundaryEdge(u, v));
        }
        if !self.is_boundary_edge(edge(v, w)) {
            return Err(MoveError::NotBoundaryEdge(v, w));
        }
        if self.edges.contains(&edge(u, w)) {
            return Err(MoveError::EdgeExists(u, w));
        }
        let mut out = self.clone();
        out.edges.insert(edge(u, w));
        out.faces.insert(face(u, v, w));
        out.log.push(Move::Contract { u, v, w });
        Ok(out)
    }

    /// Replays a move log from scratch.
    pub fn replay(log: &[Move]) -> Result<GoodComplex, MoveError> {
        let mut it = log.iter().enumerate();
        let Some((_, Move::Start { k })) = it.next() else {
            return Err(MoveError::ReplayMismatch(0));
        };
        let mut cur = GoodComplex::edge_chain(*k);
        for (i, mv) in it {
            cur = match mv {
                Move::Start { .. } => return Err(MoveError::ReplayMismatch(i)),
                Move::Expand { u, w, inserted } => {
                    let next = cur.expand(*u, *w).map_err(|_| MoveError::ReplayMismatch(i))?;
                    match next.log.last() {
                        Some(Move::Expand { inserted: got, .. }) if got == inserted => next,
                        _ => return Err(MoveError::ReplayMismatch(i)),
                    }
                }
                Move::Contract { u, v, w } => cur
                    .contract(*u, *v, *w)
                    .map_err(|_| MoveError::ReplayMismatch(i))?,
            };
        }
        Ok(cur)
    }

    /// Checks the structural invariants: face edges present, every edge
    /// in at most two faces, and the log replaying to this exact value.
    pub fn check_invariants(&self) -> Result<(), String> {
        for &(a, b, c) in &self.faces {
            for e in [edge(a, b), edge(b, c), edge(a, c)] {
                if !self.edges.contains(&e) {
                    return Err(format!("face ({a}, {b}, {c}) missing edge ({}, {})", e.0, e.1));
                }
            }
        }
        for &e in &self.edges {
            let n = self.faces_attached(e);
            if n > 2 {
                return Err(format!("edge ({}, {}) lies in {n} faces", e.0, e.1));
            }
        }
        match GoodComplex::replay(&self.log) {
            Ok(re) if re == *self => Ok(()),
            Ok(_) => Err("log replay yields a different complex".into()),
            Err(e) => Err(format!("log replay failed: {e}")),
        }
    }

    /// All monotone source-to-target walks along boundary edges, as
    /// vertex sequences in lexicographic order.
    pub fn boundary_paths(&self) -> Vec<Vec<Label>> {
        let boundary = self.boundary_edges();
        let mut adj: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
        for (u, w) in boundary {
            adj.entry(u).or_default().push(w);
        }
        for next in adj.values_mut() {
            next.sort_unstable();
        }
        let source = self.source();
        let target = self.target();
        let mut out = Vec::new();
        let mut path = vec![source];
        fn walk(
            adj: &BTreeMap<Label, Vec<Label>>,
            target: Label,
            path: &mut Vec<Label>,
            out: &mut Vec<Vec<Label>>,
        ) {
            let cur = *path.last().expect("path is nonempty");
            if cur == target {
                out.push(path.clone());
                return;
            }
            if let Some(nexts) = adj.get(&cur) {
                for &n in nexts {
                    path.push(n);
                    walk(adj, target, path, out);
                    path.pop();
                }
            }
        }
        walk(&adj, target, &mut path, &mut out);
        out
    }

    /// Splits the complex into biconnected blocks and classifies them:
    /// blocks carrying a face are disks, maximal bridge runs are line
    /// segments. For a good complex the boundary-path count is `2^d`
    /// with `d` the disk count.
    pub fn disk_decomposition(&self) -> DiskDecomposition {
        let verts: Vec<Label> = self.vertices.iter().copied().collect();
        let index: BTreeMap<Label, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); verts.len()]; // (neighbor, edge id)
        let edge_list: Vec<Edge> = self.edges.iter().copied().collect();
        for (eid, &(u, w)) in edge_list.iter().enumerate() {
            let (ui, wi) = (index[&u], index[&w]);
            adj[ui].push((wi, eid));
            adj[wi].push((ui, eid));
        }
        let blocks = biconnected_blocks(&adj, edge_list.len());

        let mut face_edge: BTreeSet<usize> = BTreeSet::new();
        for &(a, b, c) in &self.faces {
            for e in [edge(a, b), edge(b, c), edge(a, c)] {
                let eid = edge_list.binary_search(&e).expect("face edges exist");
                face_edge.insert(eid);
            }
        }

        let mut disks = Vec::new();
        let mut bridge_edges = Vec::new();
        for block in blocks {
            let has_face = block.iter().any(|eid| face_edge.contains(eid));
            let block_edges: Vec<Edge> = block.iter().map(|&eid| edge_list[eid]).collect();
            if has_face {
                disks.push(block_edges);
            } else {
                bridge_edges.extend(block_edges);
            }
        }
        let segments = connected_edge_groups(&bridge_edges);
        DiskDecomposition {
            disk_count: disks.len(),
            disks,
            segments,
        }
    }

    /// A good complex is (combinatorially) a disk when it decomposes as
    /// exactly one disk block and nothing else.
    pub fn is_disk(&self) -> bool {
        let d = self.disk_decomposition();
        d.disk_count == 1 && d.segments.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("complex serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Disk blocks and line segments of a good complex.
#[derive(Debug, Clone)]
pub struct DiskDecomposition {
    pub disk_count: usize,
    pub disks: Vec<Vec<Edge>>,
    pub segments: Vec<Vec<Edge>>,
}

/// Biconnected components of an undirected graph, as sets of edge ids
/// (iterative Hopcroft–Tarjan).
fn biconnected_blocks(adj: &[Vec<(usize, usize)>], edge_count: usize) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut used_edge = vec![false; edge_count];
    let mut stack: Vec<usize> = Vec::new(); // edge ids
    let mut blocks = Vec::new();
    let mut timer = 0usize;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // frames: (vertex, parent edge id, adjacency cursor)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while !frames.is_empty() {
            let fi = frames.len() - 1;
            let (v, parent_edge, cursor) = frames[fi];
            if cursor < adj[v].len() {
                frames[fi].2 += 1;
                let (to, eid) = adj[v][cursor];
                if eid == parent_edge {
                    continue;
                }
                if !used_edge[eid] {
                    used_edge[eid] = true;
                    stack.push(eid);
                }
                if disc[to] == usize::MAX {
                    disc[to] = timer;
                    low[to] = timer;
                    timer += 1;
                    frames.push((to, eid, 0));
                } else {
                    low[v] = low[v].min(disc[to]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        // pop the block ending with the tree edge into v
                        let mut block = Vec::new();
                        while let Some(eid) = stack.pop() {
                            block.push(eid);
                            if eid == parent_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Groups edges into connected components (for merging bridge runs into
/// segments).
fn connected_edge_groups(edges: &[Edge]) -> Vec<Vec<Edge>> {
    let mut groups: Vec<Vec<Edge>> = Vec::new();
    let mut assigned = vec![false; edges.len()];
    for start in 0..edges.len() {
        if assigned[start] {
            continue;
        }
        let mut group = vec![edges[start]];
        assigned[start] = true;
        let mut verts: BTreeSet<Label> = [edges[start].0, edges[start].1].into();
        let mut grew = true;
        while grew {
            grew = false;
            for (i, e) in edges.iter().enumerate() {
                if !assigned[i] && (verts.contains(&e.0) || verts.contains(&e.1)) {
                    assigned[i] = true;
                    verts.insert(e.0);
                    verts.insert(e.1);
                    group.push(*e);
                    grew = true;
                }
            }
        }
        group.sort_unstable();
        groups.push(group);
    }
    groups
}

/// The scripted reconstruction of the three-disk example shape: a chain
/// of a triangle, a two-face disk, a bare edge, and another triangle.
/// It has 8 boundary paths.
pub fn three_disk_example() -> GoodComplex {
    let c = GoodComplex::edge_chain(4);
    let l = Label::integer;
    let c = c.expand(l(0), l(1)).unwrap();
    let c = c.expand(l(1), l(2)).unwrap();
    let mid = Label::fraction(3, 2);
    let c = c.expand(l(1), mid).unwrap();
    c.expand(l(3), l(4)).unwrap()
}
