//! Plane graphs as rotation systems, walks in them, and face tracing.
//!
//! A [`PlaneGraph`] is a simple graph together with the counterclockwise cyclic
//! order of neighbours around every vertex. Coordinates are optional; when they
//! are present and the graph was built from user input they form a straight-line
//! drawing whose angular order is the rotation.

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use crate::geometry::{self, angular_cmp, Point, SegmentIntersection};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("parallel edges between `{0}` and `{1}`")]
    ParallelEdge(String, String),
    #[error("either every vertex has coordinates or none does")]
    MixedCoordinates,
    #[error("vertices `{0}` and `{1}` have the same coordinates")]
    CoincidentCoordinates(String, String),
    #[error("straight edges `{0}` and `{1}` meet away from a shared endpoint")]
    CrossingEdges(String, String),
    #[error("two edges leave `{0}` in the same direction")]
    CoincidentDirections(String),
    #[error("no rotation given for `{0}` and no coordinates to compute it from")]
    MissingRotation(String),
    #[error("rotation at `{0}` does not list exactly the incident edges once each")]
    BadRotation(String),
    #[error("rotation at `{0}` disagrees with the counterclockwise order of the coordinates")]
    RotationCoordMismatch(String),
    #[error("rotation system has genus {0} on some component")]
    NonPlanarRotation(i64),
    #[error("walk is empty")]
    EmptyWalk,
    #[error("`{0}` and `{1}` are consecutive in the walk but not adjacent")]
    NotAWalk(String, String),
    #[error("closed walk collapses to {0} steps")]
    DegenerateClosed(usize),
}

/// A simple plane graph given by its rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    names: Vec<String>,
    coords: Option<Vec<Point>>,
    straight_line: bool,
    /// Neighbours of each vertex in counterclockwise order.
    rotation: Vec<Vec<VertexId>>,
    /// Edges as `(low, high)` vertex pairs, sorted.
    edges: Vec<(VertexId, VertexId)>,
    edge_lookup: HashMap<(VertexId, VertexId), EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub id: String,
    pub coord: Option<Point>,
}

impl VertexSpec {
    pub fn at(id: &str, x: i64, y: i64) -> Self {
        VertexSpec { id: id.to_string(), coord: Some(Point::int(x, y)) }
    }

    pub fn bare(id: &str) -> Self {
        VertexSpec { id: id.to_string(), coord: None }
    }
}

fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl PlaneGraph {
    /// Builds and validates a plane graph.
    ///
    /// `rotation` maps vertex ids to their neighbour ids in counterclockwise order.
    /// When absent it is computed from coordinates; when both are present they must agree.
    pub fn build(
        vertices: &[VertexSpec],
        edges: &[(String, String)],
        rotation: Option<&BTreeMap<String, Vec<String>>>,
    ) -> Result<PlaneGraph, GraphError> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id.clone()));
            }
        }
        let with_coords = vertices.iter().filter(|v| v.coord.is_some()).count();
        let coords = if with_coords == 0 {
            None
        } else if with_coords == vertices.len() {
            Some(vertices.iter().map(|v| v.coord.clone().unwrap()).collect::<Vec<_>>())
        } else {
            return Err(GraphError::MixedCoordinates);
        };
        let names: Vec<String> = vertices.iter().map(|v| v.id.clone()).collect();
        let lookup = |id: &String| index.get(id).copied().ok_or_else(|| GraphError::UnknownVertex(id.clone()));

        let mut edge_pairs = Vec::with_capacity(edges.len());
        let mut seen = HashSet::new();
        for (a, b) in edges {
            let (u, v) = (lookup(a)?, lookup(b)?);
            if u == v {
                return Err(GraphError::LoopEdge(a.clone()));
            }
            if !seen.insert(edge_key(u, v)) {
                return Err(GraphError::ParallelEdge(a.clone(), b.clone()));
            }
            edge_pairs.push(edge_key(u, v));
        }

        if let Some(pts) = &coords {
            check_drawing(&names, pts, &edge_pairs)?;
        }

        let mut graph = PlaneGraph::assemble(names, coords, true, vec![Vec::new(); vertices.len()], edge_pairs);
        let computed = if graph.coords.is_some() { Some(graph.rotation_from_coordinates()?) } else { None };
        let rotation = match (rotation, computed) {
            (Some(given), computed) => {
                // vertices of degree <= 2 have a forced cyclic order and may be omitted
                let mut rot: Vec<Vec<VertexId>> = graph
                    .adjacency()
                    .into_iter()
                    .map(|nbrs| if nbrs.len() <= 2 { nbrs } else { Vec::new() })
                    .collect();
                for (id, nbrs) in given {
                    let v = lookup(id)?;
                    rot[v] = nbrs.iter().map(lookup).collect::<Result<Vec<_>, _>>()?;
                }
                graph.check_rotation_lists(&rot)?;
                if let Some(computed) = computed {
                    for v in 0..rot.len() {
                        if !same_cyclic(&rot[v], &computed[v]) {
                            return Err(GraphError::RotationCoordMismatch(graph.names[v].clone()));
                        }
                    }
                }
                rot
            }
            (None, Some(computed)) => computed,
            (None, None) => {
                let adjacency = graph.adjacency();
                let mut rot = vec![Vec::new(); graph.vertex_count()];
                for v in 0..rot.len() {
                    match adjacency[v].len() {
                        0..=2 => rot[v] = adjacency[v].clone(),
                        _ => return Err(GraphError::MissingRotation(graph.names[v].clone())),
                    }
                }
                rot
            }
        };
        graph.rotation = rotation;
        let genus = graph.trace_faces().max_genus();
        if genus != 0 {
            return Err(GraphError::NonPlanarRotation(genus));
        }
        Ok(graph)
    }

    /// Assembles a graph from an already-consistent rotation system without validation.
    pub(crate) fn from_rotation(
        names: Vec<String>,
        coords: Option<Vec<Point>>,
        straight_line: bool,
        rotation: Vec<Vec<VertexId>>,
    ) -> PlaneGraph {
        let mut edges: Vec<(VertexId, VertexId)> = rotation
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        edges.sort();
        PlaneGraph::assemble(names, coords, straight_line, rotation, edges)
    }

    fn assemble(
        names: Vec<String>,
        coords: Option<Vec<Point>>,
        straight_line: bool,
        rotation: Vec<Vec<VertexId>>,
        mut edges: Vec<(VertexId, VertexId)>,
    ) -> PlaneGraph {
        edges.sort();
        let edge_lookup = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let straight_line = straight_line && coords.is_some();
        PlaneGraph { names, coords, straight_line, rotation, edges, edge_lookup }
    }

    pub fn empty() -> PlaneGraph {
        PlaneGraph::assemble(Vec::new(), None, false, Vec::new(), Vec::new())
    }

    fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn check_rotation_lists(&self, rot: &[Vec<VertexId>]) -> Result<(), GraphError> {
        let adjacency = self.adjacency();
        for v in 0..self.vertex_count() {
            let mut given = rot[v].clone();
            given.sort();
            let mut expected = adjacency[v].clone();
            expected.sort();
            if given != expected {
                return Err(GraphError::BadRotation(self.names[v].clone()));
            }
        }
        Ok(())
    }

    /// Sorts the neighbours of each vertex counterclockwise by direction, exactly.
    pub fn rotation_from_coordinates(&self) -> Result<Vec<Vec<VertexId>>, GraphError> {
        let pts = self.coords.as_ref().expect("rotation_from_coordinates needs coordinates");
        let adjacency = self.adjacency();
        let mut rot = Vec::with_capacity(self.vertex_count());
        for (v, nbrs) in adjacency.into_iter().enumerate() {
            let mut dirs: Vec<_> = nbrs.iter().map(|&w| (pts[w].sub(&pts[v]), w)).collect();
            dirs.sort_by(|a, b| angular_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
            if dirs.windows(2).any(|w| angular_cmp(&w[0].0, &w[1].0).is_eq()) {
                return Err(GraphError::CoincidentDirections(self.names[v].clone()));
            }
            rot.push(dirs.into_iter().map(|(_, w)| w).collect());
        }
        Ok(rot)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn coords(&self) -> Option<&[Point]> {
        self.coords.as_deref()
    }

    pub fn coord(&self, v: VertexId) -> Option<&Point> {
        self.coords.as_ref().map(|c| &c[v])
    }

    /// Coordinates form a straight-line drawing realising the rotation.
    pub fn is_straight_line(&self) -> bool {
        self.straight_line
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_lookup.get(&edge_key(u, v)).copied()
    }

    pub fn edge_name(&self, e: EdgeId) -> String {
        let (u, v) = self.edges[e];
        format!("{}{}", self.names[u], self.names[v])
    }

    /// The other endpoint of `e`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Position of neighbour `w` in the rotation at `v`.
    pub fn rotation_index(&self, v: VertexId, w: VertexId) -> usize {
        self.rotation[v].iter().position(|&x| x == w).expect("not a neighbour")
    }

    /// Traces faces: arriving at `v` from `u`, leave towards the neighbour that
    /// follows `u` in clockwise order around `v`.
    pub fn trace_faces(&self) -> FaceTrace {
        let mut visited: HashSet<(VertexId, VertexId)> = HashSet::new();
        let mut faces = Vec::new();
        for u in 0..self.vertex_count() {
            for &v in &self.rotation[u] {
                if visited.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while visited.insert((a, b)) {
                    face.push((a, b));
                    let rot = &self.rotation[b];
                    let i = rot.iter().position(|&x| x == a).expect("rotation lists neighbour");
                    let next = rot[(i + rot.len() - 1) % rot.len()];
                    a = b;
                    b = next;
                }
                faces.push(face);
            }
        }
        let component = self.components();
        let count = component.iter().copied().max().map_or(0, |c| c + 1);
        let mut vs = vec![0i64; count];
        let mut es = vec![0i64; count];
        let mut fs = vec![0i64; count];
        for v in 0..self.vertex_count() {
            vs[component[v]] += 1;
            if self.rotation[v].is_empty() {
                fs[component[v]] += 1;
            }
        }
        for &(u, _) in &self.edges {
            es[component[u]] += 1;
        }
        for face in &faces {
            fs[component[face[0].0]] += 1;
        }
        let genus = (0..count).map(|c| (2 - vs[c] + es[c] - fs[c]) / 2).collect();
        FaceTrace { faces, genus }
    }

    /// Connected component label for each vertex, numbered by least vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertex_count()];
        let mut next = 0;
        for s in 0..self.vertex_count() {
            if label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = next;
            while let Some(v) = stack.pop() {
                for &w in &self.rotation[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Restriction to `keep` vertices and `used` edges; returns the new graph and the
    /// old-to-new vertex map.
    pub fn restrict(&self, keep: &[bool], used: &HashSet<EdgeId>) -> (PlaneGraph, Vec<Option<VertexId>>) {
        let mut map = vec![None; self.vertex_count()];
        let mut names = Vec::new();
        for v in 0..self.vertex_count() {
            if keep[v] {
                map[v] = Some(names.len());
                names.push(self.names[v].clone());
            }
        }
        let coords = self
            .coords
            .as_ref()
            .map(|c| (0..self.vertex_count()).filter(|&v| keep[v]).map(|v| c[v].clone()).collect());
        let rotation = (0..self.vertex_count())
            .filter(|&v| keep[v])
            .map(|v| {
                self.rotation[v]
                    .iter()
                    .filter(|&&w| used.contains(&self.edge_between(v, w).unwrap()))
                    .map(|&w| map[w].expect("edge endpoint kept"))
                    .collect()
            })
            .collect();
        (PlaneGraph::from_rotation(names, coords, self.straight_line, rotation), map)
    }
}

fn same_cyclic(a: &[VertexId], b: &[VertexId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        None => false,
        Some(shift) => (0..a.len()).all(|i| a[i] == b[(i + shift) % b.len()]),
    }
}

fn check_drawing(names: &[String], pts: &[Point], edges: &[(VertexId, VertexId)]) -> Result<(), GraphError> {
    let mut sorted: Vec<(&Point, usize)> = pts.iter().zip(0..).collect();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(GraphError::CoincidentCoordinates(names[w[0].1].clone(), names[w[1].1].clone()));
        }
    }
    let label = |e: &(VertexId, VertexId)| format!("{}{}", names[e.0], names[e.1]);
    for (i, e) in edges.iter().enumerate() {
        for v in 0..pts.len() {
            if v != e.0 && v != e.1 && geometry::on_segment(&pts[v], &pts[e.0], &pts[e.1]) {
                return Err(GraphError::CrossingEdges(label(e), names[v].clone()));
            }
        }
        for f in &edges[i + 1..] {
            let shared = [e.0, e.1].iter().filter(|x| **x == f.0 || **x == f.1).count();
            let hit = geometry::intersect_segments(&pts[e.0], &pts[e.1], &pts[f.0], &pts[f.1]);
            let bad = match hit {
                SegmentIntersection::Disjoint => false,
                SegmentIntersection::Overlap(..) => true,
                SegmentIntersection::Point(_) => shared == 0,
            };
            if bad {
                return Err(GraphError::CrossingEdges(label(e), label(f)));
            }
        }
    }
    Ok(())
}

/// Faces of a rotation system and the genus of each connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTrace {
    pub faces: Vec<Vec<(VertexId, VertexId)>>,
    pub genus: Vec<i64>,
}

impl FaceTrace {
    pub fn max_genus(&self) -> i64 {
        self.genus.iter().copied().max().unwrap_or(0)
    }
}

/// A walk in a plane graph: consecutive vertices adjacent, closed walks also wrap.
///
/// Positions are `0..len`. Steps are numbered from 1: step `i` runs from position
/// `i - 1` to position `i` (to position 0 for the last step of a closed walk).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    vertices: Vec<VertexId>,
    closed: bool,
}

impl Walk {
    /// Collapses repeated vertices and checks adjacency.
    pub fn normalize(raw: &[VertexId], closed: bool, graph: &PlaneGraph) -> Result<Walk, GraphError> {
        if raw.is_empty() {
            return Err(GraphError::EmptyWalk);
        }
        let walk = Walk::collapsed(raw, closed);
        if walk.closed && walk.vertices.len() == 2 {
            return Err(GraphError::DegenerateClosed(2));
        }
        walk.check_adjacency(graph)?;
        Ok(walk)
    }

    /// Like [`Walk::normalize`] but addressed by vertex names.
    pub fn from_names(names: &[&str], closed: bool, graph: &PlaneGraph) -> Result<Walk, GraphError> {
        let raw = names
            .iter()
            .map(|n| graph.vertex_by_name(n).ok_or_else(|| GraphError::UnknownVertex(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Walk::normalize(&raw, closed, graph)
    }

    /// Collapses consecutive repeats (and, for closed walks, repeats across the wrap).
    pub(crate) fn collapsed(raw: &[VertexId], closed: bool) -> Walk {
        let mut vertices: Vec<VertexId> = Vec::with_capacity(raw.len());
        for &v in raw {
            if vertices.last() != Some(&v) {
                vertices.push(v);
            }
        }
        if closed {
            while vertices.len() > 1 && vertices.first() == vertices.last() {
                vertices.pop();
            }
        }
        Walk { vertices, closed }
    }

    pub(crate) fn from_parts(vertices: Vec<VertexId>, closed: bool) -> Walk {
        Walk { vertices, closed }
    }

    pub fn check_adjacency(&self, graph: &PlaneGraph) -> Result<(), GraphError> {
        for i in 1..=self.step_count() {
            let (a, b) = self.step_vertices(i);
            if graph.edge_between(a, b).is_none() {
                return Err(GraphError::NotAWalk(graph.name(a).to_string(), graph.name(b).to_string()));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of vertex positions.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn step_count(&self) -> usize {
        match (self.closed, self.vertices.len()) {
            (_, 0 | 1) => 0,
            (true, n) => n,
            (false, n) => n - 1,
        }
    }

    pub fn vertex_at(&self, position: usize) -> VertexId {
        self.vertices[position % self.vertices.len()]
    }

    /// Domain positions of the endpoints of step `i`.
    pub fn step_positions(&self, i: usize) -> (usize, usize) {
        debug_assert!(i >= 1 && i <= self.step_count());
        (i - 1, i % self.vertices.len())
    }

    pub fn step_vertices(&self, i: usize) -> (VertexId, VertexId) {
        let (a, b) = self.step_positions(i);
        (self.vertices[a], self.vertices[b])
    }

    /// Steps incident to position `p` in the domain.
    pub fn steps_at(&self, p: usize) -> Vec<usize> {
        let m = self.step_count();
        if m == 0 {
            return Vec::new();
        }
        if self.closed {
            vec![if p == 0 { m } else { p }, p + 1]
        } else {
            let mut out = Vec::with_capacity(2);
            if p >= 1 {
                out.push(p);
            }
            if p < m {
                out.push(p + 1);
            }
            out
        }
    }

    /// Positions with a step on either side: all of them for closed walks.
    pub fn interior_positions(&self) -> std::ops::Range<usize> {
        match (self.closed, self.vertices.len()) {
            (true, n) if n >= 2 => 0..n,
            (false, n) if n >= 3 => 1..n - 1,
            _ => 0..0,
        }
    }

    /// Step entering position `p` (interior positions only).
    pub fn in_step(&self, p: usize) -> usize {
        if p == 0 {
            self.step_count()
        } else {
            p
        }
    }

    /// Step leaving position `p` (interior positions only).
    pub fn out_step(&self, p: usize) -> usize {
        p + 1
    }

    /// Distance in the domain between two step indices (cyclic for closed walks).
    pub fn step_distance(&self, i: usize, j: usize) -> usize {
        let d = i.abs_diff(j);
        if self.closed {
            d.min(self.step_count() - d)
        } else {
            d
        }
    }

    /// Vertices pairwise distinct; closed walks additionally need at least three.
    pub fn is_injective(&self) -> bool {
        if self.closed && self.vertices.len() < 3 {
            return false;
        }
        let set: HashSet<_> = self.vertices.iter().collect();
        set.len() == self.vertices.len()
    }

    pub fn names(&self, graph: &PlaneGraph) -> Vec<String> {
        self.vertices.iter().map(|&v| graph.name(v).to_string()).collect()
    }
}

/// One passage of the walk through a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pass {
    pub position: usize,
    pub vertex: VertexId,
    pub in_step: usize,
    pub out_step: usize,
    pub in_edge: EdgeId,
    pub out_edge: EdgeId,
}

impl Pass {
    pub fn is_bounce(&self) -> bool {
        self.in_edge == self.out_edge
    }
}

/// A walk together with the plane graph it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: PlaneGraph,
    pub walk: Walk,
}

impl Instance {
    pub fn new(graph: PlaneGraph, walk: Walk) -> Result<Instance, GraphError> {
        walk.check_adjacency(&graph)?;
        Ok(Instance { graph, walk })
    }

    pub fn empty(closed: bool) -> Instance {
        Instance { graph: PlaneGraph::empty(), walk: Walk::from_parts(Vec::new(), closed) }
    }

    pub fn step_count(&self) -> usize {
        self.walk.step_count()
    }

    pub fn step_edge(&self, i: usize) -> EdgeId {
        let (a, b) = self.walk.step_vertices(i);
        self.graph.edge_between(a, b).expect("walk steps are edges")
    }

    pub fn step_edges(&self) -> Vec<EdgeId> {
        (1..=self.step_count()).map(|i| self.step_edge(i)).collect()
    }

    pub fn passes(&self) -> Vec<Pass> {
        self.walk
            .interior_positions()
            .map(|p| {
                let in_step = self.walk.in_step(p);
                let out_step = self.walk.out_step(p);
                Pass {
                    position: p,
                    vertex: self.walk.vertex_at(p),
                    in_step,
                    out_step,
                    in_edge: self.step_edge(in_step),
                    out_edge: self.step_edge(out_step),
                }
            })
            .collect()
    }

    /// Every image edge used exactly once.
    pub fn is_euler(&self) -> bool {
        let edges = self.step_edges();
        let set: HashSet<_> = edges.iter().collect();
        set.len() == edges.len()
    }

    /// The walk re-expressed on the subgraph of traversed edges.
    pub fn image_instance(&self) -> Instance {
        let mut keep = vec![false; self.graph.vertex_count()];
        for &v in self.walk.vertices() {
            keep[v] = true;
        }
        let used: HashSet<EdgeId> = self.step_edges().into_iter().collect();
        let (graph, map) = self.graph.restrict(&keep, &used);
        let vertices = self.walk.vertices().iter().map(|&v| map[v].unwrap()).collect();
        Instance { graph, walk: Walk::from_parts(vertices, self.walk.is_closed()) }
    }

    pub fn image_subgraph(&self) -> PlaneGraph {
        self.image_instance().graph
    }
}
