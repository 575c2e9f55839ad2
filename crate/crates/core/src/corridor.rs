//! Strip-system bookkeeping: strands ordered across edge corridors, and the arc
//! diagrams they induce inside vertex disks.
//!
//! Strands in a corridor are listed left to right with respect to the edge's
//! canonical orientation (lower vertex id to higher). Going counterclockwise
//! around a disk, a corridor's strands appear in that order at its lower end and
//! in reverse at its higher end.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::derivative::chords_interleave;
use crate::graph::{EdgeId, Instance, PlaneGraph, VertexId};

/// One step of one walk; `walk` indexes the list of walks sharing the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strand {
    pub walk: usize,
    pub step: usize,
}

/// A linear order of the strands through each image edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorridorOrders {
    pub orders: BTreeMap<EdgeId, Vec<Strand>>,
}

impl CorridorOrders {
    /// Strands ranked by walk, then by step index.
    pub fn canonical(walks: &[&Instance]) -> CorridorOrders {
        let mut orders: BTreeMap<EdgeId, Vec<Strand>> = BTreeMap::new();
        for (w, inst) in walks.iter().enumerate() {
            for step in 1..=inst.step_count() {
                orders.entry(inst.step_edge(step)).or_default().push(Strand { walk: w, step });
            }
        }
        CorridorOrders { orders }
    }

    /// The canonical orders with every corridor independently shuffled.
    pub fn shuffled<R: Rng>(walks: &[&Instance], rng: &mut R) -> CorridorOrders {
        let mut orders = CorridorOrders::canonical(walks);
        for strands in orders.orders.values_mut() {
            strands.shuffle(rng);
        }
        orders
    }

    pub fn order(&self, e: EdgeId) -> &[Strand] {
        self.orders.get(&e).map_or(&[], Vec::as_slice)
    }
}

/// Which sequence of strands meets the disk at `vertex` through corridor `edge`,
/// left to right with respect to the canonical orientation.
pub trait EndOrders {
    fn at_end(&self, edge: EdgeId, vertex: VertexId) -> &[Strand];
}

impl EndOrders for CorridorOrders {
    fn at_end(&self, edge: EdgeId, _vertex: VertexId) -> &[Strand] {
        self.order(edge)
    }
}

/// An arc joining the two slots of one pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub walk: usize,
    pub position: usize,
    pub slots: (usize, usize),
}

/// The cyclic slot sequence around one vertex disk and the arcs of the passes through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskDiagram {
    pub vertex: VertexId,
    pub slots: Vec<(EdgeId, Strand)>,
    pub arcs: Vec<Arc>,
    /// Slots where an open walk ends inside the disk; they never obstruct.
    pub stubs: Vec<usize>,
}

impl DiskDiagram {
    /// Pairs of arcs (by index) whose slots alternate around the disk.
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.arcs.len() {
            for j in i + 1..self.arcs.len() {
                let (a, b) = self.arcs[i].slots;
                let (c, d) = self.arcs[j].slots;
                if chords_interleave(a, b, c, d) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Builds the disk diagram at `vertex` for walks sharing `graph`.
pub fn disk_diagram(graph: &PlaneGraph, walks: &[&Instance], vertex: VertexId, ends: &impl EndOrders) -> DiskDiagram {
    let mut slots = Vec::new();
    for &w in graph.rotation(vertex) {
        let e = graph.edge_between(vertex, w).unwrap();
        let seq = ends.at_end(e, vertex);
        if vertex < w {
            slots.extend(seq.iter().map(|&s| (e, s)));
        } else {
            slots.extend(seq.iter().rev().map(|&s| (e, s)));
        }
    }
    let index: HashMap<Strand, usize> = slots.iter().enumerate().map(|(i, &(_, s))| (s, i)).collect();
    let mut arcs = Vec::new();
    let mut stubs = Vec::new();
    for (w, inst) in walks.iter().enumerate() {
        for pass in inst.passes() {
            if pass.vertex != vertex {
                continue;
            }
            let a = index[&Strand { walk: w, step: pass.in_step }];
            let b = index[&Strand { walk: w, step: pass.out_step }];
            arcs.push(Arc { walk: w, position: pass.position, slots: (a, b) });
        }
        let walk = &inst.walk;
        if !walk.is_closed() && walk.step_count() > 0 {
            if walk.vertex_at(0) == vertex {
                stubs.push(index[&Strand { walk: w, step: 1 }]);
            }
            if walk.vertex_at(walk.len() - 1) == vertex {
                stubs.push(index[&Strand { walk: w, step: walk.step_count() }]);
            }
        }
    }
    DiskDiagram { vertex, slots, arcs, stubs }
}

/// Vertices visited by any of the walks, ascending.
pub fn visited_vertices(walks: &[&Instance]) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = walks.iter().flat_map(|i| i.walk.vertices().iter().copied()).collect();
    vs.sort();
    vs.dedup();
    vs
}
