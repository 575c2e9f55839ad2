//! Transversal self-intersections, the line-graph derivative of a walk, windings,
//! and the iterated-derivative decision procedure for paths and cycles.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{signed_area2, Point};
use crate::graph::{EdgeId, Instance, PlaneGraph, VertexId, Walk};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivativeError {
    #[error("transversal self-intersection at derivative level {level}")]
    TransversalPresent { level: usize, witness: TransversalWitness },
    #[error("derivative tower did not settle within {cap} levels")]
    IterationCapExceeded { cap: usize },
    #[error("derived rotation system has genus {genus}")]
    NonPlanarDerivative { genus: i64 },
    #[error("winding degree needs a closed walk")]
    NotClosed,
}

/// Two domain-disjoint passes through one vertex whose edge pairs interleave.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalWitness {
    pub positions: (usize, usize),
    pub vertex: VertexId,
    /// In- and out-edge of the first pass, then of the second.
    pub edges: [EdgeId; 4],
}

/// Chords `(a, b)` and `(c, d)` between distinct points on a circle cross.
pub fn chords_interleave(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d)
}

pub fn detect_transversal(inst: &Instance) -> Option<TransversalWitness> {
    let g = &inst.graph;
    let mut by_vertex: BTreeMap<VertexId, Vec<_>> = BTreeMap::new();
    for pass in inst.passes().into_iter().filter(|p| !p.is_bounce()) {
        by_vertex.entry(pass.vertex).or_default().push(pass);
    }
    let mut best: Option<TransversalWitness> = None;
    for (&v, passes) in &by_vertex {
        let slot = |e: EdgeId| g.rotation_index(v, g.opposite(e, v));
        for (i, p) in passes.iter().enumerate() {
            for q in &passes[i + 1..] {
                let edges = [p.in_edge, p.out_edge, q.in_edge, q.out_edge];
                let distinct: BTreeSet<_> = edges.iter().collect();
                if distinct.len() != 4 || inst.walk.step_distance(p.out_step, q.out_step) < 2 {
                    continue;
                }
                if chords_interleave(slot(edges[0]), slot(edges[1]), slot(edges[2]), slot(edges[3])) {
                    let found = TransversalWitness { positions: (p.position, q.position), vertex: v, edges };
                    if best.as_ref().map_or(true, |b| found.positions < b.positions) {
                        best = Some(found);
                    }
                }
            }
        }
    }
    best
}

fn derived_name(u: &str, w: &str) -> String {
    format!("[{u},{w}]")
}

/// The derivative of a transversal-free walk, on its naturally embedded line graph.
///
/// Derived vertices are the traversed edges (in edge order). The rotation at `a'`
/// for `a = u w` lists the connections made at `w` in counterclockwise order after
/// `a`, then those made at `u` likewise.
pub fn derive(inst: &Instance) -> Result<Instance, DerivativeError> {
    let closed = inst.walk.is_closed();
    if inst.walk.len() <= 1 {
        return Ok(Instance::empty(closed));
    }
    if let Some(witness) = detect_transversal(inst) {
        return Err(DerivativeError::TransversalPresent { level: 0, witness });
    }
    let g = &inst.graph;
    let steps = inst.step_edges();
    let used: Vec<EdgeId> = steps.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let new_id: BTreeMap<EdgeId, VertexId> = used.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let raw: Vec<VertexId> = steps.iter().map(|e| new_id[e]).collect();
    let walk = Walk::collapsed(&raw, closed);

    let mut adjacent: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); used.len()];
    let seq = walk.vertices();
    for i in 1..=walk.step_count() {
        let (a, b) = (seq[i - 1], seq[i % seq.len()]);
        adjacent[a].insert(b);
        adjacent[b].insert(a);
    }

    let shared = |a: EdgeId, b: EdgeId| -> VertexId {
        let (p, q) = g.endpoints(a);
        let (r, s) = g.endpoints(b);
        if p == r || p == s {
            p
        } else {
            debug_assert!(q == r || q == s);
            q
        }
    };
    let mut rotation = Vec::with_capacity(used.len());
    for (ai, &a) in used.iter().enumerate() {
        let (u, w) = g.endpoints(a);
        let mut order = Vec::new();
        for end in [w, u] {
            let deg = g.degree(end);
            let base = g.rotation_index(end, g.opposite(a, end));
            let mut block: Vec<(usize, VertexId)> = adjacent[ai]
                .iter()
                .filter(|&&bi| shared(a, used[bi]) == end)
                .map(|&bi| {
                    let idx = g.rotation_index(end, g.opposite(used[bi], end));
                    ((idx + deg - base) % deg, bi)
                })
                .collect();
            block.sort();
            order.extend(block.into_iter().map(|(_, bi)| bi));
        }
        rotation.push(order);
    }

    let mut names: Vec<String> = used
        .iter()
        .map(|&e| {
            let (u, w) = g.endpoints(e);
            derived_name(g.name(u), g.name(w))
        })
        .collect();
    if names.iter().any(|n| n.len() > 40) {
        names = (0..used.len()).map(|i| format!("d{i}")).collect();
    }
    let coords = g.coords().map(|pts| {
        used.iter()
            .map(|&e| {
                let (u, w) = g.endpoints(e);
                pts[u].midpoint(&pts[w])
            })
            .collect()
    });
    let graph = PlaneGraph::from_rotation(names, coords, false, rotation);
    let genus = graph.trace_faces().max_genus();
    if genus != 0 {
        return Err(DerivativeError::NonPlanarDerivative { genus });
    }
    Ok(Instance { graph, walk })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WindingInfo {
    pub degree: i64,
    pub cycle_length: usize,
}

/// Recognises a standard winding: a closed walk running uniformly around one cycle.
///
/// The sign is positive when one period runs counterclockwise in the graph's
/// coordinates; without coordinates (or with zero signed area) it is positive.
pub fn detect_winding(inst: &Instance) -> Option<WindingInfo> {
    let walk = &inst.walk;
    if !walk.is_closed() || walk.step_count() < 3 {
        return None;
    }
    if inst.passes().iter().any(|p| p.is_bounce()) {
        return None;
    }
    let edges: BTreeSet<EdgeId> = inst.step_edges().into_iter().collect();
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &e in &edges {
        let (u, v) = inst.graph.endpoints(e);
        *degree.entry(u).or_default() += 1;
        *degree.entry(v).or_default() += 1;
    }
    if degree.values().any(|&d| d != 2) {
        return None;
    }
    let n = degree.len();
    let m = walk.step_count();
    let seq = walk.vertices();
    if n < 3 || m % n != 0 || (0..m).any(|i| seq[i] != seq[(i + n) % m]) {
        return None;
    }
    let turns = (m / n) as i64;
    let sign = match inst.graph.coords() {
        Some(pts) => {
            let period: Vec<Point> = seq[..n].iter().map(|&v| pts[v].clone()).collect();
            if signed_area2(&period) < num_traits::Zero::zero() {
                -1
            } else {
                1
            }
        }
        None => 1,
    };
    Some(WindingInfo { degree: sign * turns, cycle_length: n })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Reason {
    Injective,
    EmptyDerivative,
    UnitWinding,
    TransversalFound { level: usize, witness: TransversalWitness },
    ForbiddenWinding { level: usize, degree: i64 },
    ObstructionZero,
    ObstructionNonzero,
    /// Closed walk with vanishing obstruction: the obstruction alone cannot decide.
    ObstructionIncomplete,
}

/// What happened at one level of the derivative tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum LevelNote {
    Empty,
    Injective,
    Transversal { witness: TransversalWitness },
    Winding { info: WindingInfo },
    Derived,
}

#[derive(Clone, Debug, Default)]
pub struct DerivativeTrace {
    pub levels: Vec<Instance>,
    pub notes: Vec<LevelNote>,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub approximable: Verdict,
    pub reason: Reason,
    pub trace: DerivativeTrace,
}

/// Decides approximability by embeddings with the iterated derivative.
pub fn decide_approximable(inst: &Instance) -> Result<Decision, DerivativeError> {
    let cap = inst.walk.len();
    let mut trace = DerivativeTrace::default();
    let mut current = inst.clone();
    for level in 0..=cap {
        let done = |trace: &mut DerivativeTrace, note, verdict, reason| {
            trace.notes.push(note);
            Some((verdict, reason))
        };
        trace.levels.push(current.clone());
        let outcome = if current.walk.is_empty() {
            done(&mut trace, LevelNote::Empty, Verdict::Yes, Reason::EmptyDerivative)
        } else if current.walk.is_injective() {
            done(&mut trace, LevelNote::Injective, Verdict::Yes, Reason::Injective)
        } else if let Some(witness) = detect_transversal(&current) {
            let reason = Reason::TransversalFound { level, witness: witness.clone() };
            done(&mut trace, LevelNote::Transversal { witness }, Verdict::No, reason)
        } else if let Some(info) = detect_winding(&current) {
            let (verdict, reason) = if info.degree.abs() >= 2 {
                (Verdict::No, Reason::ForbiddenWinding { level, degree: info.degree })
            } else {
                (Verdict::Yes, Reason::UnitWinding)
            };
            done(&mut trace, LevelNote::Winding { info }, verdict, reason)
        } else {
            None
        };
        if let Some((approximable, reason)) = outcome {
            return Ok(Decision { approximable, reason, trace });
        }
        trace.notes.push(LevelNote::Derived);
        current = derive(&current).map_err(|e| relevel(e, level))?;
    }
    Err(DerivativeError::IterationCapExceeded { cap })
}

fn relevel(err: DerivativeError, level: usize) -> DerivativeError {
    match err {
        DerivativeError::TransversalPresent { witness, .. } => DerivativeError::TransversalPresent { level, witness },
        other => other,
    }
}

/// The generalised degree of a closed walk: the degree of the winding its derivative
/// tower settles on, or 0 when the tower empties.
pub fn winding_degree(inst: &Instance) -> Result<i64, DerivativeError> {
    if !inst.walk.is_closed() {
        return Err(DerivativeError::NotClosed);
    }
    let cap = inst.walk.len();
    let mut current = inst.clone();
    for level in 0..=cap {
        if current.walk.is_empty() {
            return Ok(0);
        }
        if let Some(witness) = detect_transversal(&current) {
            return Err(DerivativeError::TransversalPresent { level, witness });
        }
        if let Some(info) = detect_winding(&current) {
            return Ok(info.degree);
        }
        current = derive(&current).map_err(|e| relevel(e, level))?;
    }
    Err(DerivativeError::IterationCapExceeded { cap })
}

/// For walks using every image edge once, approximability is the absence of a
/// transversal self-intersection. Returns `None` for other walks.
pub fn check_euler_shortcut(inst: &Instance) -> Option<Decision> {
    if !inst.is_euler() {
        return None;
    }
    let trace = DerivativeTrace { levels: vec![inst.clone()], notes: Vec::new() };
    Some(match detect_transversal(inst) {
        None => Decision { approximable: Verdict::Yes, reason: Reason::Injective, trace },
        Some(witness) => Decision {
            approximable: Verdict::No,
            reason: Reason::TransversalFound { level: 0, witness },
            trace,
        },
    })
}
