#![allow(dead_code)]

use planewalk::graph::{Instance, PlaneGraph, Walk};

/// Every open walk with at most `max_steps` steps, including constant ones.
pub fn open_walks(g: &PlaneGraph, max_steps: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| vec![v]).collect();
    while let Some(seq) = stack.pop() {
        if seq.len() <= max_steps {
            for &w in g.rotation(*seq.last().unwrap()) {
                let mut next = seq.clone();
                next.push(w);
                stack.push(next);
            }
        }
        let walk = Walk::normalize(&seq, false, g).unwrap();
        out.push(Instance::new(g.clone(), walk).unwrap());
    }
    out
}

/// Every closed walk with at most `max_steps` steps, up to nothing: each starting
/// position and direction is listed separately. Two-step closed walks are skipped.
pub fn closed_walks(g: &PlaneGraph, max_steps: usize) -> Vec<Instance> {
    let mut out: Vec<Instance> = (0..g.vertex_count())
        .map(|v| Instance::new(g.clone(), Walk::normalize(&[v], true, g).unwrap()).unwrap())
        .collect();
    let mut stack: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| vec![v]).collect();
    while let Some(seq) = stack.pop() {
        let last = *seq.last().unwrap();
        if seq.len() >= 3 && g.edge_between(last, seq[0]).is_some() {
            let walk = Walk::normalize(&seq, true, g).unwrap();
            out.push(Instance::new(g.clone(), walk).unwrap());
        }
        if seq.len() < max_steps {
            for &w in g.rotation(last) {
                let mut next = seq.clone();
                next.push(w);
                stack.push(next);
            }
        }
    }
    out
}

pub fn max_multiplicity(inst: &Instance) -> usize {
    let mut counts = std::collections::HashMap::new();
    for e in inst.step_edges() {
        *counts.entry(e).or_insert(0usize) += 1;
    }
    counts.into_values().max().unwrap_or(0)
}
