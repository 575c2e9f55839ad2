//! Exhaustive search over strip-system realizations.
//!
//! A walk is approximable by embeddings exactly when the strands through every
//! corridor can be ordered so that no two arcs interleave in any vertex disk.
//! Disjoinability of two walks relaxes this: strands of the same walk may cross,
//! so only the relative order of K- and L-strands matters, and only K-arcs against
//! L-arcs are forbidden to interleave.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::corridor::{disk_diagram, visited_vertices, CorridorOrders, Strand};
use crate::graph::{EdgeId, Instance, VertexId};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    /// Realizable; the first realizing orders in search order.
    Yes(CorridorOrders),
    No,
    BudgetExceeded { budget: u64 },
}

impl OracleVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleVerdict::Yes(_))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instances do not share a common arrangement")]
    AmbientMismatch,
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

struct Search<'a> {
    walks: Vec<&'a Instance>,
    edges: Vec<EdgeId>,
    canonical: CorridorOrders,
    /// Vertices whose disks become fully ordered once edge `t` is assigned.
    ready: Vec<Vec<VertexId>>,
    orders: CorridorOrders,
    mixed_only: bool,
    spent: u64,
    budget: u64,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<'a> Search<'a> {
    fn new(walks: Vec<&'a Instance>, mixed_only: bool, budget: u64) -> Self {
        let graph = &walks[0].graph;
        let canonical = CorridorOrders::canonical(&walks);
        let mut edges: Vec<EdgeId> = Vec::new();
        let mut seen = BTreeSet::new();
        let vertices = visited_vertices(&walks);
        for &v in &vertices {
            for &w in graph.rotation(v) {
                let e = graph.edge_between(v, w).unwrap();
                if !canonical.order(e).is_empty() && seen.insert(e) {
                    edges.push(e);
                }
            }
        }
        let mut ready = vec![Vec::new(); edges.len()];
        for &v in &vertices {
            let last = graph
                .rotation(v)
                .iter()
                .filter_map(|&w| edges.iter().position(|&e| e == graph.edge_between(v, w).unwrap()))
                .max();
            if let Some(t) = last {
                ready[t].push(v);
            }
        }
        Search {
            walks,
            edges,
            canonical,
            ready,
            orders: CorridorOrders { orders: Default::default() },
            mixed_only,
            spent: 0,
            budget,
        }
    }

    fn disk_ok(&self, v: VertexId) -> bool {
        let disk = disk_diagram(&self.walks[0].graph, &self.walks, v, &self.orders);
        disk.crossing_pairs()
            .into_iter()
            .all(|(i, j)| self.mixed_only && disk.arcs[i].walk == disk.arcs[j].walk)
    }

    /// Orders that differ only inside runs of same-walk strands are equivalent
    /// when same-walk crossings are free; keep the one with ascending runs.
    fn representative(strands: &[Strand]) -> bool {
        strands.windows(2).all(|w| w[0].walk != w[1].walk || w[0] < w[1])
    }

    fn run(&mut self, t: usize) -> Outcome {
        if t == self.edges.len() {
            return Outcome::Found;
        }
        let e = self.edges[t];
        let base = self.canonical.order(e).to_vec();
        let mut perm: Vec<usize> = (0..base.len()).collect();
        loop {
            let strands: Vec<Strand> = perm.iter().map(|&i| base[i]).collect();
            if !self.mixed_only || Self::representative(&strands) {
                self.spent += 1;
                if self.spent > self.budget {
                    return Outcome::OutOfBudget;
                }
                self.orders.orders.insert(e, strands);
                if self.ready[t].iter().all(|&v| self.disk_ok(v)) {
                    match self.run(t + 1) {
                        Outcome::Exhausted => {}
                        done => return done,
                    }
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        self.orders.orders.remove(&e);
        Outcome::Exhausted
    }

    fn verdict(mut self) -> OracleVerdict {
        match self.run(0) {
            Outcome::Found => OracleVerdict::Yes(self.orders),
            Outcome::Exhausted => OracleVerdict::No,
            Outcome::OutOfBudget => OracleVerdict::BudgetExceeded { budget: self.budget },
        }
    }
}

/// Decides approximability by embeddings by trying every corridor order
/// (lexicographically, per edge in disk order) with pruning at completed disks.
/// The budget bounds the number of partial assignments tried.
pub fn oracle_approximable(inst: &Instance, budget: u64) -> OracleVerdict {
    Search::new(vec![inst], false, budget).verdict()
}

/// Decides whether two walks on a common drawing can be perturbed apart.
pub fn oracle_disjoinable(k: &Instance, l: &Instance, budget: u64) -> Result<OracleVerdict, OracleError> {
    if k.graph != l.graph {
        return Err(OracleError::AmbientMismatch);
    }
    Ok(Search::new(vec![k, l], true, budget).verdict())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ingest::overlay;

    #[test]
    fn permutations_in_order() {
        let mut v = vec![0, 1, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }

    #[test]
    fn starpass_is_realized_by_nesting() {
        let inst = fixtures::starpass();
        let OracleVerdict::Yes(orders) = oracle_approximable(&inst, DEFAULT_BUDGET) else {
            panic!("STARPASS is approximable");
        };
        let ce = inst.step_edge(2);
        let steps: Vec<usize> = orders.order(ce).iter().map(|s| s.step).collect();
        assert_eq!(steps, vec![3, 2]);
    }

    #[test]
    fn known_verdicts() {
        assert_eq!(oracle_approximable(&fixtures::xwalk(), DEFAULT_BUDGET), OracleVerdict::No);
        assert_eq!(oracle_approximable(&fixtures::c3wind(2), DEFAULT_BUDGET), OracleVerdict::No);
        assert!(oracle_approximable(&fixtures::c3wind(1), DEFAULT_BUDGET).is_yes());
        assert!(oracle_approximable(&fixtures::backforth(), DEFAULT_BUDGET).is_yes());
        assert!(oracle_approximable(&fixtures::path3(), DEFAULT_BUDGET).is_yes());
        assert_eq!(oracle_approximable(&fixtures::c3wind(3), 5), OracleVerdict::BudgetExceeded { budget: 5 });
    }

    #[test]
    fn pairs() {
        let (k, l) = fixtures::pair_x();
        let (k, l) = overlay(&k, &l).unwrap();
        assert_eq!(oracle_disjoinable(&k, &l, DEFAULT_BUDGET), Ok(OracleVerdict::No));
        let (k, l) = fixtures::pair_par();
        let (k, l) = overlay(&k, &l).unwrap();
        assert!(oracle_disjoinable(&k, &l, DEFAULT_BUDGET).unwrap().is_yes());
        let (k, l) = fixtures::pair_xsplit();
        assert_eq!(oracle_disjoinable(&k, &l, DEFAULT_BUDGET), Ok(OracleVerdict::No));
        let (k, _) = fixtures::pair_x();
        let (_, l) = fixtures::pair_par();
        assert_eq!(oracle_disjoinable(&k, &l, 10), Err(OracleError::AmbientMismatch));
    }
}
