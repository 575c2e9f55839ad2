//! The mod-2 van Kampen obstruction of a walk, and of a pair of walks for
//! disjoinability.
//!
//! The cell complex is the simplicial deleted product of the domain: a two-cell
//! for every pair of domain-disjoint steps, a one-cell for every (domain vertex,
//! step) pair not incident in the domain. Cells whose images are disjoint are
//! painted black. A general-position push-off assigns each two-cell the parity of
//! the crossings between its two steps; the obstruction is the vector of parity
//! sums over the components left after cutting along black one-cells, restricted
//! to components whose boundary on the complex is black.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::corridor::{disk_diagram, visited_vertices, CorridorOrders};
use crate::derivative::{Decision, DerivativeTrace, Reason, Verdict};
use crate::graph::Instance;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("instances do not share a common arrangement")]
    AmbientMismatch,
}

/// A two-cell: steps `a < b` of one walk, or step `a` of the first walk and step `b`
/// of the second for pair products. Steps are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub a: usize,
    pub b: usize,
}

impl Cell {
    pub fn new(a: usize, b: usize) -> Self {
        Cell { a, b }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
}

/// A one-cell: domain vertex at `position` of the `side` walk, times `step` of the
/// other walk (of the same walk for single products).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OneCell {
    pub side: Side,
    pub position: usize,
    pub step: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Factor {
    positions: usize,
    steps: usize,
    closed: bool,
}

impl Factor {
    fn of(inst: &Instance) -> Factor {
        Factor { positions: inst.walk.len(), steps: inst.step_count(), closed: inst.walk.is_closed() }
    }

    fn steps_at(&self, p: usize) -> Vec<usize> {
        if self.steps == 0 {
            return Vec::new();
        }
        if self.closed {
            vec![if p == 0 { self.steps } else { p }, p + 1]
        } else {
            [p, p + 1].into_iter().filter(|&s| s >= 1 && s <= self.steps).collect()
        }
    }

    fn step_positions(&self, i: usize) -> (usize, usize) {
        (i - 1, if self.closed { i % self.positions } else { i })
    }

    fn distance(&self, i: usize, j: usize) -> usize {
        let d = i.abs_diff(j);
        if self.closed {
            d.min(self.steps - d)
        } else {
            d
        }
    }
}

/// The simplicial deleted product of one walk's domain, or the product of two domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletedProductComplex {
    first: Factor,
    second: Factor,
    symmetric: bool,
    cells: Vec<Cell>,
}

impl DeletedProductComplex {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// The cell spanned by steps `a` (first factor) and `b` (second), if it exists.
    pub fn cell(&self, a: usize, b: usize) -> Option<Cell> {
        if self.symmetric {
            let (a, b) = (a.min(b), a.max(b));
            (a >= 1 && b <= self.first.steps && self.first.distance(a, b) >= 2).then(|| Cell::new(a, b))
        } else {
            (a >= 1 && b >= 1 && a <= self.first.steps && b <= self.second.steps).then(|| Cell::new(a, b))
        }
    }

    pub fn one_cells(&self, cell: Cell) -> [OneCell; 4] {
        let (p0, p1) = self.first.step_positions(cell.a);
        let second = if self.symmetric { self.first } else { self.second };
        let (q0, q1) = second.step_positions(cell.b);
        let other = if self.symmetric { Side::First } else { Side::Second };
        [
            OneCell { side: Side::First, position: p0, step: cell.b },
            OneCell { side: Side::First, position: p1, step: cell.b },
            OneCell { side: other, position: q0, step: cell.a },
            OneCell { side: other, position: q1, step: cell.a },
        ]
    }

    /// Two-cells containing the one-cell.
    pub fn cofaces(&self, oc: OneCell) -> Vec<Cell> {
        match oc.side {
            Side::First => self.first.steps_at(oc.position).into_iter().filter_map(|s| self.cell(s, oc.step)).collect(),
            Side::Second => self.second.steps_at(oc.position).into_iter().filter_map(|s| self.cell(oc.step, s)).collect(),
        }
    }

    pub fn is_boundary(&self, oc: OneCell) -> bool {
        self.cofaces(oc).len() == 1
    }
}

/// Deleted product of a single walk's domain: pairs of steps at (cyclic) distance >= 2.
pub fn deleted_product(inst: &Instance) -> DeletedProductComplex {
    let f = Factor::of(inst);
    let mut complex = DeletedProductComplex { first: f, second: f, symmetric: true, cells: Vec::new() };
    let cells = (1..=f.steps)
        .flat_map(|a| (a + 1..=f.steps).map(move |b| (a, b)))
        .filter_map(|(a, b)| complex.cell(a, b))
        .collect();
    complex.cells = cells;
    complex
}

/// Full product of two domains.
pub fn pair_product(k: &Instance, l: &Instance) -> DeletedProductComplex {
    let (fk, fl) = (Factor::of(k), Factor::of(l));
    let cells = (1..=fk.steps).flat_map(|a| (1..=fl.steps).map(move |b| Cell::new(a, b))).collect();
    DeletedProductComplex { first: fk, second: fl, symmetric: false, cells }
}

/// Black one- and two-cells: those whose images are disjoint.
#[derive(Clone, Debug)]
pub struct PaintedComplex {
    pub complex: DeletedProductComplex,
    pub black_cells: BTreeSet<Cell>,
    pub black_one_cells: BTreeSet<OneCell>,
    /// Every one-cell of some two-cell, in order.
    pub one_cells: BTreeSet<OneCell>,
}

impl PaintedComplex {
    pub fn is_black(&self, cell: Cell) -> bool {
        self.black_cells.contains(&cell)
    }

    pub fn is_black_one(&self, oc: OneCell) -> bool {
        self.black_one_cells.contains(&oc)
    }
}

pub fn paint_black(complex: DeletedProductComplex, first: &Instance, second: &Instance) -> PaintedComplex {
    let g = &first.graph;
    let mut black_cells = BTreeSet::new();
    let mut one_cells = BTreeSet::new();
    for &cell in complex.cells() {
        let (e, f) = (first.step_edge(cell.a), second.step_edge(cell.b));
        let (u, v) = g.endpoints(e);
        let (x, y) = g.endpoints(f);
        if e != f && u != x && u != y && v != x && v != y {
            black_cells.insert(cell);
        }
        one_cells.extend(complex.one_cells(cell));
    }
    let black_one_cells = one_cells
        .iter()
        .copied()
        .filter(|oc| {
            let (vertex, edge) = match oc.side {
                Side::First => (first.walk.vertex_at(oc.position), second.step_edge(oc.step)),
                Side::Second => (second.walk.vertex_at(oc.position), first.step_edge(oc.step)),
            };
            let (x, y) = g.endpoints(edge);
            vertex != x && vertex != y
        })
        .collect();
    PaintedComplex { complex, black_cells, black_one_cells, one_cells }
}

/// Parity of the crossing count of each two-cell under some push-off.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellParities {
    pub parities: BTreeMap<Cell, bool>,
}

impl CellParities {
    pub fn zero(complex: &DeletedProductComplex) -> Self {
        CellParities { parities: complex.cells().iter().map(|&c| (c, false)).collect() }
    }

    pub fn get(&self, cell: Cell) -> bool {
        self.parities.get(&cell).copied().unwrap_or(false)
    }

    pub fn toggle(&mut self, cell: Cell) {
        let bit = self.parities.get_mut(&cell).expect("parity for a cell of the complex");
        *bit = !*bit;
    }

    pub fn odd_cells(&self) -> Vec<Cell> {
        self.parities.iter().filter(|(_, &b)| b).map(|(&c, _)| c).collect()
    }
}

/// Which two-cell a crossing between the arcs of two passes is charged to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Attribution {
    /// The steps leaving both passes.
    #[default]
    OutSteps,
    /// The steps entering both passes.
    InSteps,
}

fn charged_steps(inst: &Instance, position: usize, attribution: Attribution) -> usize {
    match attribution {
        Attribution::OutSteps => inst.walk.out_step(position),
        Attribution::InSteps => inst.walk.in_step(position),
    }
}

/// Crossing parities of the canonical push-off: strands ranked by walk index in
/// every corridor, arcs as chords inside vertex disks, ends of open walks as stubs.
pub fn crossing_parities(inst: &Instance) -> CellParities {
    crossing_parities_with(inst, &CorridorOrders::canonical(&[inst]), Attribution::OutSteps)
}

/// Crossing parities of the push-off given by arbitrary corridor orders.
pub fn crossing_parities_with(inst: &Instance, orders: &CorridorOrders, attribution: Attribution) -> CellParities {
    let complex = deleted_product(inst);
    let mut parities = CellParities::zero(&complex);
    for v in visited_vertices(&[inst]) {
        let disk = disk_diagram(&inst.graph, &[inst], v, orders);
        for (i, j) in disk.crossing_pairs() {
            let (p, q) = (disk.arcs[i].position, disk.arcs[j].position);
            let cell = complex
                .cell(charged_steps(inst, p, attribution), charged_steps(inst, q, attribution))
                .expect("crossing passes are domain-disjoint");
            parities.toggle(cell);
        }
    }
    parities
}

/// Crossing parities between the walks `k` and `l` (sharing one graph); crossings of
/// a walk with itself are ignored.
pub fn pair_crossing_parities(k: &Instance, l: &Instance, orders: &CorridorOrders) -> CellParities {
    let complex = pair_product(k, l);
    let mut parities = CellParities::zero(&complex);
    let walks = [k, l];
    for v in visited_vertices(&walks) {
        let disk = disk_diagram(&k.graph, &walks, v, orders);
        for (i, j) in disk.crossing_pairs() {
            let (x, y) = (disk.arcs[i], disk.arcs[j]);
            if x.walk == y.walk {
                continue;
            }
            let (pk, pl) = if x.walk == 0 { (x.position, y.position) } else { (y.position, x.position) };
            let cell = complex.cell(k.walk.out_step(pk), l.walk.out_step(pl)).expect("pair cells always exist");
            parities.toggle(cell);
        }
    }
    parities
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub cells: Vec<Cell>,
    pub contributes: bool,
    pub parity: bool,
}

/// Components of the complex cut along black one-cells, ordered by least cell.
pub fn components(painted: &PaintedComplex, parities: &CellParities) -> Vec<Component> {
    let cells = painted.complex.cells();
    let index: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &oc in &painted.one_cells {
        if painted.is_black_one(oc) {
            continue;
        }
        let cofaces = painted.complex.cofaces(oc);
        if let [a, b] = cofaces.as_slice() {
            let (ra, rb) = (find(&mut parent, index[a]), find(&mut parent, index[b]));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: BTreeMap<usize, Vec<Cell>> = BTreeMap::new();
    for (i, &c) in cells.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(c);
    }
    groups
        .into_values()
        .map(|cells| {
            let contributes = cells.iter().all(|&c| {
                painted
                    .complex
                    .one_cells(c)
                    .iter()
                    .all(|&oc| painted.is_black_one(oc) || !painted.complex.is_boundary(oc))
            });
            let parity = cells.iter().fold(false, |acc, &c| acc ^ parities.get(c));
            Component { cells, contributes, parity }
        })
        .collect()
}

/// Parity sums of the contributing components, in component order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionVector {
    pub bits: Vec<bool>,
}

impl ObstructionVector {
    pub fn from_components(components: &[Component]) -> Self {
        ObstructionVector { bits: components.iter().filter(|c| c.contributes).map(|c| c.parity).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }
}

/// Everything computed on the way to the obstruction.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub painted: PaintedComplex,
    pub parities: CellParities,
    pub components: Vec<Component>,
    pub vector: ObstructionVector,
}

impl Obstruction {
    fn assemble(painted: PaintedComplex, parities: CellParities) -> Obstruction {
        let components = components(&painted, &parities);
        let vector = ObstructionVector::from_components(&components);
        Obstruction { painted, parities, components, vector }
    }
}

/// Runs the pipeline with the given parities (from any push-off of the instance).
pub fn obstruction_with(inst: &Instance, parities: CellParities) -> Obstruction {
    Obstruction::assemble(paint_black(deleted_product(inst), inst, inst), parities)
}

pub fn obstruction(inst: &Instance) -> Obstruction {
    obstruction_with(inst, crossing_parities(inst))
}

pub fn van_kampen(inst: &Instance) -> ObstructionVector {
    obstruction(inst).vector
}

/// Complete for open walks; for closed walks a vanishing obstruction decides nothing.
pub fn decide_by_obstruction(inst: &Instance) -> Decision {
    let vector = van_kampen(inst);
    let (approximable, reason) = match (vector.is_zero(), inst.walk.is_closed()) {
        (false, _) => (Verdict::No, Reason::ObstructionNonzero),
        (true, false) => (Verdict::Yes, Reason::ObstructionZero),
        (true, true) => (Verdict::Inconclusive, Reason::ObstructionIncomplete),
    };
    Decision { approximable, reason, trace: DerivativeTrace { levels: vec![inst.clone()], notes: Vec::new() } }
}

pub fn pair_obstruction(k: &Instance, l: &Instance) -> Result<Obstruction, ObstructionError> {
    if k.graph != l.graph {
        return Err(ObstructionError::AmbientMismatch);
    }
    let parities = pair_crossing_parities(k, l, &CorridorOrders::canonical(&[k, l]));
    Ok(Obstruction::assemble(paint_black(pair_product(k, l), k, l), parities))
}

/// Obstruction to pulling the images of `k` and `l` apart.
pub fn disjoinability_obstruction(k: &Instance, l: &Instance) -> Result<ObstructionVector, ObstructionError> {
    Ok(pair_obstruction(k, l)?.vector)
}
