//! Machine-readable analysis reports, with cross-method consistency checks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::derivative::{decide_approximable, winding_degree, DerivativeError, LevelNote, Reason, Verdict};
use crate::graph::{Instance, PlaneGraph};
use crate::obstruction::{decide_by_obstruction, obstruction, obstruction_with, pair_obstruction, Obstruction};
use crate::oracle::{oracle_approximable, oracle_disjoinable, OracleVerdict, DEFAULT_BUDGET};
use crate::pushoff::{geometric_pair_parities, geometric_parities};

pub const SCHEMA: &str = "planewalk-report/1";

/// Which deciders to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Methods {
    pub derivative: bool,
    pub obstruction: bool,
    pub geometric: bool,
    pub oracle: bool,
}

impl Methods {
    pub fn all() -> Self {
        Methods { derivative: true, obstruction: true, geometric: true, oracle: true }
    }

    pub fn none() -> Self {
        Methods { derivative: false, obstruction: false, geometric: false, oracle: false }
    }

    /// Derivative and obstruction, plus the geometric backend when coordinates exist.
    pub fn default_for(inst: &Instance) -> Self {
        Methods { derivative: true, obstruction: true, geometric: inst.graph.is_straight_line(), oracle: false }
    }

    /// Adds a method by its command-line name; `false` for unknown names.
    pub fn enable(&mut self, name: &str) -> bool {
        match name {
            "derivative" => self.derivative = true,
            "obstruction" => self.obstruction = true,
            "geom" | "geometric" => self.geometric = true,
            "oracle" => self.oracle = true,
            "all" => *self = Methods::all(),
            _ => return false,
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub oracle_budget: u64,
    pub timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { oracle_budget: DEFAULT_BUDGET, timings: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub walk: Vec<String>,
    pub closed: bool,
    pub steps: usize,
    pub coordinates: bool,
}

impl InstanceSummary {
    pub fn of(inst: &Instance) -> Self {
        let g = &inst.graph;
        InstanceSummary {
            vertices: g.names().to_vec(),
            edges: g.edges().iter().map(|&(a, b)| [g.name(a).to_string(), g.name(b).to_string()]).collect(),
            walk: inst.walk.names(g),
            closed: inst.walk.is_closed(),
            steps: inst.step_count(),
            coordinates: g.is_straight_line(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub level: usize,
    pub walk: Vec<String>,
    pub vertices: usize,
    pub edges: usize,
    pub outcome: LevelNote,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivativeMethod {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<Reason>,
    pub levels: Vec<LevelSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionMethod {
    pub verdict: Verdict,
    pub reason: Reason,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricMethod {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
    pub odd_cells: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleMethod {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub budget: u64,
    pub budget_exceeded: bool,
    /// Realizing strand orders (`walk:step`) per image edge, on a yes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orders: Option<BTreeMap<String, Vec<String>>>,
}

impl OracleMethod {
    fn of(graph: &PlaneGraph, outcome: OracleVerdict, budget: u64, label: impl Fn(usize) -> &'static str) -> Self {
        match outcome {
            OracleVerdict::Yes(orders) => OracleMethod {
                verdict: Some(Verdict::Yes),
                budget,
                budget_exceeded: false,
                orders: Some(
                    orders
                        .orders
                        .iter()
                        .map(|(&e, strands)| {
                            let seq = strands.iter().map(|s| format!("{}{}", label(s.walk), s.step)).collect();
                            (graph.edge_name(e), seq)
                        })
                        .collect(),
                ),
            },
            OracleVerdict::No => OracleMethod { verdict: Some(Verdict::No), budget, budget_exceeded: false, orders: None },
            OracleVerdict::BudgetExceeded { budget } => {
                OracleMethod { verdict: None, budget, budget_exceeded: true, orders: None }
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MethodReports {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivative: Option<DerivativeMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometric: Option<GeometricMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleMethod>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Transversal { level: usize, positions: [usize; 2], vertex: String, edges: Vec<String> },
    Winding { level: usize, degree: i64, cycle_length: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellRow {
    pub cell: [usize; 2],
    pub black: bool,
    pub parity: u8,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRow {
    pub cells: Vec<[usize; 2]>,
    pub contributes: bool,
    pub parity: u8,
}

/// The painted deleted product with parities and components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionTable {
    pub cells: Vec<CellRow>,
    pub components: Vec<ComponentRow>,
    pub vector: Vec<u8>,
}

impl ObstructionTable {
    pub fn of(ob: &Obstruction) -> Self {
        let mut component_of = BTreeMap::new();
        for (i, c) in ob.components.iter().enumerate() {
            for &cell in &c.cells {
                component_of.insert(cell, i);
            }
        }
        ObstructionTable {
            cells: ob
                .painted
                .complex
                .cells()
                .iter()
                .map(|&c| CellRow {
                    cell: [c.a, c.b],
                    black: ob.painted.is_black(c),
                    parity: ob.parities.get(c) as u8,
                    component: component_of[&c],
                })
                .collect(),
            components: ob
                .components
                .iter()
                .map(|c| ComponentRow {
                    cells: c.cells.iter().map(|x| [x.a, x.b]).collect(),
                    contributes: c.contributes,
                    parity: c.parity as u8,
                })
                .collect(),
            vector: bits(&ob.vector.bits),
        }
    }
}

fn bits(v: &[bool]) -> Vec<u8> {
    v.iter().map(|&b| b as u8).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub instance: InstanceSummary,
    pub methods: MethodReports,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionTable>,
    /// Set when the obstruction vanishes on a closed walk that is not approximable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<String>,
    /// Disagreements between methods that the theory rules out.
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

/// Process exit status for a verdict, or for a violated theorem.
pub fn exit_code(verdict: Verdict, violations: &[String]) -> i32 {
    if !violations.is_empty() {
        return 4;
    }
    match verdict {
        Verdict::Yes => 0,
        Verdict::No => 1,
        Verdict::Inconclusive => 2,
    }
}

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        exit_code(self.verdict, &self.violations)
    }
}

struct Clock {
    enabled: bool,
    times: BTreeMap<String, f64>,
}

impl Clock {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.times.insert(name.to_string(), start.elapsed().as_secs_f64() * 1000.0);
        }
        out
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.enabled.then_some(self.times)
    }
}

fn level_summaries(levels: &[Instance], notes: &[LevelNote]) -> Vec<LevelSummary> {
    levels
        .iter()
        .zip(notes)
        .enumerate()
        .map(|(level, (inst, note))| LevelSummary {
            level,
            walk: inst.walk.names(&inst.graph),
            vertices: inst.graph.vertex_count(),
            edges: inst.graph.edge_count(),
            outcome: note.clone(),
        })
        .collect()
}

fn witnesses(levels: &[Instance], notes: &[LevelNote]) -> Vec<Witness> {
    levels
        .iter()
        .zip(notes)
        .enumerate()
        .filter_map(|(level, (inst, note))| match note {
            LevelNote::Transversal { witness } => Some(Witness::Transversal {
                level,
                positions: [witness.positions.0, witness.positions.1],
                vertex: inst.graph.name(witness.vertex).to_string(),
                edges: witness.edges.iter().map(|&e| inst.graph.edge_name(e)).collect(),
            }),
            LevelNote::Winding { info } => {
                Some(Witness::Winding { level, degree: info.degree, cycle_length: info.cycle_length })
            }
            _ => None,
        })
        .collect()
}

/// Runs the requested methods on one instance and cross-checks them.
pub fn analyze(inst: &Instance, methods: &Methods, options: AnalyzeOptions) -> AnalysisReport {
    let mut clock = Clock { enabled: options.timings, times: BTreeMap::new() };
    let mut reports = MethodReports::default();
    let mut found = Vec::new();
    let mut violations = Vec::new();

    let derivative = methods.derivative.then(|| clock.time("derivative", || decide_approximable(inst)));
    if let Some(result) = &derivative {
        reports.derivative = Some(match result {
            Ok(decision) => {
                found = witnesses(&decision.trace.levels, &decision.trace.notes);
                DerivativeMethod {
                    verdict: decision.approximable,
                    reason: Some(decision.reason.clone()),
                    levels: level_summaries(&decision.trace.levels, &decision.trace.notes),
                    error: None,
                }
            }
            Err(e) => {
                violations.push(format!("derivative: {e}"));
                DerivativeMethod { verdict: Verdict::Inconclusive, reason: None, levels: Vec::new(), error: Some(e.to_string()) }
            }
        });
    }
    let derivative_verdict = derivative.as_ref().and_then(|r| r.as_ref().ok()).map(|d| d.approximable);

    let ob = (methods.obstruction || methods.geometric).then(|| clock.time("obstruction", || obstruction(inst)));
    if methods.obstruction {
        let decision = decide_by_obstruction(inst);
        let zero = ob.as_ref().unwrap().vector.is_zero();
        reports.obstruction = Some(ObstructionMethod { verdict: decision.approximable, reason: decision.reason, zero });
        if !inst.walk.is_closed() && derivative_verdict.is_some_and(|v| v != decision.approximable) {
            violations.push("derivative and obstruction disagree on an open walk".into());
        }
        if !zero && derivative_verdict == Some(Verdict::Yes) {
            violations.push("approximable walk with nonzero obstruction".into());
        }
    }

    if methods.geometric {
        let ob = ob.as_ref().unwrap();
        reports.geometric = Some(match clock.time("geometric", || geometric_parities(inst)) {
            Ok(parities) => {
                let odd_cells = parities.odd_cells().iter().map(|c| [c.a, c.b]).collect();
                let vector = obstruction_with(inst, parities).vector;
                let agrees = vector == ob.vector;
                if !agrees {
                    violations.push("geometric and combinatorial obstructions differ".into());
                }
                GeometricMethod { vector: Some(bits(&vector.bits)), agrees: Some(agrees), odd_cells, error: None }
            }
            Err(e) => GeometricMethod { vector: None, agrees: None, odd_cells: Vec::new(), error: Some(e.to_string()) },
        });
    }

    if methods.oracle {
        let outcome = clock.time("oracle", || oracle_approximable(inst, options.oracle_budget));
        let method = OracleMethod::of(&inst.graph, outcome, options.oracle_budget, |_| "s");
        if let (Some(o), Some(d)) = (method.verdict, derivative_verdict) {
            if o != d {
                violations.push("oracle and derivative disagree".into());
            }
        }
        reports.oracle = Some(method);
    }

    let obstruction_verdict = reports.obstruction.as_ref().map(|o| o.verdict);
    let geometric_verdict = reports.geometric.as_ref().and_then(|g| g.vector.as_ref()).map(|v| {
        match (v.iter().any(|&b| b == 1), inst.walk.is_closed()) {
            (true, _) => Verdict::No,
            (false, false) => Verdict::Yes,
            (false, true) => Verdict::Inconclusive,
        }
    });
    let oracle_verdict = reports.oracle.as_ref().and_then(|o| o.verdict);
    let verdict = derivative_verdict
        .or(obstruction_verdict.filter(|v| *v != Verdict::Inconclusive))
        .or(oracle_verdict)
        .or(obstruction_verdict)
        .or(geometric_verdict)
        .unwrap_or(Verdict::Inconclusive);

    let gap = match (&ob, derivative_verdict) {
        (Some(ob), Some(Verdict::No)) if inst.walk.is_closed() && ob.vector.is_zero() => Some(
            "the van Kampen obstruction vanishes but the closed walk is not approximable; \
             the obstruction is incomplete for cycles"
                .to_string(),
        ),
        _ => None,
    };

    AnalysisReport {
        schema: SCHEMA,
        instance: InstanceSummary::of(inst),
        methods: reports,
        verdict,
        witnesses: found,
        obstruction: ob.as_ref().map(ObstructionTable::of),
        gap,
        violations,
        timings: clock.finish(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub schema: &'static str,
    pub walk: Vec<String>,
    pub degree: i64,
}

pub fn degree(inst: &Instance) -> Result<DegreeReport, DerivativeError> {
    Ok(DegreeReport { schema: SCHEMA, walk: inst.walk.names(&inst.graph), degree: winding_degree(inst)? })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DisjointVerdict {
    Disjoinable,
    NotDisjoinable,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisjointReport {
    pub schema: &'static str,
    #[serde(rename = "K")]
    pub k: InstanceSummary,
    #[serde(rename = "L")]
    pub l: InstanceSummary,
    pub verdict: DisjointVerdict,
    pub obstruction: ObstructionTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometric: Option<GeometricMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleMethod>,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl DisjointReport {
    pub fn exit_code(&self) -> i32 {
        let verdict = match self.verdict {
            DisjointVerdict::Disjoinable => Verdict::Yes,
            DisjointVerdict::NotDisjoinable => Verdict::No,
            DisjointVerdict::Inconclusive => Verdict::Inconclusive,
        };
        exit_code(verdict, &self.violations)
    }
}

/// Disjoinability of two walks already expressed on one graph.
pub fn analyze_pair(k: &Instance, l: &Instance, methods: &Methods, options: AnalyzeOptions) -> Option<DisjointReport> {
    let mut clock = Clock { enabled: options.timings, times: BTreeMap::new() };
    let ob = clock.time("obstruction", || pair_obstruction(k, l)).ok()?;
    let mut violations = Vec::new();
    let zero = ob.vector.is_zero();
    let geometric = (methods.geometric && k.graph.is_straight_line()).then(|| {
        match clock.time("geometric", || geometric_pair_parities(k, l)) {
            Ok(parities) => {
                let odd_cells = parities.odd_cells().iter().map(|c| [c.a, c.b]).collect();
                let bits_geo: Vec<bool> = ob
                    .components
                    .iter()
                    .filter(|c| c.contributes)
                    .map(|c| c.cells.iter().fold(false, |acc, &x| acc ^ parities.get(x)))
                    .collect();
                let agrees = bits_geo == ob.vector.bits;
                if !agrees {
                    violations.push("geometric and combinatorial obstructions differ".into());
                }
                GeometricMethod { vector: Some(bits(&bits_geo)), agrees: Some(agrees), odd_cells, error: None }
            }
            Err(e) => GeometricMethod { vector: None, agrees: None, odd_cells: Vec::new(), error: Some(e.to_string()) },
        }
    });
    let oracle = methods.oracle.then(|| {
        let outcome = clock
            .time("oracle", || oracle_disjoinable(k, l, options.oracle_budget))
            .expect("instances share a graph");
        OracleMethod::of(&k.graph, outcome, options.oracle_budget, |w| if w == 0 { "K" } else { "L" })
    });
    let oracle_verdict = oracle.as_ref().and_then(|o| o.verdict);
    if !zero && oracle_verdict == Some(Verdict::Yes) {
        violations.push("disjoinable pair with nonzero obstruction".into());
    }
    let verdict = match (zero, oracle_verdict) {
        (false, _) => DisjointVerdict::NotDisjoinable,
        (true, Some(Verdict::Yes)) => DisjointVerdict::Disjoinable,
        (true, Some(Verdict::No)) => DisjointVerdict::NotDisjoinable,
        (true, _) => DisjointVerdict::Inconclusive,
    };
    Some(DisjointReport {
        schema: SCHEMA,
        k: InstanceSummary::of(k),
        l: InstanceSummary::of(l),
        verdict,
        obstruction: ObstructionTable::of(&ob),
        geometric,
        oracle,
        violations,
        timings: clock.finish(),
    })
}
