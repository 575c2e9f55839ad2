//! Acceptance criteria, one line of output each.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{closed_walks, max_multiplicity, open_walks};
use planewalk::corridor::CorridorOrders;
use planewalk::derivative::{decide_approximable, derive, detect_transversal, Decision, LevelNote, Verdict};
use planewalk::fixtures;
use planewalk::geometry::{intersect_segments, on_segment, param_along, Point, Rational, SegmentIntersection};
use planewalk::graph::Instance;
use planewalk::ingest::{arrange_polyline, walk_polyline, RawPolyline};
use planewalk::obstruction::{
    crossing_parities_with, decide_by_obstruction, disjoinability_obstruction, obstruction, obstruction_with,
    van_kampen, Attribution,
};
use planewalk::oracle::{oracle_approximable, oracle_disjoinable, OracleVerdict, DEFAULT_BUDGET};
use planewalk::pushoff::geometric_parities;
use planewalk::report;

struct Outcome {
    passed: bool,
    detail: String,
    elapsed: Duration,
    limit: Duration,
}

fn run(number: usize, title: &str, limit_secs: u64, f: impl FnOnce() -> (bool, String)) -> bool {
    let start = Instant::now();
    let (passed, detail) = f();
    let outcome = Outcome { passed, detail, elapsed: start.elapsed(), limit: Duration::from_secs(limit_secs) };
    let in_time = outcome.elapsed <= outcome.limit;
    let ok = outcome.passed && in_time;
    println!(
        "criterion {number} {}: {title}: {} ({:.2?} of {:?})",
        if ok { "PASS" } else { "FAIL" },
        outcome.detail,
        outcome.elapsed,
        outcome.limit
    );
    ok
}

fn verdict_of(decision: &Decision) -> Verdict {
    decision.approximable
}

fn oracle_verdict(inst: &Instance) -> Option<Verdict> {
    match oracle_approximable(inst, DEFAULT_BUDGET) {
        OracleVerdict::Yes(_) => Some(Verdict::Yes),
        OracleVerdict::No => Some(Verdict::No),
        OracleVerdict::BudgetExceeded { .. } => None,
    }
}

fn criterion_1() -> (bool, String) {
    let mut failures = Vec::new();
    let mut oracle_runs = 0;
    for n in 3..=5usize {
        for d in [-3i64, -2, -1, 1, 2, 3] {
            let inst = fixtures::winding(n, d);
            let expected = if d.abs() <= 1 { Verdict::Yes } else { Verdict::No };
            match decide_approximable(&inst) {
                Ok(dec) if dec.approximable == expected => {}
                other => failures.push(format!("derivative n={n} d={d}: {:?}", other.map(|d| d.approximable))),
            }
            if n * d.unsigned_abs() as usize <= 12 {
                oracle_runs += 1;
                let got = oracle_verdict(&inst);
                if got != Some(expected) {
                    failures.push(format!("oracle n={n} d={d}: {got:?}"));
                }
            }
        }
    }
    (failures.is_empty(), format!("18 windings, {oracle_runs} oracle runs, failures {failures:?}"))
}

struct Corpus {
    open: Vec<Instance>,
    closed: Vec<Instance>,
    windings: Vec<Instance>,
}

fn criterion_2(corpus: &Corpus) -> (bool, String) {
    let mut mismatches = Vec::new();
    let mut no = 0;
    for inst in &corpus.open {
        let a = decide_approximable(inst).map(|d| verdict_of(&d));
        let b = decide_by_obstruction(inst).approximable;
        no += (b == Verdict::No) as usize;
        if a.as_ref() != Ok(&b) {
            mismatches.push(format!("{:?}: derivative {a:?}, obstruction {b:?}", inst.walk.names(&inst.graph)));
        }
    }
    let shown: Vec<_> = mismatches.iter().take(3).collect();
    (mismatches.is_empty(), format!("{} open walks ({no} not approximable), {} mismatches {shown:?}", corpus.open.len(), mismatches.len()))
}

fn criterion_3() -> (bool, String) {
    let inst = fixtures::c3wind(3);
    let vk_zero = van_kampen(&inst).is_zero();
    let derivative_no = decide_approximable(&inst).map(|d| d.approximable) == Ok(Verdict::No);
    let report = report::analyze(&inst, &report::Methods::all(), report::AnalyzeOptions::default());
    let flagged = report.gap.is_some();
    (
        vk_zero && derivative_no && flagged,
        format!("v = 0: {vk_zero}, derivative no: {derivative_no}, report flags gap: {flagged}"),
    )
}

fn criterion_4() -> (bool, String) {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    let mut exceeded = 0;
    let mut no = 0;
    for g in [fixtures::xgraph(), fixtures::theta()] {
        let walks = open_walks(&g, 6).into_iter().chain(closed_walks(&g, 6));
        for inst in walks.filter(|i| max_multiplicity(i) <= 4) {
            checked += 1;
            let expected = decide_approximable(&inst).map(|d| d.approximable);
            match oracle_verdict(&inst) {
                None => exceeded += 1,
                Some(v) if Ok(v) == expected => no += (v == Verdict::No) as usize,
                Some(v) => mismatches.push(format!(
                    "{:?} closed={}: oracle {v:?}, derivative {expected:?}",
                    inst.walk.names(&inst.graph),
                    inst.walk.is_closed()
                )),
            }
        }
    }
    let shown: Vec<_> = mismatches.iter().take(3).collect();
    (
        mismatches.is_empty() && exceeded == 0,
        format!("{checked} walks ({no} not approximable), {} mismatches, {exceeded} budget exceeded {shown:?}", mismatches.len()),
    )
}

fn criterion_5(corpus: &Corpus) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    let mut failures = Vec::new();
    for inst in corpus.open.iter().chain(&corpus.closed).chain(&corpus.windings) {
        if !inst.graph.is_straight_line() {
            continue;
        }
        checked += 1;
        let canonical = obstruction(inst).vector;
        match geometric_parities(inst) {
            Ok(p) if obstruction_with(inst, p.clone()).vector == canonical => {}
            other => failures.push(format!("geometric {:?}: {:?}", inst.walk.names(&inst.graph), other.map(|p| p.odd_cells()))),
        }
        for _ in 0..10 {
            let orders = CorridorOrders::shuffled(&[inst], &mut rng);
            let p = crossing_parities_with(inst, &orders, Attribution::OutSteps);
            if obstruction_with(inst, p).vector != canonical {
                failures.push(format!("shuffled {:?}", inst.walk.names(&inst.graph)));
                break;
            }
        }
    }
    let shown: Vec<_> = failures.iter().take(3).collect();
    (failures.is_empty(), format!("{checked} instances, {} failures {shown:?}", failures.len()))
}

fn criterion_6(corpus: &Corpus) -> (bool, String) {
    let mut failures = Vec::new();
    let mut derived = 0;
    for inst in corpus.open.iter().chain(&corpus.closed).chain(&corpus.windings) {
        let Ok(decision) = decide_approximable(inst) else {
            failures.push(format!("tower failed {:?}", inst.walk.names(&inst.graph)));
            continue;
        };
        for (level, note) in decision.trace.notes.iter().enumerate() {
            if *note == LevelNote::Derived {
                derived += 1;
                match derive(&decision.trace.levels[level]) {
                    Ok(next) if next.graph.trace_faces().max_genus() == 0 => {}
                    other => failures.push(format!("derivative genus {:?}", other.map(|n| n.graph.trace_faces().genus))),
                }
            }
        }
        if inst.is_euler() && detect_transversal(inst).is_none() && inst.step_count() > 0 {
            match derive(inst) {
                Ok(d) if d.walk.is_injective() || d.walk.is_empty() || d.step_count() == 0 => {}
                _ => failures.push(format!("euler derivative {:?}", inst.walk.names(&inst.graph))),
            }
        }
        if inst.walk.is_closed() {
            let ends_well = matches!(
                decision.trace.notes.last(),
                Some(LevelNote::Empty | LevelNote::Injective | LevelNote::Winding { .. } | LevelNote::Transversal { .. })
            );
            if !ends_well || decision.trace.notes.len() > inst.walk.len() + 1 {
                failures.push(format!("closed tower {:?}", inst.walk.names(&inst.graph)));
            }
        }
    }
    let shown: Vec<_> = failures.iter().take(3).collect();
    (failures.is_empty(), format!("{derived} derivatives checked, {} failures {shown:?}", failures.len()))
}

fn criterion_7(corpus: &Corpus) -> (bool, String) {
    let mut with_witness = 0;
    let mut exceptions = Vec::new();
    for inst in corpus.open.iter().chain(&corpus.closed).chain(&corpus.windings) {
        if detect_transversal(inst).is_some() {
            with_witness += 1;
            if van_kampen(inst).is_zero() {
                exceptions.push(inst.walk.names(&inst.graph));
            }
        }
    }
    let shown: Vec<_> = exceptions.iter().take(3).collect();
    (exceptions.is_empty(), format!("{with_witness} walks with a transversal, {} exceptions {shown:?}", exceptions.len()))
}

fn criterion_8() -> (bool, String) {
    let run_pair = |(k, l): (Instance, Instance)| {
        let (k, l) = planewalk::ingest::overlay(&k, &l).unwrap();
        let zero = disjoinability_obstruction(&k, &l).unwrap().is_zero();
        let oracle = oracle_disjoinable(&k, &l, DEFAULT_BUDGET).unwrap();
        (zero, oracle.is_yes(), oracle == OracleVerdict::No)
    };
    let (x_zero, _, x_no) = run_pair(fixtures::pair_x());
    let (p_zero, p_yes, _) = run_pair(fixtures::pair_par());
    (
        !x_zero && x_no && p_zero && p_yes,
        format!("PAIRX nonzero {} oracle no {x_no}; PAIRPAR zero {p_zero} oracle yes {p_yes}", !x_zero),
    )
}

fn random_point(rng: &mut ChaCha8Rng) -> Point {
    let denom = [1i64, 2, 3, 4][rng.gen_range(0..4)];
    Point::new(
        Rational::new(rng.gen_range(-6i64..=6).into(), denom.into()),
        Rational::new(rng.gen_range(-6i64..=6).into(), denom.into()),
    )
}

fn random_polyline(rng: &mut ChaCha8Rng) -> RawPolyline {
    loop {
        let closed = rng.gen_bool(0.3);
        let segments = rng.gen_range(if closed { 3 } else { 1 }..=10);
        let count = if closed { segments } else { segments + 1 };
        let mut points: Vec<Point> = Vec::new();
        while points.len() < count {
            let p = random_point(rng);
            if points.last() != Some(&p) && (!closed || points.len() + 1 < count || points.first() != Some(&p)) {
                points.push(p);
            }
        }
        let poly = RawPolyline::new(points, closed);
        if arrange_polyline(&poly).is_ok() {
            return poly;
        }
    }
}

fn input_segments(poly: &RawPolyline) -> Vec<(Point, Point)> {
    let p = &poly.points;
    let mut segs: Vec<_> = p.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    if poly.closed {
        segs.push((p[p.len() - 1].clone(), p[0].clone()));
    }
    segs
}

fn check_arrangement(poly: &RawPolyline) -> Result<(), String> {
    let result = arrange_polyline(poly).map_err(|e| e.to_string())?;
    let g = &result.instance.graph;
    let coords = g.coords().ok_or("no coordinates")?;
    let edges: Vec<(Point, Point)> =
        g.edges().iter().map(|&(a, b)| (coords[a].clone(), coords[b].clone())).collect();
    for (i, (a, b)) in edges.iter().enumerate() {
        for (c, d) in &edges[i + 1..] {
            match intersect_segments(a, b, c, d) {
                SegmentIntersection::Disjoint => {}
                SegmentIntersection::Point(p) if (p == *a || p == *b) && (p == *c || p == *d) => {}
                other => return Err(format!("edges {a}-{b} and {c}-{d} meet in {other:?}")),
            }
        }
    }
    let segments = input_segments(poly);
    for (a, b) in &edges {
        if !segments.iter().any(|(p, q)| on_segment(a, p, q) && on_segment(b, p, q)) {
            return Err(format!("edge {a}-{b} lies on no input segment"));
        }
    }
    for (p, q) in &segments {
        let mut intervals: Vec<(Rational, Rational)> = edges
            .iter()
            .filter(|(a, b)| on_segment(a, p, q) && on_segment(b, p, q))
            .map(|(a, b)| {
                let (s, t) = (param_along(a, p, q), param_along(b, p, q));
                if s <= t { (s, t) } else { (t, s) }
            })
            .collect();
        intervals.sort();
        let mut reach = Rational::zero();
        for (s, t) in intervals {
            if s > reach {
                return Err(format!("segment {p}-{q} not covered at {reach}"));
            }
            reach = reach.max(t);
        }
        if reach < Rational::one() {
            return Err(format!("segment {p}-{q} covered only to {reach}"));
        }
    }
    let again = arrange_polyline(&walk_polyline(&result.instance).ok_or("no polyline")?).map_err(|e| e.to_string())?;
    if again.instance != result.instance {
        return Err("arrangement is not idempotent".into());
    }
    Ok(())
}

fn criterion_9() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    for _ in 0..100 {
        let poly = random_polyline(&mut rng);
        if let Err(e) = check_arrangement(&poly) {
            failures.push(e);
        }
    }
    let shown: Vec<_> = failures.iter().take(3).collect();
    (failures.is_empty(), format!("100 polylines, {} failures {shown:?}", failures.len()))
}

fn main() -> ExitCode {
    let build = Instant::now();
    let mut open = Vec::new();
    for g in [fixtures::xgraph(), fixtures::theta(), fixtures::triangle()] {
        open.extend(open_walks(&g, 7));
    }
    let mut closed = Vec::new();
    for g in [fixtures::xgraph(), fixtures::theta()] {
        closed.extend(closed_walks(&g, 6).into_iter().filter(|i| max_multiplicity(i) <= 4));
    }
    let windings = (3..=5).flat_map(|n| [-3, -2, -1, 1, 2, 3].map(|d| fixtures::winding(n, d))).collect();
    let corpus = Corpus { open, closed, windings };
    println!("corpus built in {:.2?}", build.elapsed());

    let results = [
        run(1, "winding table", 10, criterion_1),
        run(2, "path completeness", 300, || criterion_2(&corpus)),
        run(3, "cycle incompleteness", 1, criterion_3),
        run(4, "oracle equivalence", 600, criterion_4),
        run(5, "backend agreement", 600, || criterion_5(&corpus)),
        run(6, "derivative structure", 600, || criterion_6(&corpus)),
        run(7, "transversality implies obstruction", 600, || criterion_7(&corpus)),
        run(8, "disjoinability basics", 1, criterion_8),
        run(9, "ingestion exactness", 30, criterion_9),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i + 1).collect();
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
