mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use planewalk::corridor::CorridorOrders;
use planewalk::derivative::{decide_approximable, derive, detect_transversal, Verdict};
use planewalk::fixtures;
use planewalk::geometry::{intersect_segments, Point, SegmentIntersection};
use planewalk::graph::{Instance, PlaneGraph, Walk};
use planewalk::ingest::{arrange_polyline, walk_polyline, RawPolyline};
use planewalk::obstruction::{crossing_parities_with, obstruction, obstruction_with, Attribution};
use planewalk::oracle::{oracle_approximable, OracleVerdict};

fn graphs() -> Vec<PlaneGraph> {
    vec![fixtures::xgraph(), fixtures::theta(), fixtures::star4(), fixtures::polygon(4)]
}

/// A walk from a start vertex and a list of turn choices.
fn walk_from(g: &PlaneGraph, start: usize, turns: &[usize], closed: bool) -> Option<Instance> {
    let mut seq = vec![start % g.vertex_count()];
    for &t in turns {
        let v = *seq.last().unwrap();
        let nbrs = g.rotation(v);
        if nbrs.is_empty() {
            break;
        }
        seq.push(nbrs[t % nbrs.len()]);
    }
    if closed {
        let last = *seq.last().unwrap();
        if seq.len() < 3 || g.edge_between(last, seq[0]).is_none() {
            return None;
        }
    }
    let walk = Walk::normalize(&seq, closed, g).ok()?;
    Instance::new(g.clone(), walk).ok()
}

fn any_walk(closed: bool) -> impl Strategy<Value = Option<Instance>> {
    (0..4usize, 0..8usize, prop::collection::vec(0..4usize, 0..8))
        .prop_map(move |(gi, start, turns)| walk_from(&graphs()[gi], start, &turns, closed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn open_walks_decided_alike_by_both_criteria(inst in any_walk(false)) {
        let inst = inst.unwrap();
        let by_derivative = decide_approximable(&inst).unwrap().approximable;
        let by_obstruction = planewalk::decide_by_obstruction(&inst).approximable;
        prop_assert_eq!(by_derivative, by_obstruction);
    }

    #[test]
    fn oracle_matches_derivative(inst in any_walk(false), closed in any_walk(true)) {
        for inst in std::iter::once(inst).chain(std::iter::once(closed)).flatten() {
            if common::max_multiplicity(&inst) > 4 {
                continue;
            }
            let expected = decide_approximable(&inst).unwrap().approximable;
            let got = match oracle_approximable(&inst, 1_000_000) {
                OracleVerdict::Yes(_) => Verdict::Yes,
                OracleVerdict::No => Verdict::No,
                OracleVerdict::BudgetExceeded { .. } => continue,
            };
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn approximable_walks_have_zero_obstruction(inst in any_walk(true)) {
        if let Some(inst) = inst {
            if decide_approximable(&inst).unwrap().approximable == Verdict::Yes {
                prop_assert!(planewalk::van_kampen(&inst).is_zero());
            }
        }
    }

    #[test]
    fn derivatives_stay_planar_and_normalized(inst in any_walk(false)) {
        let inst = inst.unwrap();
        if detect_transversal(&inst).is_none() {
            let d = derive(&inst).unwrap();
            prop_assert_eq!(d.graph.trace_faces().max_genus(), 0);
            let again = Walk::normalize(d.walk.vertices(), d.walk.is_closed(), &d.graph);
            if !d.walk.is_empty() {
                prop_assert_eq!(again.unwrap(), d.walk.clone());
            }
            prop_assert!(d.step_count() <= inst.step_count());
        }
    }

    #[test]
    fn obstruction_independent_of_push_off(inst in any_walk(false), seed in 0u64..1000) {
        let inst = inst.unwrap();
        let canonical = obstruction(&inst).vector;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let orders = CorridorOrders::shuffled(&[&inst], &mut rng);
        for attribution in [Attribution::OutSteps, Attribution::InSteps] {
            let parities = crossing_parities_with(&inst, &orders, attribution);
            prop_assert_eq!(&obstruction_with(&inst, parities).vector, &canonical);
        }
    }

    #[test]
    fn normalization_is_idempotent(inst in any_walk(false)) {
        let inst = inst.unwrap();
        let again = Walk::normalize(inst.walk.vertices(), false, &inst.graph).unwrap();
        prop_assert_eq!(again, inst.walk.clone());
    }

    #[test]
    fn face_lengths_sum_to_twice_the_edges(inst in any_walk(false)) {
        let inst = inst.unwrap();
        let image = inst.image_subgraph();
        let faces = image.trace_faces();
        prop_assert_eq!(faces.faces.iter().map(Vec::len).sum::<usize>(), 2 * image.edge_count());
        prop_assert_eq!(faces.max_genus(), 0);
    }

    #[test]
    fn segment_intersection_is_symmetric(c in prop::collection::vec(-4i64..=4, 8)) {
        let p = |i: usize| Point::int(c[i], c[i + 1]);
        let (a, b, x, y) = (p(0), p(2), p(4), p(6));
        prop_assume!(a != b && x != y);
        let one = intersect_segments(&a, &b, &x, &y);
        let other = intersect_segments(&x, &y, &a, &b);
        prop_assert_eq!(one == SegmentIntersection::Disjoint, other == SegmentIntersection::Disjoint);
        if let (SegmentIntersection::Point(p), SegmentIntersection::Point(q)) = (&one, &other) {
            prop_assert_eq!(p, q);
        }
    }

    #[test]
    fn arrangement_round_trips(pts in prop::collection::vec((-3i64..=3, -3i64..=3), 2..7), closed in any::<bool>()) {
        let poly = RawPolyline::from_ints(&pts, closed);
        if let Ok(first) = arrange_polyline(&poly) {
            let again = arrange_polyline(&walk_polyline(&first.instance).unwrap()).unwrap();
            prop_assert_eq!(again.instance, first.instance);
        }
    }
}
