//! Geometric push-off: perturb every visit of a straight-line walk by a small
//! exact offset and count crossings between the resulting segments.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geometry::{angular_cmp, dist2, dist2_point_segment, dist2_segments, intersect_segments, proper_crossing};
use crate::geometry::{rat, sqrt_lower_bound, Point, Rational, SegmentIntersection};
use crate::graph::{Instance, PlaneGraph, VertexId};
use crate::obstruction::{deleted_product, pair_product, CellParities};

/// Seeds tried, each halving the jitter scale, before giving up on general position.
pub const RETRY_BUDGET: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PushoffError {
    #[error("the geometric push-off needs a straight-line drawing")]
    NoCoordinates,
    #[error("no generic perturbation found after {attempts} seeds")]
    GenericityExhausted { attempts: u32 },
    #[error("walks must share one drawing")]
    AmbientMismatch,
}

/// A perturbation radius that keeps disjoint image features disjoint: a quarter of
/// the least distance between disjoint image edges, or between a visited vertex and
/// a non-incident image edge.
pub fn safe_jitter_bound(inst: &Instance) -> Result<Rational, PushoffError> {
    image_bound(&inst.graph, &[inst])
}

fn image_bound(graph: &PlaneGraph, walks: &[&Instance]) -> Result<Rational, PushoffError> {
    let coords = graph.coords().filter(|_| graph.is_straight_line()).ok_or(PushoffError::NoCoordinates)?;
    let mut edges: Vec<(VertexId, VertexId)> =
        walks.iter().flat_map(|w| w.step_edges()).map(|e| graph.endpoints(e)).collect();
    edges.sort();
    edges.dedup();
    let mut visited: Vec<VertexId> = walks.iter().flat_map(|w| w.walk.vertices().iter().copied()).collect();
    visited.sort();
    visited.dedup();
    let mut best: Option<Rational> = None;
    let consider = |best: &mut Option<Rational>, d: Rational| {
        if d.is_positive() && best.as_ref().is_none_or(|b| d < *b) {
            *best = Some(d);
        }
    };
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a != c && a != d && b != c && b != d {
                consider(&mut best, dist2_segments(&coords[a], &coords[b], &coords[c], &coords[d]));
            }
        }
        for &v in &visited {
            if v != a && v != b {
                consider(&mut best, dist2_point_segment(&coords[v], &coords[a], &coords[b]));
            }
        }
    }
    if best.is_none() {
        for &(a, b) in &edges {
            consider(&mut best, dist2(&coords[a], &coords[b]));
        }
    }
    let d2 = best.unwrap_or_else(|| rat(1));
    Ok(sqrt_lower_bound(&d2) / rat(4))
}

/// The perturbed polyline of a walk: one point per position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JitteredCurve {
    pub points: Vec<Point>,
    pub closed: bool,
    pub scale: Rational,
    pub seed: u32,
}

impl JitteredCurve {
    pub fn step_count(&self) -> usize {
        match (self.closed, self.points.len()) {
            (_, 0) => 0,
            (true, n) => n,
            (false, n) => n - 1,
        }
    }

    /// Endpoints of step `i` (from 1).
    pub fn segment(&self, i: usize) -> (&Point, &Point) {
        let n = self.points.len();
        (&self.points[i - 1], &self.points[if self.closed { i % n } else { i }])
    }
}

/// The first `count` primitive integer vectors, by length and then counterclockwise
/// from the positive x axis.
pub fn directions(count: usize) -> Vec<(i64, i64)> {
    let mut r = 2i64;
    loop {
        let mut dirs: Vec<(i64, i64)> = (-r..=r)
            .flat_map(|a| (-r..=r).map(move |b| (a, b)))
            .filter(|&(a, b)| a * a + b * b <= r * r && a.gcd(&b) == 1)
            .collect();
        if dirs.len() >= count + 8 {
            dirs.sort_by(|p, q| {
                (p.0 * p.0 + p.1 * p.1)
                    .cmp(&(q.0 * q.0 + q.1 * q.1))
                    .then_with(|| angular_cmp(&(rat(p.0), rat(p.1)), &(rat(q.0), rat(q.1))))
            });
            dirs.truncate(count);
            return dirs;
        }
        r *= 2;
    }
}

/// Offsets of length at most `scale`: direction `first + p` for occurrence `p`,
/// normalized by its L1 norm.
fn offsets(count: usize, first: usize, scale: &Rational) -> Vec<(Rational, Rational)> {
    directions(first + count)[first..]
        .iter()
        .map(|&(a, b)| {
            let l1 = rat(a.abs() + b.abs());
            (scale * rat(a) / &l1, scale * rat(b) / &l1)
        })
        .collect()
}

fn jitter(inst: &Instance, deltas: &[(Rational, Rational)], scale: &Rational, seed: u32) -> JitteredCurve {
    let coords = inst.graph.coords().expect("straight-line drawing");
    let points = inst
        .walk
        .vertices()
        .iter()
        .zip(deltas)
        .map(|(&v, (dx, dy))| coords[v].offset(dx, dy))
        .collect();
    JitteredCurve { points, closed: inst.walk.is_closed(), scale: scale.clone(), seed }
}

fn scale_for(bound: &Rational, seed: u32) -> Rational {
    bound / Rational::from_integer(BigInt::one() << seed)
}

/// The perturbation for one seed: scale `bound / 2^seed`, directions shifted by the seed.
pub fn build_jittered_curve(inst: &Instance, seed: u32) -> Result<JitteredCurve, PushoffError> {
    let scale = scale_for(&safe_jitter_bound(inst)?, seed);
    let deltas = offsets(inst.walk.len(), seed as usize, &scale);
    Ok(jitter(inst, &deltas, &scale, seed))
}

/// Step pairs of the curve(s) in degenerate position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenericityReport {
    pub ok: bool,
    pub violations: Vec<(usize, usize)>,
}

/// Non-adjacent segments may only cross properly; adjacent ones may only share
/// their common point.
pub fn check_genericity(curve: &JitteredCurve) -> GenericityReport {
    let m = curve.step_count();
    let mut violations = Vec::new();
    for i in 1..=m {
        let (a, b) = curve.segment(i);
        if a == b {
            violations.push((i, i));
            continue;
        }
        for j in i + 1..=m {
            let (c, d) = curve.segment(j);
            let d_ij = if curve.closed { (j - i).min(m - (j - i)) } else { j - i };
            let ok = match intersect_segments(a, b, c, d) {
                SegmentIntersection::Disjoint => true,
                SegmentIntersection::Overlap(..) => false,
                SegmentIntersection::Point(p) => {
                    if d_ij >= 2 {
                        proper_crossing(a, b, c, d)
                    } else {
                        // adjacent: the shared endpoint only
                        (b == c && p == *b) || (a == d && p == *a)
                    }
                }
            };
            if !ok {
                violations.push((i, j));
            }
        }
    }
    GenericityReport { ok: violations.is_empty(), violations }
}

fn cross_generic(k: &JitteredCurve, l: &JitteredCurve) -> bool {
    (1..=k.step_count()).all(|i| {
        let (a, b) = k.segment(i);
        (1..=l.step_count()).all(|j| {
            let (c, d) = l.segment(j);
            match intersect_segments(a, b, c, d) {
                SegmentIntersection::Disjoint => true,
                SegmentIntersection::Point(_) => proper_crossing(a, b, c, d),
                SegmentIntersection::Overlap(..) => false,
            }
        })
    })
}

fn crossing(k: &JitteredCurve, i: usize, l: &JitteredCurve, j: usize) -> bool {
    let (a, b) = k.segment(i);
    let (c, d) = l.segment(j);
    proper_crossing(a, b, c, d)
}

/// Crossing parities of the first generic perturbation over increasing seeds.
pub fn geometric_parities(inst: &Instance) -> Result<CellParities, PushoffError> {
    let complex = deleted_product(inst);
    let mut parities = CellParities::zero(&complex);
    if complex.cells().is_empty() {
        return Ok(parities);
    }
    let bound = safe_jitter_bound(inst)?;
    for seed in 0..RETRY_BUDGET {
        let scale = scale_for(&bound, seed);
        let curve = jitter(inst, &offsets(inst.walk.len(), seed as usize, &scale), &scale, seed);
        if !check_genericity(&curve).ok {
            continue;
        }
        for &cell in complex.cells() {
            if crossing(&curve, cell.a, &curve, cell.b) {
                parities.toggle(cell);
            }
        }
        return Ok(parities);
    }
    Err(PushoffError::GenericityExhausted { attempts: RETRY_BUDGET })
}

/// Crossing parities between perturbations of two walks on one drawing; the
/// second walk continues the direction sequence after the first.
pub fn geometric_pair_parities(k: &Instance, l: &Instance) -> Result<CellParities, PushoffError> {
    if k.graph != l.graph {
        return Err(PushoffError::AmbientMismatch);
    }
    let complex = pair_product(k, l);
    let mut parities = CellParities::zero(&complex);
    if complex.cells().is_empty() {
        return Ok(parities);
    }
    let bound = image_bound(&k.graph, &[k, l])?;
    for seed in 0..RETRY_BUDGET {
        let scale = scale_for(&bound, seed);
        let first = seed as usize;
        let ck = jitter(k, &offsets(k.walk.len(), first, &scale), &scale, seed);
        let cl = jitter(l, &offsets(l.walk.len(), first + k.walk.len(), &scale), &scale, seed);
        if !cross_generic(&ck, &cl) {
            continue;
        }
        for &cell in complex.cells() {
            if crossing(&ck, cell.a, &cl, cell.b) {
                parities.toggle(cell);
            }
        }
        return Ok(parities);
    }
    Err(PushoffError::GenericityExhausted { attempts: RETRY_BUDGET })
}

/// Largest displacement of a curve point from the vertex it perturbs.
pub fn max_displacement2(inst: &Instance, curve: &JitteredCurve) -> Rational {
    let coords = inst.graph.coords().expect("straight-line drawing");
    inst.walk
        .vertices()
        .iter()
        .zip(&curve.points)
        .map(|(&v, p)| dist2(&coords[v], p))
        .max()
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::ratio;
    use crate::ingest::overlay;
    use crate::obstruction::{obstruction, obstruction_with, pair_obstruction};

    #[test]
    fn bound_on_path_and_star() {
        // u0 to edge u1-u2 is the nearest pair: distance 1
        assert_eq!(safe_jitter_bound(&fixtures::path3()).unwrap(), ratio(1, 4));
        // single edge of length 2
        let (k, _) = fixtures::pair_x();
        assert_eq!(safe_jitter_bound(&k).unwrap(), ratio(1, 2));
        // c2 is at distance 3 from c0 c1; the other altitudes are longer
        assert_eq!(safe_jitter_bound(&fixtures::c3wind(1)).unwrap(), ratio(3, 4));
        assert!(safe_jitter_bound(&fixtures::xwalk()).unwrap().is_positive());
    }

    #[test]
    fn curve_stays_within_bound() {
        let inst = fixtures::xwalk();
        let bound = safe_jitter_bound(&inst).unwrap();
        for seed in 0..5 {
            let curve = build_jittered_curve(&inst, seed).unwrap();
            assert_eq!(curve.points.len(), 6);
            assert!(max_displacement2(&inst, &curve) <= &bound * &bound);
        }
    }

    #[test]
    fn xwalk_geometric_vector_matches() {
        let inst = fixtures::xwalk();
        let expected = obstruction(&inst).vector;
        let parities = geometric_parities(&inst).unwrap();
        assert_eq!(obstruction_with(&inst, parities).vector, expected);
        let wind = fixtures::c3wind(3);
        assert!(obstruction_with(&wind, geometric_parities(&wind).unwrap()).vector.is_zero());
        let path = fixtures::path3();
        assert!(geometric_parities(&path).unwrap().odd_cells().is_empty());
    }

    #[test]
    fn pair_geometric_vector_matches() {
        let (k, l) = fixtures::pair_x();
        let (k, l) = overlay(&k, &l).unwrap();
        let combinatorial = pair_obstruction(&k, &l).unwrap();
        let parities = geometric_pair_parities(&k, &l).unwrap();
        let total = parities.odd_cells().len() % 2;
        assert_eq!(total, combinatorial.parities.odd_cells().len() % 2);
    }

    #[test]
    fn directions_are_distinct_and_primitive() {
        let dirs = directions(40);
        assert_eq!(&dirs[..4], &[(1, 0), (0, 1), (-1, 0), (0, -1)]);
        let set: std::collections::BTreeSet<_> = dirs.iter().collect();
        assert_eq!(set.len(), 40);
    }

    #[test]
    fn forced_repeat_is_degenerate() {
        let inst = fixtures::backforth();
        let mut curve = build_jittered_curve(&inst, 0).unwrap();
        curve.points[3] = curve.points[1].clone();
        assert!(!check_genericity(&curve).ok);
    }

    #[test]
    fn needs_coordinates() {
        let mut inst = fixtures::xwalk();
        inst.graph = {
            let rot: Vec<Vec<usize>> = (0..inst.graph.vertex_count()).map(|v| inst.graph.rotation(v).to_vec()).collect();
            PlaneGraph::from_rotation(inst.graph.names().to_vec(), None, false, rot)
        };
        assert_eq!(geometric_parities(&inst), Err(PushoffError::NoCoordinates));
    }
}
