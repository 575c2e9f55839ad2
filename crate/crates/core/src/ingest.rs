//! Raw polylines to plane-graph instances via an exact segment arrangement, and the
//! JSON input documents.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value;
use thiserror::Error;

use crate::fixtures::{self, Fixture};
use crate::geometry::{self, parse_rational, Point, Rational, SegmentIntersection};
use crate::graph::{GraphError, Instance, PlaneGraph, VertexSpec, Walk};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("polyline has fewer than two distinct points")]
    ZeroLengthInput,
    #[error("closed polyline has fewer than three distinct points")]
    DegenerateClosed,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("semantic error: {0}")]
    Graph(#[from] GraphError),
    #[error("instances do not share a common arrangement")]
    AmbientMismatch,
}

/// A polygonal line with exact vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPolyline {
    pub points: Vec<Point>,
    pub closed: bool,
}

impl RawPolyline {
    pub fn new(points: Vec<Point>, closed: bool) -> Self {
        RawPolyline { points, closed }
    }

    pub fn from_ints(points: &[(i64, i64)], closed: bool) -> Self {
        RawPolyline::new(points.iter().map(|&(x, y)| Point::int(x, y)).collect(), closed)
    }

    /// Drops repeated consecutive points (and a closing repeat of the first point).
    fn cleaned(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = Vec::with_capacity(self.points.len());
        for p in &self.points {
            if pts.last() != Some(p) {
                pts.push(p.clone());
            }
        }
        if self.closed {
            while pts.len() > 1 && pts.first() == pts.last() {
                pts.pop();
            }
        }
        pts
    }

    fn segments(points: &[Point], closed: bool) -> Vec<(Point, Point)> {
        let mut segs: Vec<_> = points.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        if closed && points.len() >= 2 {
            segs.push((points[points.len() - 1].clone(), points[0].clone()));
        }
        segs
    }
}

/// Where a walk step came from: an input segment and the parameter interval on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepProvenance {
    pub segment: usize,
    pub from: Rational,
    pub to: Rational,
}

#[derive(Clone, Debug)]
pub struct ArrangementResult {
    pub instance: Instance,
    pub provenance: Vec<StepProvenance>,
}

/// Builds the exact arrangement of one polyline and re-expresses it as a walk.
pub fn arrange_polyline(poly: &RawPolyline) -> Result<ArrangementResult, IngestError> {
    let cleaned = poly.cleaned();
    if poly.closed && cleaned.len() < 3 {
        return Err(if cleaned.len() < 2 { IngestError::ZeroLengthInput } else { IngestError::DegenerateClosed });
    }
    if cleaned.len() < 2 {
        return Err(IngestError::ZeroLengthInput);
    }
    let (graph, mut walks) = arrange_polylines(std::slice::from_ref(poly))?;
    let (walk, provenance) = walks.pop().unwrap();
    Ok(ArrangementResult { instance: Instance::new(graph, walk)?, provenance })
}

/// Arranges several polylines in one plane graph. Single-point open polylines are
/// allowed here and become constant walks.
pub fn arrange_polylines(polys: &[RawPolyline]) -> Result<(PlaneGraph, Vec<(Walk, Vec<StepProvenance>)>), IngestError> {
    let cleaned: Vec<Vec<Point>> = polys.iter().map(RawPolyline::cleaned).collect();
    let mut segments = Vec::new();
    for (k, pts) in cleaned.iter().enumerate() {
        if pts.is_empty() {
            return Err(IngestError::ZeroLengthInput);
        }
        if polys[k].closed && pts.len() == 2 {
            return Err(IngestError::DegenerateClosed);
        }
        segments.push(RawPolyline::segments(pts, polys[k].closed));
    }

    let mut vertices: BTreeSet<Point> = cleaned.iter().flatten().cloned().collect();
    let all: Vec<&(Point, Point)> = segments.iter().flatten().collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            match geometry::intersect_segments(&all[i].0, &all[i].1, &all[j].0, &all[j].1) {
                SegmentIntersection::Disjoint => {}
                SegmentIntersection::Point(p) => {
                    vertices.insert(p);
                }
                SegmentIntersection::Overlap(p, q) => {
                    vertices.insert(p);
                    vertices.insert(q);
                }
            }
        }
    }
    let vertices: Vec<Point> = vertices.into_iter().collect();
    let id_of: BTreeMap<&Point, usize> = vertices.iter().zip(0..).collect();

    // split every segment at the arrangement vertices it contains
    let split = |a: &Point, b: &Point| -> Vec<(Rational, usize)> {
        let mut on: Vec<(Rational, usize)> = vertices
            .iter()
            .enumerate()
            .filter(|(_, p)| geometry::on_segment(p, a, b))
            .map(|(i, p)| (geometry::param_along(p, a, b), i))
            .collect();
        on.sort();
        on
    };

    let mut edges = BTreeSet::new();
    let mut walks = Vec::new();
    for (k, segs) in segments.iter().enumerate() {
        let mut seq = vec![id_of[&cleaned[k][0]]];
        let mut provenance = Vec::new();
        for (s, (a, b)) in segs.iter().enumerate() {
            let pieces = split(a, b);
            for w in pieces.windows(2) {
                let (u, v) = (w[0].1, w[1].1);
                edges.insert((u.min(v), u.max(v)));
                seq.push(v);
                provenance.push(StepProvenance { segment: s, from: w[0].0.clone(), to: w[1].0.clone() });
            }
        }
        if polys[k].closed {
            seq.pop();
        }
        walks.push((seq, provenance));
    }

    let specs: Vec<VertexSpec> = vertices
        .iter()
        .enumerate()
        .map(|(i, p)| VertexSpec { id: format!("v{i}"), coord: Some(p.clone()) })
        .collect();
    let edge_names: Vec<(String, String)> = edges.iter().map(|&(u, v)| (format!("v{u}"), format!("v{v}"))).collect();
    let graph = PlaneGraph::build(&specs, &edge_names, None)?;
    let walks = walks
        .into_iter()
        .zip(polys)
        .map(|((seq, prov), poly)| {
            let walk = Walk::collapsed(&seq, poly.closed);
            debug_assert_eq!(walk.step_count(), prov.len());
            walk.check_adjacency(&graph).map(|_| (walk, prov))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((graph, walks))
}

/// The drawn image of an instance's walk as a polyline (straight-line graphs only).
pub fn walk_polyline(inst: &Instance) -> Option<RawPolyline> {
    if !inst.graph.is_straight_line() || inst.walk.is_empty() {
        return None;
    }
    let pts = inst.walk.vertices().iter().map(|&v| inst.graph.coord(v).unwrap().clone()).collect();
    Some(RawPolyline::new(pts, inst.walk.is_closed()))
}

/// Expresses two instances in one common plane graph.
///
/// Instances with coordinates are overlaid by arranging both drawn walks together;
/// purely combinatorial instances must already share their graph.
pub fn overlay(k: &Instance, l: &Instance) -> Result<(Instance, Instance), IngestError> {
    if k.graph == l.graph {
        return Ok((k.clone(), l.clone()));
    }
    match (walk_polyline(k), walk_polyline(l)) {
        (Some(pk), Some(pl)) => {
            let (graph, mut walks) = arrange_polylines(&[pk, pl])?;
            let (wl, _) = walks.pop().unwrap();
            let (wk, _) = walks.pop().unwrap();
            Ok((Instance::new(graph.clone(), wk)?, Instance::new(graph, wl)?))
        }
        _ => Err(IngestError::AmbientMismatch),
    }
}

/// A parsed input document.
#[derive(Clone, Debug)]
pub enum Document {
    Instance(Instance),
    Polyline(RawPolyline),
    Pair(Box<Document>, Box<Document>),
}

impl Document {
    /// Resolves to an instance, arranging raw polylines.
    pub fn into_instance(self) -> Result<Instance, IngestError> {
        match self {
            Document::Instance(inst) => Ok(inst),
            Document::Polyline(poly) => Ok(arrange_polyline(&poly)?.instance),
            Document::Pair(..) => Err(IngestError::Semantic("expected a single instance, found a pair".into())),
        }
    }

    /// Resolves to a pair of instances living in one common plane graph.
    pub fn into_pair(self) -> Result<(Instance, Instance), IngestError> {
        match self {
            Document::Pair(k, l) => match (*k, *l) {
                (Document::Polyline(pk), Document::Polyline(pl)) => {
                    let (graph, mut walks) = arrange_polylines(&[pk, pl])?;
                    let (wl, _) = walks.pop().unwrap();
                    let (wk, _) = walks.pop().unwrap();
                    Ok((Instance::new(graph.clone(), wk)?, Instance::new(graph, wl)?))
                }
                (k, l) => overlay(&k.into_instance()?, &l.into_instance()?),
            },
            _ => Err(IngestError::Semantic("expected a pair document with keys K and L".into())),
        }
    }
}

/// Parses an instance, polyline, fixture or pair document.
pub fn parse_document(bytes: &[u8]) -> Result<Document, IngestError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| IngestError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    document_from_value(&value)
}

/// Parses a single-instance document: either a ready instance or a raw polyline.
pub fn parse_instance(bytes: &[u8]) -> Result<Document, IngestError> {
    match parse_document(bytes)? {
        Document::Pair(..) => Err(IngestError::Semantic("expected a single instance, found a pair".into())),
        doc => Ok(doc),
    }
}

fn semantic<T>(msg: impl Into<String>) -> Result<T, IngestError> {
    Err(IngestError::Semantic(msg.into()))
}

fn document_from_value(value: &Value) -> Result<Document, IngestError> {
    let obj = match value.as_object() {
        Some(o) => o,
        None => return semantic("document must be a JSON object"),
    };
    if let (Some(k), Some(l)) = (obj.get("K"), obj.get("L")) {
        return Ok(Document::Pair(Box::new(document_from_value(k)?), Box::new(document_from_value(l)?)));
    }
    if let Some(name) = obj.get("fixture") {
        let name = match name.as_str() {
            Some(n) => n,
            None => return semantic("`fixture` must be a string"),
        };
        return match fixtures::lookup(name) {
            Ok(Fixture::Instance(inst)) => Ok(Document::Instance(inst)),
            Ok(Fixture::Pair(k, l)) => {
                Ok(Document::Pair(Box::new(Document::Instance(k)), Box::new(Document::Instance(l))))
            }
            Ok(Fixture::Graph(_)) => semantic(format!("fixture `{name}` is a graph without a walk")),
            Err(e) => semantic(e.to_string()),
        };
    }
    if let Some(poly) = obj.get("polyline") {
        return Ok(Document::Polyline(polyline_from_value(poly)?));
    }
    if let Some(graph) = obj.get("graph") {
        let graph = graph_from_value(graph)?;
        let walk = match obj.get("walk") {
            Some(w) => w,
            None => return semantic("graph document needs a `walk`"),
        };
        let closed = walk.get("closed").and_then(Value::as_bool).unwrap_or(false);
        let ids = match walk.get("vertices").and_then(Value::as_array) {
            Some(ids) => ids,
            None => return semantic("`walk.vertices` must be an array of vertex ids"),
        };
        let names = ids
            .iter()
            .map(|v| v.as_str().ok_or_else(|| IngestError::Semantic("walk vertex ids must be strings".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let walk = Walk::from_names(&names, closed, &graph)?;
        return Ok(Document::Instance(Instance::new(graph, walk)?));
    }
    semantic("expected one of `fixture`, `polyline`, `graph`, or a `K`/`L` pair")
}

fn rational_from_value(v: &Value) -> Result<Rational, IngestError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return semantic(format!("expected a rational number, found {v}")),
    };
    parse_rational(&text).ok_or_else(|| IngestError::Semantic(format!("invalid rational `{text}`")))
}

fn point_from_value(v: &Value) -> Result<Point, IngestError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(rational_from_value(x)?, rational_from_value(y)?)),
        _ => semantic(format!("expected a point [x, y], found {v}")),
    }
}

fn polyline_from_value(v: &Value) -> Result<RawPolyline, IngestError> {
    let closed = v.get("closed").and_then(Value::as_bool).unwrap_or(false);
    let points = match v.get("points").and_then(Value::as_array) {
        Some(p) => p.iter().map(point_from_value).collect::<Result<Vec<_>, _>>()?,
        None => return semantic("`polyline.points` must be an array"),
    };
    Ok(RawPolyline::new(points, closed))
}

fn graph_from_value(v: &Value) -> Result<PlaneGraph, IngestError> {
    let vertices = match v.get("vertices").and_then(Value::as_array) {
        Some(vs) => vs,
        None => return semantic("`graph.vertices` must be an array"),
    };
    let mut specs = Vec::with_capacity(vertices.len());
    for vertex in vertices {
        let id = match vertex.get("id").and_then(Value::as_str) {
            Some(id) => id.to_string(),
            None => return semantic("every vertex needs a string `id`"),
        };
        let coord = match (vertex.get("x"), vertex.get("y")) {
            (Some(x), Some(y)) => Some(Point::new(rational_from_value(x)?, rational_from_value(y)?)),
            (None, None) => None,
            _ => return semantic(format!("vertex `{id}` has only one coordinate")),
        };
        specs.push(VertexSpec { id, coord });
    }
    let edges = match v.get("edges").and_then(Value::as_array) {
        Some(es) => es
            .iter()
            .map(|e| match e.as_array().map(Vec::as_slice) {
                Some([Value::String(a), Value::String(b)]) => Ok((a.clone(), b.clone())),
                _ => semantic(format!("edge must be a pair of vertex ids, found {e}")),
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => return semantic("`graph.edges` must be an array"),
    };
    let rotation = match v.get("rotations") {
        None => None,
        Some(Value::Object(map)) => {
            let mut rot = BTreeMap::new();
            for (id, entries) in map {
                let entries = match entries.as_array() {
                    Some(e) => e,
                    None => return semantic(format!("rotation at `{id}` must be an array")),
                };
                let nbrs = entries
                    .iter()
                    .map(|entry| rotation_neighbour(id, entry, &edges))
                    .collect::<Result<Vec<_>, _>>()?;
                rot.insert(id.clone(), nbrs);
            }
            Some(rot)
        }
        Some(_) => return semantic("`graph.rotations` must be an object"),
    };
    Ok(PlaneGraph::build(&specs, &edges, rotation.as_ref())?)
}

/// Rotation entries name an incident edge by index into `edges`, by an id pair, or
/// by the neighbour's id.
fn rotation_neighbour(id: &str, entry: &Value, edges: &[(String, String)]) -> Result<String, IngestError> {
    let (a, b) = match entry {
        Value::Number(n) => {
            let idx = n.as_u64().and_then(|i| edges.get(i as usize));
            match idx {
                Some(e) => e.clone(),
                None => return semantic(format!("rotation at `{id}` names a missing edge {n}")),
            }
        }
        Value::Array(pair) => match pair.as_slice() {
            [Value::String(a), Value::String(b)] => (a.clone(), b.clone()),
            _ => return semantic(format!("rotation entry {entry} is not an id pair")),
        },
        Value::String(nbr) => (id.to_string(), nbr.clone()),
        _ => return semantic(format!("rotation entry {entry} is not an edge")),
    };
    if a == id {
        Ok(b)
    } else if b == id {
        Ok(a)
    } else {
        semantic(format!("rotation at `{id}` lists edge {a}{b} that is not incident"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    fn coords_of_walk(inst: &Instance) -> Vec<Point> {
        inst.walk.vertices().iter().map(|&v| inst.graph.coord(v).unwrap().clone()).collect()
    }

    #[test]
    fn crossing_polyline_gets_degree_four_vertex() {
        let poly = RawPolyline::from_ints(&[(0, 0), (2, 0), (1, 1), (1, -1)], false);
        let res = arrange_polyline(&poly).unwrap();
        let g = &res.instance.graph;
        let center = (0..g.vertex_count()).find(|&v| g.coord(v) == Some(&Point::int(1, 0))).unwrap();
        assert_eq!(g.degree(center), 4);
        let visits = res.instance.walk.vertices().iter().filter(|&&v| v == center).count();
        assert_eq!(visits, 2);
        assert_eq!(res.provenance.len(), res.instance.step_count());
    }

    #[test]
    fn backtracking_overlap_is_split() {
        let poly = RawPolyline::from_ints(&[(0, 0), (3, 0), (1, 0)], false);
        let res = arrange_polyline(&poly).unwrap();
        assert_eq!(res.instance.graph.edge_count(), 2);
        assert_eq!(
            coords_of_walk(&res.instance),
            vec![Point::int(0, 0), Point::int(1, 0), Point::int(3, 0), Point::int(1, 0)]
        );
        assert_eq!(res.provenance[0], StepProvenance { segment: 0, from: ratio(0, 1), to: ratio(1, 3) });
        assert_eq!(res.provenance[2], StepProvenance { segment: 1, from: ratio(0, 1), to: ratio(1, 1) });
    }

    #[test]
    fn simple_triangle_is_one_traversal() {
        let poly = RawPolyline::from_ints(&[(0, 0), (4, 0), (2, 3), (0, 0)], true);
        let res = arrange_polyline(&poly).unwrap();
        assert_eq!(res.instance.graph.edge_count(), 3);
        assert_eq!(res.instance.step_count(), 3);
        assert!(res.instance.walk.is_injective());
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let poly = RawPolyline::from_ints(&[(1, 1), (1, 1)], false);
        assert_eq!(arrange_polyline(&poly).unwrap_err(), IngestError::ZeroLengthInput);
        let poly = RawPolyline::from_ints(&[(0, 0), (1, 1), (0, 0)], true);
        assert_eq!(arrange_polyline(&poly).unwrap_err(), IngestError::DegenerateClosed);
    }

    #[test]
    fn parses_fixture_and_polyline_documents() {
        let doc = parse_instance(br#"{"fixture": "XWALK"}"#).unwrap().into_instance().unwrap();
        assert_eq!(doc.walk.names(&doc.graph), vec!["w", "c", "e", "n", "c", "s"]);
        let doc = parse_instance(br#"{"polyline": {"closed": false, "points": [[0,0],["3",0],["2/2", 0.0]]}}"#)
            .unwrap()
            .into_instance()
            .unwrap();
        assert_eq!(doc.step_count(), 3);
    }

    #[test]
    fn parses_graph_documents() {
        let text = br#"{
            "graph": {
                "vertices": [{"id": "c"}, {"id": "e"}, {"id": "n"}, {"id": "w"}, {"id": "s"}],
                "edges": [["c","e"], ["c","n"], ["c","w"], ["c","s"], ["e","n"]],
                "rotations": {"c": [0, ["c","n"], "w", 3]}
            },
            "walk": {"closed": false, "vertices": ["w","c","e","n","c","s"]}
        }"#;
        let inst = parse_instance(text).unwrap().into_instance().unwrap();
        let c = inst.graph.vertex_by_name("c").unwrap();
        assert_eq!(inst.graph.rotation(c).len(), 4);
        assert!(inst.graph.coords().is_none());
    }

    #[test]
    fn reports_errors_with_locations() {
        match parse_document(b"{\n  \"fixture\": ") {
            Err(IngestError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let text = br#"{"graph": {"vertices": [{"id":"a"},{"id":"b"}], "edges": [["a","b"]]},
                        "walk": {"vertices": ["a","z"]}}"#;
        assert!(matches!(parse_instance(text), Err(IngestError::Graph(GraphError::UnknownVertex(_)))));
        assert!(matches!(parse_instance(br#"{"fixture": "STAR4"}"#), Err(IngestError::Semantic(_))));
    }

    #[test]
    fn pair_documents_share_one_graph() {
        let (k, l) = parse_document(br#"{"fixture": "PAIRX"}"#).unwrap().into_pair().unwrap();
        assert_eq!(k.graph, l.graph);
        assert_eq!(k.graph.vertex_count(), 5);
        assert_eq!((k.step_count(), l.step_count()), (2, 2));
    }
}
