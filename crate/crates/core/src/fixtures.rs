//! Named fixtures with exact coordinates, addressable from the CLI and tests.

use thiserror::Error;

use crate::geometry::Point;
use crate::graph::{Instance, PlaneGraph, VertexSpec, Walk};

#[derive(Clone, Debug)]
pub enum Fixture {
    Graph(PlaneGraph),
    Instance(Instance),
    Pair(Instance, Instance),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown fixture `{0}`")]
pub struct UnknownFixture(pub String);

fn graph(vertices: &[(&str, i64, i64)], edges: &[(&str, &str)]) -> PlaneGraph {
    let specs: Vec<_> = vertices.iter().map(|&(n, x, y)| VertexSpec::at(n, x, y)).collect();
    let edges: Vec<_> = edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    PlaneGraph::build(&specs, &edges, None).expect("fixture graphs are valid")
}

fn instance(g: PlaneGraph, walk: &[&str], closed: bool) -> Instance {
    let walk = Walk::from_names(walk, closed, &g).expect("fixture walks are valid");
    Instance::new(g, walk).unwrap()
}

pub fn path3_graph() -> PlaneGraph {
    graph(
        &[("u0", 0, 0), ("u1", 1, 0), ("u2", 2, 0), ("u3", 3, 0)],
        &[("u0", "u1"), ("u1", "u2"), ("u2", "u3")],
    )
}

pub fn path3() -> Instance {
    instance(path3_graph(), &["u0", "u1", "u2", "u3"], false)
}

pub fn backforth() -> Instance {
    let g = graph(&[("u0", 0, 0), ("u1", 1, 0), ("u2", 2, 0)], &[("u0", "u1"), ("u1", "u2")]);
    instance(g, &["u0", "u1", "u2", "u1", "u0"], false)
}

pub fn star4() -> PlaneGraph {
    graph(
        &[("c", 0, 0), ("e", 2, 0), ("n", 0, 2), ("w", -2, 0), ("s", 0, -2)],
        &[("c", "e"), ("c", "n"), ("c", "w"), ("c", "s")],
    )
}

pub fn starpass() -> Instance {
    let g = graph(
        &[("c", 0, 0), ("e", 2, 0), ("w", -2, 0), ("s", 0, -2)],
        &[("c", "e"), ("c", "w"), ("c", "s")],
    );
    instance(g, &["w", "c", "e", "c", "s"], false)
}

pub fn xgraph() -> PlaneGraph {
    graph(
        &[("c", 0, 0), ("e", 2, 0), ("n", 0, 2), ("w", -2, 0), ("s", 0, -2)],
        &[("c", "e"), ("c", "n"), ("c", "w"), ("c", "s"), ("e", "n")],
    )
}

pub fn xwalk() -> Instance {
    instance(xgraph(), &["w", "c", "e", "n", "c", "s"], false)
}

pub fn triangle() -> PlaneGraph {
    graph(&[("c0", 0, 0), ("c1", 4, 0), ("c2", 2, 3)], &[("c0", "c1"), ("c1", "c2"), ("c2", "c0")])
}

/// The standard `d`-winding on the triangle; `d = 0` is the constant closed walk at `c0`.
pub fn c3wind(d: i64) -> Instance {
    winding(3, d)
}

/// A convex `n`-gon (`n >= 3`), counterclockwise. The triangle for `n = 3`, otherwise
/// points on the parabola `y = x^2`.
pub fn polygon(n: usize) -> PlaneGraph {
    assert!(n >= 3, "polygon needs at least three vertices");
    if n == 3 {
        return triangle();
    }
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let specs: Vec<_> = (0..n)
        .map(|i| VertexSpec { id: names[i].clone(), coord: Some(Point::int(i as i64, (i * i) as i64)) })
        .collect();
    let edges: Vec<_> = (0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone())).collect();
    PlaneGraph::build(&specs, &edges, None).expect("convex polygon")
}

/// The standard `d`-winding on a convex `n`-gon: counterclockwise for `d > 0`.
pub fn winding(n: usize, d: i64) -> Instance {
    let g = polygon(n);
    let order: Vec<usize> = if d >= 0 { (0..n).collect() } else { (0..n).map(|i| (n - i) % n).collect() };
    let mut raw = Vec::new();
    for _ in 0..d.unsigned_abs() {
        raw.extend(order.iter().copied());
    }
    if raw.is_empty() {
        raw.push(0);
    }
    let walk = Walk::normalize(&raw, true, &g).expect("winding walk");
    Instance::new(g, walk).unwrap()
}

pub fn theta() -> PlaneGraph {
    graph(
        &[("a", -2, 0), ("b", 2, 0), ("t", 0, 2), ("m", 0, 0), ("u", 0, -2)],
        &[("a", "t"), ("t", "b"), ("a", "m"), ("m", "b"), ("a", "u"), ("u", "b")],
    )
}

pub fn theta_cycle() -> Instance {
    instance(theta(), &["a", "t", "b", "m"], true)
}

/// Two triangles `v a b` and `v c d` sharing `v`, the second nested inside the
/// first; the closed walk runs around the outer loop and back around the inner one
/// in the opposite sense, touching itself at `v` without crossing.
pub fn nested_figure_eight() -> Instance {
    let g = graph(
        &[("v", 0, 0), ("a", 8, -2), ("b", 8, 6), ("c", 4, 0), ("d", 4, 2)],
        &[("v", "a"), ("a", "b"), ("b", "v"), ("v", "c"), ("c", "d"), ("d", "v")],
    );
    instance(g, &["v", "a", "b", "v", "d", "c"], true)
}

fn segment_instance(a: (i64, i64), b: (i64, i64)) -> Instance {
    let g = graph(&[("p", a.0, a.1), ("q", b.0, b.1)], &[("p", "q")]);
    instance(g, &["p", "q"], false)
}

pub fn pair_x() -> (Instance, Instance) {
    (segment_instance((-1, 0), (1, 0)), segment_instance((0, -1), (0, 1)))
}

pub fn pair_par() -> (Instance, Instance) {
    (segment_instance((0, 0), (1, 0)), segment_instance((0, 0), (1, 0)))
}

/// XWALK split at its self-crossing: `K = [w, c, e]`, `L = [n, c, s]` on XGRAPH.
pub fn pair_xsplit() -> (Instance, Instance) {
    (instance(xgraph(), &["w", "c", "e"], false), instance(xgraph(), &["n", "c", "s"], false))
}

/// Registry names with a one-line description.
pub fn names() -> Vec<(&'static str, &'static str)> {
    vec![
        ("PATH3", "path u0-u1-u2-u3, injective walk"),
        ("BACKFORTH", "path u0-u1-u2, walk there and back"),
        ("STAR4", "star with centre c and leaves e, n, w, s (graph only)"),
        ("STARPASS", "star without n, walk w c e c s"),
        ("XGRAPH", "STAR4 plus chord e-n (graph only)"),
        ("XWALK", "XGRAPH with walk w c e n c s"),
        ("C3WIND(d)", "standard d-winding on the triangle"),
        ("WIND(n,d)", "standard d-winding on a convex n-gon"),
        ("THETA", "theta graph a, b, t, m, u (graph only)"),
        ("THETACYCLE", "THETA with closed walk a t b m"),
        ("FIGURE8", "nested figure eight touching at one vertex"),
        ("PAIRX", "two crossing segments (pair)"),
        ("PAIRPAR", "two coincident segments (pair)"),
        ("XSPLIT", "w c e against n c s on XGRAPH (pair)"),
    ]
}

fn parse_args(name: &str, prefix: &str) -> Option<Vec<i64>> {
    let inner = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}

pub fn lookup(name: &str) -> Result<Fixture, UnknownFixture> {
    let name = name.trim();
    let fixture = match name {
        "PATH3" => Fixture::Instance(path3()),
        "BACKFORTH" => Fixture::Instance(backforth()),
        "STAR4" => Fixture::Graph(star4()),
        "STARPASS" => Fixture::Instance(starpass()),
        "XGRAPH" => Fixture::Graph(xgraph()),
        "XWALK" => Fixture::Instance(xwalk()),
        "THETA" => Fixture::Graph(theta()),
        "THETACYCLE" => Fixture::Instance(theta_cycle()),
        "FIGURE8" => Fixture::Instance(nested_figure_eight()),
        "PAIRX" => {
            let (k, l) = pair_x();
            Fixture::Pair(k, l)
        }
        "PAIRPAR" => {
            let (k, l) = pair_par();
            Fixture::Pair(k, l)
        }
        "XSPLIT" => {
            let (k, l) = pair_xsplit();
            Fixture::Pair(k, l)
        }
        _ => {
            if let Some(args) = parse_args(name, "C3WIND") {
                match args.as_slice() {
                    [d] if d.abs() <= 64 => return Ok(Fixture::Instance(c3wind(*d))),
                    _ => return Err(UnknownFixture(name.to_string())),
                }
            }
            if let Some(args) = parse_args(name, "WIND") {
                match args.as_slice() {
                    [n, d] if (3..=64).contains(n) && d.abs() <= 64 => {
                        return Ok(Fixture::Instance(winding(*n as usize, *d)))
                    }
                    _ => return Err(UnknownFixture(name.to_string())),
                }
            }
            return Err(UnknownFixture(name.to_string()));
        }
    };
    Ok(fixture)
}
