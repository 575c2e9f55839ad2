//! Exact rational points and the handful of predicates the rest of the crate needs.
//!
//! Everything here is exact: no floating point, no epsilon. Orientation tests are
//! signs of cross products, angular order uses a half-plane split plus a cross
//! product, and distances are carried squared.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A point in the plane with exact coordinates. Ordered lexicographically by `x`, then `y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    pub fn sub(&self, other: &Point) -> (Rational, Rational) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let two = rat(2);
        Point::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        Point::new(
            &self.x + t * (&other.x - &self.x),
            &self.y + t * (&other.y - &self.y),
        )
    }

    pub fn offset(&self, dx: &Rational, dy: &Rational) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of triangle `a b c`; positive when `a b c` turns counterclockwise.
pub fn cross(a: &Point, b: &Point, c: &Point) -> Rational {
    let (ux, uy) = b.sub(a);
    let (vx, vy) = c.sub(a);
    ux * vy - uy * vx
}

pub fn orientation(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(a, b, c).cmp(&Rational::zero())
}

fn dot(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    &a.0 * &b.0 + &a.1 * &b.1
}

/// `p` lies on the closed segment `a b`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if !cross(a, b, p).is_zero() {
        return false;
    }
    let lo_x = a.x.clone().min(b.x.clone());
    let hi_x = a.x.clone().max(b.x.clone());
    let lo_y = a.y.clone().min(b.y.clone());
    let hi_y = a.y.clone().max(b.y.clone());
    lo_x <= p.x && p.x <= hi_x && lo_y <= p.y && p.y <= hi_y
}

/// `p` lies on segment `a b` and is neither endpoint.
pub fn in_segment_interior(p: &Point, a: &Point, b: &Point) -> bool {
    p != a && p != b && on_segment(p, a, b)
}

/// Parameter of `p` along `a b`, assuming `p` lies on the line through them.
pub fn param_along(p: &Point, a: &Point, b: &Point) -> Rational {
    let d = b.sub(a);
    let v = p.sub(a);
    dot(&v, &d) / dot(&d, &d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentIntersection {
    Disjoint,
    Point(Point),
    Overlap(Point, Point),
}

/// Intersection of closed segments `a b` and `c d` (both of positive length).
pub fn intersect_segments(a: &Point, b: &Point, c: &Point, d: &Point) -> SegmentIntersection {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = &r.0 * &s.1 - &r.1 * &s.0;
    let ca = c.sub(a);
    if denom.is_zero() {
        // parallel
        if !cross(a, b, c).is_zero() {
            return SegmentIntersection::Disjoint;
        }
        let rr = dot(&r, &r);
        let t0 = dot(&ca, &r) / &rr;
        let t1 = dot(&d.sub(a), &r) / &rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = lo.max(Rational::zero());
        let hi = hi.min(Rational::one());
        return match lo.cmp(&hi) {
            Ordering::Greater => SegmentIntersection::Disjoint,
            Ordering::Equal => SegmentIntersection::Point(a.lerp(b, &lo)),
            Ordering::Less => SegmentIntersection::Overlap(a.lerp(b, &lo), a.lerp(b, &hi)),
        };
    }
    let t = (&ca.0 * &s.1 - &ca.1 * &s.0) / &denom;
    let u = (&ca.0 * &r.1 - &ca.1 * &r.0) / &denom;
    let unit = Rational::zero()..=Rational::one();
    if unit.contains(&t) && unit.contains(&u) {
        SegmentIntersection::Point(a.lerp(b, &t))
    } else {
        SegmentIntersection::Disjoint
    }
}

/// The open segments `a b` and `c d` cross at a single point interior to both, with
/// no endpoint of one lying on the other.
pub fn proper_crossing(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
        && o1 != o2
        && o3 != o4
}

pub fn dist2(a: &Point, b: &Point) -> Rational {
    let d = b.sub(a);
    dot(&d, &d)
}

/// Squared distance from `p` to the closed segment `a b`.
pub fn dist2_point_segment(p: &Point, a: &Point, b: &Point) -> Rational {
    let d = b.sub(a);
    let len2 = dot(&d, &d);
    if len2.is_zero() {
        return dist2(p, a);
    }
    let t = dot(&p.sub(a), &d) / &len2;
    let t = t.max(Rational::zero()).min(Rational::one());
    dist2(p, &a.lerp(b, &t))
}

/// Squared distance between closed segments `a b` and `c d`.
pub fn dist2_segments(a: &Point, b: &Point, c: &Point, d: &Point) -> Rational {
    if intersect_segments(a, b, c, d) != SegmentIntersection::Disjoint {
        return Rational::zero();
    }
    [
        dist2_point_segment(a, c, d),
        dist2_point_segment(b, c, d),
        dist2_point_segment(c, a, b),
        dist2_point_segment(d, a, b),
    ]
    .into_iter()
    .min()
    .expect("four candidates")
}

/// A rational `q` with `0 <= q <= sqrt(r)`, exact when `r` is the square of a rational.
pub fn sqrt_lower_bound(r: &Rational) -> Rational {
    assert!(!r.is_negative(), "square root of a negative number");
    let n = r.numer();
    let d = r.denom();
    let (ns, ds) = (n.sqrt(), d.sqrt());
    if &(&ns * &ns) == n && &(&ds * &ds) == d {
        return Rational::new(ns, ds);
    }
    // sqrt(n/d) = sqrt(n*d)/d >= floor(sqrt(n*d*4^k)) / (d*2^k)
    let scale = BigInt::one() << 40u32;
    let root = (n * d * &scale * &scale).sqrt();
    Rational::new(root, d * scale)
}

fn upper_half(dx: &Rational, dy: &Rational) -> bool {
    dy.is_positive() || (dy.is_zero() && dx.is_positive())
}

/// Counterclockwise angular order of direction vectors, starting at the positive x axis.
pub fn angular_cmp(a: &(Rational, Rational), b: &(Rational, Rational)) -> Ordering {
    let ha = upper_half(&a.0, &a.1);
    let hb = upper_half(&b.0, &b.1);
    if ha != hb {
        return if ha { Ordering::Less } else { Ordering::Greater };
    }
    let c = &a.0 * &b.1 - &a.1 * &b.0;
    // a before b when b is counterclockwise of a
    Rational::zero().cmp(&c)
}

/// Twice the signed area of the closed polygon through `points`.
pub fn signed_area2(points: &[Point]) -> Rational {
    let n = points.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let p = &points[i];
        let q = &points[(i + 1) % n];
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

/// Parses an integer, a terminating decimal, or a `p/q` fraction.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let ten = BigInt::from(10);
    let shift = exponent - frac_part.len() as i32;
    let mut value = Rational::from_integer(all);
    if shift >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Some(if negative { -value } else { value })
}
