//! Classical derived triangles: Morley, Napoleon, excentral and contact,
//! plus the incircle, excircle and circumradius helpers they rely on.
//!
//! Every construction labels its output so that the vertex named X sits
//! across from (or on) the reference side opposite X.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::{angles_of, line_intersection, Label, LabeledTriangle, Point};

/// Inner Napoleon triangles with sides shorter than this fraction of the
/// reference's longest side are reported as collapsed.
pub const NAPOLEON_COLLAPSE_THRESHOLD: f64 = 1e-6;

/// `+1` when `p` lies to the left of the directed line `from → to`.
fn side_sign(from: Point, to: Point, p: Point) -> f64 {
    if (to - from).cross(p - from) > 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Morley triangle: intersections of adjacent internal angle trisectors.
///
/// The vertex labeled A is the one near side BC, where the trisectors from B
/// and C nearest to BC meet; likewise for B and C.
pub fn morley(t: &LabeledTriangle) -> Result<LabeledTriangle> {
    let angles = angles_of(t).as_array();
    let v = t.vertices();
    let corner = |i: usize| -> Result<Point> {
        let (p, q, other) = (v[(i + 1) % 3], v[(i + 2) % 3], v[i]);
        let (ap, aq) = (angles[(i + 1) % 3], angles[(i + 2) % 3]);
        let s = side_sign(p, q, other);
        line_intersection(
            p,
            (q - p).angle() + s * ap / 3.0,
            q,
            (p - q).angle() - s * aq / 3.0,
        )
    };
    LabeledTriangle::new(corner(0)?, corner(1)?, corner(2)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NapoleonKind {
    Outer,
    Inner,
}

/// Centroid of the equilateral triangle erected on `p → q`, on the side away
/// from `other` when `outward`.
fn erected_center(p: Point, q: Point, other: Point, outward: bool) -> Point {
    let d = q - p;
    let normal = Point::new(-d.y, d.x) * (1.0 / d.norm());
    let toward_other = if normal.dot(other - p.midpoint(q)) > 0.0 {
        1.0
    } else {
        -1.0
    };
    let sign = if outward { -toward_other } else { toward_other };
    p.midpoint(q) + normal * (sign * d.norm() / (2.0 * 3f64.sqrt()))
}

/// Napoleon triangle: centers of the equilateral triangles erected on the
/// sides. Vertex A is the center of the one on BC.
///
/// The inner triangle of an equilateral reference collapses to a point; that
/// case (and anything within [`NAPOLEON_COLLAPSE_THRESHOLD`] of it) returns
/// [`Error::DegenerateOutput`].
pub fn napoleon(t: &LabeledTriangle, kind: NapoleonKind) -> Result<LabeledTriangle> {
    let [a, b, c] = t.vertices();
    let outward = kind == NapoleonKind::Outer;
    let n = [
        erected_center(b, c, a, outward),
        erected_center(c, a, b, outward),
        erected_center(a, b, c, outward),
    ];
    let longest = t.side_lengths().into_iter().fold(0.0, f64::max);
    let shortest = [
        n[0].distance(n[1]),
        n[1].distance(n[2]),
        n[2].distance(n[0]),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min);
    if shortest < NAPOLEON_COLLAPSE_THRESHOLD * longest {
        return Err(Error::DegenerateOutput);
    }
    LabeledTriangle::new(n[0], n[1], n[2]).map_err(|_| Error::DegenerateOutput)
}

pub fn incenter(t: &LabeledTriangle) -> Point {
    let [a, b, c] = t.vertices();
    let [la, lb, lc] = t.side_lengths();
    (a * la + b * lb + c * lc) * (1.0 / (la + lb + lc))
}

pub fn inradius(t: &LabeledTriangle) -> f64 {
    2.0 * t.area() / t.perimeter()
}

/// Center of the excircle opposite `label`, from signed barycentrics
/// `(-a : b : c)` and cyclic.
pub fn excenter(t: &LabeledTriangle, label: Label) -> Point {
    let v = t.vertices();
    let mut w = t.side_lengths();
    w[label.index()] = -w[label.index()];
    let total: f64 = w.iter().sum();
    (v[0] * w[0] + v[1] * w[1] + v[2] * w[2]) * (1.0 / total)
}

/// Triangle of the three excenters; vertex A is the excenter opposite A.
pub fn excentral(t: &LabeledTriangle) -> Result<LabeledTriangle> {
    let [a, b, c] = Label::ALL.map(|l| excenter(t, l));
    LabeledTriangle::new(a, b, c)
}

/// Touch points of the incircle; vertex A is the one on side BC.
pub fn contact(t: &LabeledTriangle) -> Result<LabeledTriangle> {
    let [a, b, c] = t.vertices();
    let [la, lb, lc] = t.side_lengths();
    let s = 0.5 * (la + lb + lc);
    let along = |from: Point, to: Point, len: f64, dist: f64| from + (to - from) * (dist / len);
    LabeledTriangle::new(
        along(b, c, la, s - lb),
        along(c, a, lb, s - lc),
        along(a, b, lc, s - la),
    )
}

/// Unit internal and external angle bisector directions at `label`.
pub fn bisector_directions(t: &LabeledTriangle, label: Label) -> (Point, Point) {
    let v = t.vertices();
    let i = label.index();
    let p = v[i];
    let u = v[(i + 1) % 3] - p;
    let w = v[(i + 2) % 3] - p;
    let (u, w) = (u * (1.0 / u.norm()), w * (1.0 / w.norm()));
    let internal = u + w;
    let external = u - w;
    (
        internal * (1.0 / internal.norm()),
        external * (1.0 / external.norm()),
    )
}

/// Distance from `p` to the line through `q1` and `q2`.
pub fn distance_to_line(p: Point, q1: Point, q2: Point) -> f64 {
    let d = q2 - q1;
    (d.cross(p - q1) / d.norm()).abs()
}

/// Triangle area from side lengths (Heron's formula in Kahan's
/// cancellation-free arrangement).
pub fn heron_area(a: f64, b: f64, c: f64) -> Result<f64> {
    if ![a, b, c].iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.total_cmp(x));
    let [x, y, z] = s;
    if z <= 0.0 || x >= y + z {
        return Err(Error::TriangleInequalityViolation(a, b, c));
    }
    let prod = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    Ok(0.25 * prod.sqrt())
}

/// `R = abc / (4·Area)` with the area from Heron's formula.
pub fn circumradius_from_sides(a: f64, b: f64, c: f64) -> Result<f64> {
    let area = heron_area(a, b, c)?;
    Ok(a * b * c / (4.0 * area))
}
