//! Planar primitives: points, circles, labeled triangles and the handful of
//! constructions everything else is built from.
//!
//! Angles are radians. Angular positions on a circle are normalized to
//! `[0, 2π)`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative area threshold below which a triangle counts as degenerate:
/// `|signed area| <= DEGENERACY_THRESHOLD * longest_side²`.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Relative tolerance used when checking that a point lies on a circle.
pub const ON_CIRCLE_TOLERANCE: f64 = 1e-9;

/// Lines whose directions differ by less than this (in `|sin|`) are parallel.
pub const PARALLEL_THRESHOLD: f64 = 1e-12;

/// A point (or displacement) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    /// Panics if either coordinate is NaN or infinite; use [`Point::try_new`]
    /// for untrusted input.
    pub fn new(x: f64, y: f64) -> Self {
        Self::try_new(x, y).expect("point coordinates must be finite")
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(Error::NonFinite)
        }
    }

    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    /// Unit vector at angle `theta`.
    pub fn polar(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { x: c, y: s }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Direction angle in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Rotation by `theta` about the origin.
    pub fn rotate(self, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        Point {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point {
            x: 0.5 * (self.x + other.x),
            y: 0.5 * (self.y + other.y),
        }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point {
            x: self.x * k,
            y: self.y * k,
        }
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Self { center, radius })
    }

    /// The point at angular position `theta`.
    pub fn point_at(&self, theta: f64) -> Point {
        self.center + Point::polar(theta) * self.radius
    }

    pub fn circumference(&self) -> f64 {
        TAU * self.radius
    }

    /// Same circle up to `rel_tol` relative to the larger radius.
    pub fn approx_eq(&self, other: &Circle, rel_tol: f64) -> bool {
        let scale = self.radius.max(other.radius);
        self.center.distance(other.center) <= rel_tol * scale
            && (self.radius - other.radius).abs() <= rel_tol * scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    A,
    B,
    C,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::A, Label::B, Label::C];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::A => "A",
            Label::B => "B",
            Label::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Winding {
    CounterClockwise,
    Clockwise,
}

/// A non-degenerate triangle with vertices labeled A, B, C.
///
/// Side `a` is opposite vertex A (it joins B and C), and cyclically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Point; 3]", into = "[Point; 3]")]
pub struct LabeledTriangle {
    vertices: [Point; 3],
}

impl LabeledTriangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        for p in [a, b, c] {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        let longest = a.distance(b).max(b.distance(c)).max(c.distance(a));
        let area = 0.5 * (b - a).cross(c - a);
        if longest == 0.0 || area.abs() <= DEGENERACY_THRESHOLD * longest * longest {
            return Err(Error::DegenerateTriangle);
        }
        Ok(Self {
            vertices: [a, b, c],
        })
    }

    pub fn from_coords(coords: [(f64, f64); 3]) -> Result<Self> {
        let [a, b, c] = coords.map(|(x, y)| Point::try_new(x, y));
        Self::new(a?, b?, c?)
    }

    /// Equilateral triangle inscribed in the circle of radius `circumradius`
    /// around `center`, with vertex A at angular position `phase` and the
    /// others following counterclockwise.
    pub fn equilateral(center: Point, circumradius: f64, phase: f64) -> Result<Self> {
        let circle = Circle::new(center, circumradius)?;
        Self::new(
            circle.point_at(phase),
            circle.point_at(phase + TAU / 3.0),
            circle.point_at(phase + 2.0 * TAU / 3.0),
        )
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    pub fn vertex(&self, label: Label) -> Point {
        self.vertices[label.index()]
    }

    /// Side lengths `[a, b, c]`.
    pub fn side_lengths(&self) -> [f64; 3] {
        let [a, b, c] = self.vertices;
        [b.distance(c), c.distance(a), a.distance(b)]
    }

    /// Directed sides `[B→C, C→A, A→B]`, i.e. sides a, b, c.
    pub fn side_vectors(&self) -> [Point; 3] {
        let [a, b, c] = self.vertices;
        [c - b, a - c, b - a]
    }

    pub fn signed_area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        0.5 * (b - a).cross(c - a)
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn winding(&self) -> Winding {
        if self.signed_area() > 0.0 {
            Winding::CounterClockwise
        } else {
            Winding::Clockwise
        }
    }

    /// The same triangle with B and C swapped if it winds clockwise.
    pub fn counterclockwise(&self) -> Self {
        match self.winding() {
            Winding::CounterClockwise => *self,
            Winding::Clockwise => {
                let [a, b, c] = self.vertices;
                Self {
                    vertices: [a, c, b],
                }
            }
        }
    }

    pub fn perimeter(&self) -> f64 {
        self.side_lengths().iter().sum()
    }

    pub fn centroid(&self) -> Point {
        let [a, b, c] = self.vertices;
        Point::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
    }

    /// Applies `f` to every vertex and re-validates.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Self> {
        let [a, b, c] = self.vertices.map(f);
        Self::new(a, b, c)
    }
}

impl TryFrom<[Point; 3]> for LabeledTriangle {
    type Error = Error;
    fn try_from(v: [Point; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<LabeledTriangle> for [Point; 3] {
    fn from(t: LabeledTriangle) -> Self {
        t.vertices
    }
}

/// Interior angles at A, B and C.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl AngleTriple {
    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }
}

/// Maps any angle to its representative in `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta - TAU * (theta / TAU).floor();
    // floor rounding can land exactly on 2π for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Maps any angle to `(-π, π]`.
pub fn wrap_pi(theta: f64) -> f64 {
    let r = normalize_angle(theta);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Maps an undirected line angle to `(-π/2, π/2]`.
pub fn wrap_half_pi(theta: f64) -> f64 {
    let r = theta - PI * (theta / PI).floor();
    if r > PI / 2.0 {
        r - PI
    } else {
        r
    }
}

/// The circle through the three vertices.
pub fn circumcircle(t: &LabeledTriangle) -> Circle {
    let [a, b, c] = t.vertices;
    let u = b - a;
    let v = c - a;
    let d = 2.0 * u.cross(v);
    let (uu, vv) = (u.dot(u), v.dot(v));
    let offset = Point {
        x: (v.y * uu - u.y * vv) / d,
        y: (u.x * vv - v.x * uu) / d,
    };
    Circle {
        center: a + offset,
        radius: offset.norm(),
    }
}

/// Angular position of `p` on `c`, in `[0, 2π)`.
pub fn angular_position(c: &Circle, p: Point) -> Result<f64> {
    let d = p - c.center;
    let deviation = (d.norm() - c.radius).abs();
    if deviation > ON_CIRCLE_TOLERANCE * c.radius {
        return Err(Error::OffCircle {
            deviation,
            radius: c.radius,
        });
    }
    Ok(normalize_angle(d.angle()))
}

/// Intersection of the line through `p1` with direction angle `d1` and the
/// line through `p2` with direction angle `d2`.
pub fn line_intersection(p1: Point, d1: f64, p2: Point, d2: f64) -> Result<Point> {
    let u = Point::polar(d1);
    let v = Point::polar(d2);
    let denom = u.cross(v);
    if denom.abs() <= PARALLEL_THRESHOLD {
        return Err(Error::ParallelLines);
    }
    let t = (p2 - p1).cross(v) / denom;
    Ok(p1 + u * t)
}

/// Interior angles, each computed from the two edge vectors leaving the
/// vertex.
pub fn angles_of(t: &LabeledTriangle) -> AngleTriple {
    let [a, b, c] = t.vertices;
    let at = |p: Point, q: Point, r: Point| {
        let (u, v) = (q - p, r - p);
        u.cross(v).abs().atan2(u.dot(v))
    };
    AngleTriple {
        alpha: at(a, b, c),
        beta: at(b, c, a),
        gamma: at(c, a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn tri(c: [(f64, f64); 3]) -> LabeledTriangle {
        LabeledTriangle::from_coords(c).unwrap()
    }

    #[test]
    fn circumcircle_of_right_triangle_uses_hypotenuse() {
        let c = circumcircle(&tri([(0.0, 0.0), (2.0, 0.0), (0.0, 2.0)]));
        assert_relative_eq!(c.center.x, 1.0, epsilon = 1e-15);
        assert_relative_eq!(c.center.y, 1.0, epsilon = 1e-15);
        assert_relative_eq!(c.radius, SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn circumcircle_of_equilateral() {
        let h = 3f64.sqrt() / 2.0;
        let c = circumcircle(&tri([(0.0, 0.0), (1.0, 0.0), (0.5, h)]));
        assert_relative_eq!(c.center.x, 0.5, epsilon = 1e-15);
        assert_relative_eq!(c.center.y, 3f64.sqrt() / 6.0, epsilon = 1e-15);
        assert_relative_eq!(c.radius, 1.0 / 3f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn circumcircle_matches_bisector_system() {
        // Perpendicular bisectors of AB and AC:
        //   (B - A)·X = (|B|² - |A|²)/2,  (C - A)·X = (|C|² - |A|²)/2
        let (a, b, c) = ((0.0, 0.0), (4.0, 0.0), (1.0, 3.0));
        let (m11, m12, r1) = (b.0 - a.0, b.1 - a.1, (b.0 * b.0 + b.1 * b.1) / 2.0);
        let (m21, m22, r2) = (c.0 - a.0, c.1 - a.1, (c.0 * c.0 + c.1 * c.1) / 2.0);
        let det = m11 * m22 - m12 * m21;
        let (x, y) = ((r1 * m22 - m12 * r2) / det, (m11 * r2 - r1 * m21) / det);
        // frozen: (2, 1), radius √5
        assert_eq!((x, y), (2.0, 1.0));

        let circle = circumcircle(&tri([a, b, c]));
        assert_relative_eq!(circle.center.x, x, epsilon = 1e-14);
        assert_relative_eq!(circle.center.y, y, epsilon = 1e-14);
        assert_relative_eq!(circle.radius, 5f64.sqrt(), epsilon = 1e-14);
        for p in [a, b, c] {
            let d = Point::new(p.0, p.1).distance(circle.center);
            assert!((d - circle.radius).abs() <= 1e-12 * circle.radius);
        }
    }

    #[test]
    fn collinear_vertices_are_degenerate() {
        assert_eq!(
            LabeledTriangle::from_coords([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]),
            Err(Error::DegenerateTriangle)
        );
        assert_eq!(
            LabeledTriangle::from_coords([(1.0, 1.0), (1.0, 1.0), (1.0, 1.0)]),
            Err(Error::DegenerateTriangle)
        );
        // area 5e-13 against longest side² = 1: below threshold
        assert_eq!(
            LabeledTriangle::from_coords([(0.0, 0.0), (1.0, 0.0), (0.5, 1e-12)]),
            Err(Error::DegenerateTriangle)
        );
        assert!(LabeledTriangle::from_coords([(0.0, 0.0), (1.0, 0.0), (0.5, 1e-9)]).is_ok());
        assert_eq!(
            LabeledTriangle::from_coords([(0.0, 0.0), (f64::NAN, 0.0), (0.5, 1.0)]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn angular_positions() {
        let unit = Circle::new(Point::ORIGIN, 1.0).unwrap();
        assert_eq!(angular_position(&unit, Point::new(1.0, 0.0)).unwrap(), 0.0);
        assert_relative_eq!(
            angular_position(&unit, Point::new(0.0, -1.0)).unwrap(),
            3.0 * FRAC_PI_2,
            epsilon = 1e-15
        );
        let c = Circle::new(Point::new(1.0, 1.0), SQRT_2).unwrap();
        assert_relative_eq!(
            angular_position(&c, Point::ORIGIN).unwrap(),
            5.0 * FRAC_PI_4,
            epsilon = 1e-15
        );
        assert!(matches!(
            angular_position(&unit, Point::new(2.0, 0.0)),
            Err(Error::OffCircle { .. })
        ));
    }

    #[test]
    fn line_intersections() {
        let p = line_intersection(Point::ORIGIN, 0.0, Point::new(1.0, -1.0), FRAC_PI_2).unwrap();
        assert_relative_eq!(p.x, 1.0, epsilon = 1e-15);
        assert_relative_eq!(p.y, 0.0, epsilon = 1e-15);

        let p = line_intersection(
            Point::ORIGIN,
            FRAC_PI_4,
            Point::new(2.0, 0.0),
            3.0 * FRAC_PI_4,
        )
        .unwrap();
        assert_relative_eq!(p.x, 1.0, epsilon = 1e-15);
        assert_relative_eq!(p.y, 1.0, epsilon = 1e-15);

        assert_eq!(
            line_intersection(Point::ORIGIN, 0.3, Point::ORIGIN, 0.3),
            Err(Error::ParallelLines)
        );
        assert_eq!(
            line_intersection(Point::ORIGIN, 0.3, Point::new(0.0, 1.0), 0.3 + PI),
            Err(Error::ParallelLines)
        );
    }

    #[test]
    fn angles_of_known_triangles() {
        let h = 3f64.sqrt() / 2.0;
        let eq = angles_of(&tri([(0.0, 0.0), (1.0, 0.0), (0.5, h)]));
        for x in eq.as_array() {
            assert_relative_eq!(x, PI / 3.0, epsilon = 1e-15);
        }

        let rt = angles_of(&tri([(0.0, 0.0), (2.0, 0.0), (0.0, 2.0)]));
        assert_relative_eq!(rt.alpha, FRAC_PI_2, epsilon = 1e-15);
        assert_relative_eq!(rt.beta, FRAC_PI_4, epsilon = 1e-15);
        assert_relative_eq!(rt.gamma, FRAC_PI_4, epsilon = 1e-15);

        // arccos of normalized dot products of the edge vectors
        let t = tri([(0.0, 0.0), (4.0, 0.0), (1.0, 3.0)]);
        let oracle = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| {
            let (ux, uy, vx, vy) = (q.0 - p.0, q.1 - p.1, r.0 - p.0, r.1 - p.1);
            ((ux * vx + uy * vy) / (ux.hypot(uy) * vx.hypot(vy))).acos()
        };
        let got = angles_of(&t);
        let (a, b, c) = ((0.0, 0.0), (4.0, 0.0), (1.0, 3.0));
        assert_relative_eq!(got.alpha, oracle(a, b, c), epsilon = 1e-14);
        assert_relative_eq!(got.beta, oracle(b, c, a), epsilon = 1e-14);
        assert_relative_eq!(got.gamma, oracle(c, a, b), epsilon = 1e-14);
        assert_relative_eq!(got.beta, FRAC_PI_4, epsilon = 1e-15);
        assert!((got.sum() - PI).abs() <= 1e-12);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_angle(0.0), 0.0);
        assert_eq!(normalize_angle(-1e-300), 0.0);
        assert_relative_eq!(normalize_angle(-FRAC_PI_2), 3.0 * FRAC_PI_2);
        assert_relative_eq!(normalize_angle(5.0 * PI), PI, epsilon = 1e-15);
        assert_relative_eq!(wrap_pi(3.0 * FRAC_PI_2), -FRAC_PI_2);
        assert_relative_eq!(wrap_half_pi(PI - 0.1), -0.1, epsilon = 1e-15);
        assert_relative_eq!(wrap_half_pi(FRAC_PI_2), FRAC_PI_2);
    }

    #[test]
    fn serde_rejects_degenerate_triangles() {
        let json = "[{\"x\":0.0,\"y\":0.0},{\"x\":1.0,\"y\":0.0},{\"x\":2.0,\"y\":0.0}]";
        assert!(serde_json::from_str::<LabeledTriangle>(json).is_err());
    }
}
