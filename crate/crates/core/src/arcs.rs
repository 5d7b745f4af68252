//! The mid-arc iteration.
//!
//! Every vertex of a triangle inscribed in its circumcircle is replaced by
//! the midpoint of the arc opposite it: the arc between the other two
//! vertices that does not contain it. That midpoint is where the vertex's
//! internal angle bisector and the perpendicular bisector of the opposite
//! side meet the circle again. The new triangle lives on the same circle and
//! the step can be repeated forever.
//!
//! On the arc triple `(l_a, l_b, l_c)` the step is the linear averaging map
//!
//! ```text
//! (l_a, l_b, l_c) -> ((l_b + l_c)/2, (l_a + l_c)/2, (l_a + l_b)/2)
//! ```
//!
//! which keeps the circumference `S` and sends `l_i - S/3` to
//! `-(l_i - S/3)/2`. Iterates therefore alternate around the equilateral
//! triple and converge to it; on the circle, even ranks converge to one
//! equilateral triangle and odd ranks to its antipodal copy.
//!
//! Two arithmetic modes are provided. [`ArcTriple`] holds lengths as `f64`.
//! [`RationalArcTriple`] holds exact fractions of the circumference, which
//! keeps π out of the algebra so the recurrence can be checked with exact
//! equality.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::{
    angular_position, circumcircle, normalize_angle, AngleTriple, Circle, Label, LabeledTriangle,
    Winding,
};

/// Minimum angular separation between two vertices on the circle.
pub const ANGULAR_SEPARATION_THRESHOLD: f64 = 1e-12;

/// Relative tolerance on `l_a + l_b + l_c == circumference`.
pub const CIRCUMFERENCE_TOLERANCE: f64 = 1e-12;

/// Number of steps used when a limit is approached numerically. The deviation
/// shrinks by `2^60`, well past `f64` resolution.
pub const NUMERIC_LIMIT_STEPS: u32 = 60;

/// Lengths of the circumcircle arcs opposite A, B and C.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcTriple {
    pub l_a: f64,
    pub l_b: f64,
    pub l_c: f64,
    pub circumference: f64,
}

impl ArcTriple {
    /// Arc triple whose circumference is the sum of the components.
    pub fn new(l_a: f64, l_b: f64, l_c: f64) -> Result<Self> {
        Self::with_circumference(l_a, l_b, l_c, l_a + l_b + l_c)
    }

    pub fn with_circumference(l_a: f64, l_b: f64, l_c: f64, circumference: f64) -> Result<Self> {
        let parts = [l_a, l_b, l_c, circumference];
        if parts.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if parts.iter().any(|&x| x <= 0.0) {
            return Err(Error::InvalidArcs(format!(
                "components must be positive: {l_a}, {l_b}, {l_c}"
            )));
        }
        let sum = l_a + l_b + l_c;
        if (sum - circumference).abs() > CIRCUMFERENCE_TOLERANCE * circumference {
            return Err(Error::InvalidArcs(format!(
                "components sum to {sum}, circumference is {circumference}"
            )));
        }
        Ok(Self {
            l_a,
            l_b,
            l_c,
            circumference,
        })
    }

    /// Arcs `2R·α`, `2R·β`, `2R·γ` of a triangle with the given angles and
    /// circumradius.
    pub fn from_angles(angles: &AngleTriple, radius: f64) -> Result<Self> {
        let d = 2.0 * radius;
        Self::with_circumference(
            d * angles.alpha,
            d * angles.beta,
            d * angles.gamma,
            TAU * radius,
        )
    }

    pub fn components(&self) -> [f64; 3] {
        [self.l_a, self.l_b, self.l_c]
    }

    pub fn radius(&self) -> f64 {
        self.circumference / TAU
    }

    /// Inscribed angles `l / 2R` opposite each arc.
    pub fn angles(&self) -> AngleTriple {
        let d = 2.0 * self.radius();
        AngleTriple {
            alpha: self.l_a / d,
            beta: self.l_b / d,
            gamma: self.l_c / d,
        }
    }

    fn from_parts(parts: [f64; 3], circumference: f64) -> Self {
        Self {
            l_a: parts[0],
            l_b: parts[1],
            l_c: parts[2],
            circumference,
        }
    }
}

/// A triangle given by the angular positions of its vertices on a circle.
///
/// Vertices are kept in counterclockwise order A, B, C. A clockwise input is
/// relabeled by swapping B and C; [`AngularTriangle::relabeled`] reports
/// whether that happened.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularTriangle {
    circle: Circle,
    theta: [f64; 3],
    relabeled: bool,
}

impl AngularTriangle {
    pub fn new(circle: Circle, theta_a: f64, theta_b: f64, theta_c: f64) -> Result<Self> {
        if ![theta_a, theta_b, theta_c].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let theta = [theta_a, theta_b, theta_c].map(normalize_angle);
        for i in 0..3 {
            let gap = normalize_angle(theta[(i + 1) % 3] - theta[i]);
            if gap.min(TAU - gap) <= ANGULAR_SEPARATION_THRESHOLD {
                return Err(Error::DegenerateTriangle);
            }
        }
        let ccw = normalize_angle(theta[1] - theta[0]) < normalize_angle(theta[2] - theta[0]);
        Ok(if ccw {
            Self {
                circle,
                theta,
                relabeled: false,
            }
        } else {
            Self {
                circle,
                theta: [theta[0], theta[2], theta[1]],
                relabeled: true,
            }
        })
    }

    pub fn circle(&self) -> Circle {
        self.circle
    }

    /// Angular positions of A, B, C in `[0, 2π)`.
    pub fn positions(&self) -> [f64; 3] {
        self.theta
    }

    pub fn position(&self, label: Label) -> f64 {
        self.theta[label.index()]
    }

    /// Whether B and C were swapped to obtain counterclockwise order.
    pub fn relabeled(&self) -> bool {
        self.relabeled
    }

    pub fn to_labeled(&self) -> Result<LabeledTriangle> {
        let [a, b, c] = self.theta.map(|t| self.circle.point_at(t));
        LabeledTriangle::new(a, b, c)
    }

    /// Counterclockwise span from `from` to `to`, in radians.
    fn span(&self, from: Label, to: Label) -> f64 {
        normalize_angle(self.position(to) - self.position(from))
    }
}

/// Places the triangle on its circumcircle.
pub fn to_angular(t: &LabeledTriangle) -> Result<AngularTriangle> {
    let circle = circumcircle(t);
    let [a, b, c] = t.vertices().map(|p| angular_position(&circle, p));
    let out = AngularTriangle::new(circle, a?, b?, c?)?;
    debug_assert_eq!(out.relabeled, t.winding() == Winding::Clockwise);
    Ok(out)
}

/// Arc lengths opposite each vertex, measured counterclockwise.
pub fn arcs_of(t: &AngularTriangle) -> ArcTriple {
    let r = t.circle.radius;
    let (a, b, c) = (Label::A, Label::B, Label::C);
    ArcTriple::from_parts(
        [r * t.span(b, c), r * t.span(c, a), r * t.span(a, b)],
        t.circle.circumference(),
    )
}

/// One averaging step on the arc triple.
pub fn step_arcs(l: &ArcTriple) -> ArcTriple {
    ArcTriple::from_parts(
        [
            0.5 * (l.l_b + l.l_c),
            0.5 * (l.l_a + l.l_c),
            0.5 * (l.l_a + l.l_b),
        ],
        l.circumference,
    )
}

/// One mid-arc step on the circle. The new vertex labeled X is the midpoint
/// of the arc opposite the old vertex X.
pub fn step_angular(t: &AngularTriangle) -> AngularTriangle {
    let (a, b, c) = (Label::A, Label::B, Label::C);
    let mid = |from: Label, to: Label| normalize_angle(t.position(from) + 0.5 * t.span(from, to));
    AngularTriangle {
        circle: t.circle,
        theta: [mid(b, c), mid(c, a), mid(a, b)],
        relabeled: t.relabeled,
    }
}

pub fn iterate_angular(t: &AngularTriangle, n: u32) -> AngularTriangle {
    (0..n).fold(*t, |acc, _| step_angular(&acc))
}

/// Weights `(own, other)` such that the rank-`n` arc is
/// `own·l_i + other·(l_j + l_k)`. Computed as `((2^n ± 2)/3)/2^n` and
/// `((2^n ∓ 1)/3)/2^n` divided through by `2^n`.
fn float_weights(n: u32) -> (f64, f64) {
    let p = 0.5f64.powi(n.min(i32::MAX as u32) as i32);
    if n.is_multiple_of(2) {
        ((1.0 + 2.0 * p) / 3.0, (1.0 - p) / 3.0)
    } else {
        ((1.0 - 2.0 * p) / 3.0, (1.0 + p) / 3.0)
    }
}

/// Closed-form rank-`n` arc triple.
pub fn iterate_arcs(l: &ArcTriple, n: u32) -> ArcTriple {
    if n == 0 {
        return *l;
    }
    let (own, other) = float_weights(n);
    let [x, y, z] = l.components();
    ArcTriple::from_parts(
        [
            own * x + other * (y + z),
            own * y + other * (x + z),
            own * z + other * (x + y),
        ],
        l.circumference,
    )
}

/// The equilateral limit: every arc equal to a third of the circumference.
pub fn limit_arcs(l: &ArcTriple) -> ArcTriple {
    let third = l.circumference / 3.0;
    ArcTriple::from_parts([third; 3], l.circumference)
}

/// Largest distance of a component from `circumference / 3`.
pub fn deviation(l: &ArcTriple) -> f64 {
    let third = l.circumference / 3.0;
    l.components()
        .iter()
        .map(|x| (x - third).abs())
        .fold(0.0, f64::max)
}

/// Limits of the even-rank and odd-rank iterates.
///
/// Vertex A moves by `-(l_b - l_c)/3` of arc, B by `-(l_c - l_a)/3` and C by
/// `-(l_a - l_b)/3` (counterclockwise positive). The odd limit is the even
/// limit reflected through the circumcenter.
pub fn limit_triangles(t: &AngularTriangle) -> (AngularTriangle, AngularTriangle) {
    let l = arcs_of(t);
    let r = t.circle.radius;
    let [x, y, z] = l.components();
    let shift = [(y - z), (z - x), (x - y)].map(|d| -d / (3.0 * r));
    let even: [f64; 3] = std::array::from_fn(|i| normalize_angle(t.theta[i] + shift[i]));
    let odd = even.map(|th| normalize_angle(th + PI));
    (
        AngularTriangle {
            circle: t.circle,
            theta: even,
            relabeled: t.relabeled,
        },
        AngularTriangle {
            circle: t.circle,
            theta: odd,
            relabeled: t.relabeled,
        },
    )
}

/// Arc displacement of vertex C between the reference triangle and an even
/// rank iterate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    pub rank: u32,
    /// Positive values mean C moved clockwise, toward B (into arc `a`).
    pub drift_ab: f64,
    pub drift_limit: f64,
    /// Rotation of the even limit's sides against the reference, `(α - β)/3`.
    pub orientation_angle: f64,
}

/// Drift of vertex C after `n` steps, `n` even:
/// `(l_a - l_b)/4 · Σ_{k < n/2} 4^-k`, tending to `(l_a - l_b)/3`.
pub fn drift(l: &ArcTriple, n: u32) -> Result<DriftReport> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddRank(n));
    }
    let diff = l.l_a - l.l_b;
    let drift_limit = diff / 3.0;
    let drift_ab = drift_limit * (1.0 - 0.25f64.powi((n / 2).min(i32::MAX as u32) as i32));
    Ok(DriftReport {
        rank: n,
        drift_ab,
        drift_limit,
        orientation_angle: drift_limit / (2.0 * l.radius()),
    })
}

/// Arcs as exact fractions of the circumference.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalArcTriple {
    f: [BigRational; 3],
}

impl RationalArcTriple {
    pub fn new(f_a: BigRational, f_b: BigRational, f_c: BigRational) -> Result<Self> {
        if [&f_a, &f_b, &f_c].iter().any(|f| !f.is_positive()) {
            return Err(Error::InvalidArcs(format!(
                "fractions must be positive: {f_a}, {f_b}, {f_c}"
            )));
        }
        let sum = &f_a + &f_b + &f_c;
        if !sum.is_one() {
            return Err(Error::InvalidArcs(format!("fractions sum to {sum}, not 1")));
        }
        Ok(Self { f: [f_a, f_b, f_c] })
    }

    pub fn from_ratios(parts: [(i64, i64); 3]) -> Result<Self> {
        let [a, b, c] = parts.map(|(n, d)| {
            if d == 0 {
                Err(Error::InvalidArcs("zero denominator".into()))
            } else {
                Ok(BigRational::new(n.into(), d.into()))
            }
        });
        Self::new(a?, b?, c?)
    }

    pub fn fractions(&self) -> &[BigRational; 3] {
        &self.f
    }

    /// Arc lengths on a circle of the given radius.
    pub fn to_arcs(&self, radius: f64) -> Result<ArcTriple> {
        let circumference = TAU * radius;
        let [a, b, c] = self
            .f
            .each_ref()
            .map(|f| rational_to_f64(f) * circumference);
        ArcTriple::with_circumference(a, b, c, circumference)
    }
}

impl FromStr for RationalArcTriple {
    type Err = Error;

    /// Parses `"p/q,p/q,p/q"`; plain integers are accepted too.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidArcs(format!(
                "expected three comma-separated fractions, got {s:?}"
            )));
        }
        let mut out = Vec::with_capacity(3);
        for p in parts {
            let r = BigRational::from_str(p)
                .map_err(|_| Error::InvalidArcs(format!("not a fraction: {p:?}")))?;
            out.push(r);
        }
        let c = out.pop().unwrap();
        let b = out.pop().unwrap();
        let a = out.pop().unwrap();
        Self::new(a, b, c)
    }
}

impl fmt::Display for RationalArcTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.f[0], self.f[1], self.f[2])
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Integer numerators of the rank-`n` closed form over `2^n`:
/// the weight of a component's own arc and of each of the other two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormCoefficients {
    pub own: BigInt,
    pub other: BigInt,
    pub denominator: BigInt,
}

/// `((2^n + 2)/3, (2^n - 1)/3)` for even `n`, `((2^n - 2)/3, (2^n + 1)/3)`
/// for odd `n`, both over `2^n`.
pub fn closed_form_coefficients(n: u32) -> ClosedFormCoefficients {
    let p: BigInt = Pow::pow(BigInt::from(2u8), n);
    let three = BigInt::from(3u8);
    let (own, other): (BigInt, BigInt) = if n.is_multiple_of(2) {
        (&p + 2u8, &p - 1u8)
    } else {
        (&p - 2u8, &p + 1u8)
    };
    debug_assert!((&own % &three).is_zero() && (&other % &three).is_zero());
    ClosedFormCoefficients {
        own: own / &three,
        other: other / &three,
        denominator: p,
    }
}

pub fn rational_step(f: &RationalArcTriple) -> RationalArcTriple {
    let half = BigRational::new(1.into(), 2.into());
    let [a, b, c] = &f.f;
    RationalArcTriple {
        f: [(b + c) * &half, (a + c) * &half, (a + b) * &half],
    }
}

/// Exact closed-form rank-`n` fractions.
pub fn rational_iterate(f: &RationalArcTriple, n: u32) -> RationalArcTriple {
    let k = closed_form_coefficients(n);
    let own = BigRational::new(k.own, k.denominator.clone());
    let other = BigRational::new(k.other, k.denominator);
    let [a, b, c] = &f.f;
    RationalArcTriple {
        f: [
            &own * a + &other * (b + c),
            &own * b + &other * (a + c),
            &own * c + &other * (a + b),
        ],
    }
}

/// Largest distance of a fraction from `1/3`.
pub fn rational_deviation(f: &RationalArcTriple) -> BigRational {
    let third = BigRational::new(1.into(), 3.into());
    f.f.iter()
        .map(|x| (x - &third).abs())
        .max()
        .expect("three components")
}

/// Exact drift of vertex C, as fractions of the circumference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDrift {
    pub rank: u32,
    pub drift_ab: BigRational,
    pub drift_limit: BigRational,
}

pub fn rational_drift(f: &RationalArcTriple, n: u32) -> Result<RationalDrift> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddRank(n));
    }
    let diff = &f.f[0] - &f.f[1];
    let limit = &diff / BigInt::from(3u8);
    let quarter_pow = BigRational::new(BigInt::one(), Pow::pow(BigInt::from(4u8), n / 2));
    let drift_ab = &limit * (BigRational::one() - quarter_pow);
    Ok(RationalDrift {
        rank: n,
        drift_ab,
        drift_limit: limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::Point;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn unit() -> Circle {
        Circle::new(Point::ORIGIN, 1.0).unwrap()
    }

    fn assert_arcs(got: &ArcTriple, want: [f64; 3]) {
        for (g, w) in got.components().iter().zip(want) {
            assert_relative_eq!(*g, w, epsilon = 1e-14, max_relative = 1e-14);
        }
    }

    /// The half-right-half-third triangle: angles (π/2, π/3, π/6), R = 1.
    fn reference_arcs() -> ArcTriple {
        ArcTriple::with_circumference(PI, 2.0 * PI / 3.0, PI / 3.0, TAU).unwrap()
    }

    #[test]
    fn to_angular_right_isosceles() {
        let t = LabeledTriangle::from_coords([(0.0, 0.0), (2.0, 0.0), (0.0, 2.0)]).unwrap();
        let a = to_angular(&t).unwrap();
        assert!(!a.relabeled());
        assert_relative_eq!(a.circle().radius, SQRT_2, epsilon = 1e-15);
        let [ta, tb, tc] = a.positions();
        assert_relative_eq!(ta, 5.0 * PI / 4.0, epsilon = 1e-15);
        assert_relative_eq!(tb, 7.0 * PI / 4.0, epsilon = 1e-15);
        assert_relative_eq!(tc, 3.0 * PI / 4.0, epsilon = 1e-15);
        assert_arcs(
            &arcs_of(&a),
            [PI * SQRT_2, PI * SQRT_2 / 2.0, PI * SQRT_2 / 2.0],
        );
    }

    #[test]
    fn to_angular_equilateral_at_origin() {
        let t = LabeledTriangle::equilateral(Point::ORIGIN, 1.0, FRAC_PI_2).unwrap();
        let a = to_angular(&t).unwrap();
        let want = [
            FRAC_PI_2,
            FRAC_PI_2 + TAU / 3.0,
            FRAC_PI_2 + 2.0 * TAU / 3.0,
        ];
        for (g, w) in a.positions().iter().zip(want) {
            assert_relative_eq!(*g, normalize_angle(w), epsilon = 1e-14);
        }
        assert_arcs(&arcs_of(&a), [TAU / 3.0; 3]);
    }

    #[test]
    fn to_angular_composes_circumcircle_and_positions() {
        let t = LabeledTriangle::from_coords([(0.0, 0.0), (4.0, 0.0), (1.0, 3.0)]).unwrap();
        let a = to_angular(&t).unwrap();
        // center (2, 1): atan2 of each vertex offset, shifted into [0, 2π)
        let want = [
            (-1.0f64).atan2(-2.0) + TAU,
            (-1.0f64).atan2(2.0) + TAU,
            2.0f64.atan2(-1.0),
        ];
        for (g, w) in a.positions().iter().zip(want) {
            assert_relative_eq!(*g, w, epsilon = 1e-14);
        }
    }

    #[test]
    fn clockwise_input_swaps_b_and_c() {
        let t = LabeledTriangle::from_coords([(0.0, 0.0), (0.0, 2.0), (2.0, 0.0)]).unwrap();
        let a = to_angular(&t).unwrap();
        assert!(a.relabeled());
        assert_relative_eq!(a.position(Label::B), 7.0 * PI / 4.0, epsilon = 1e-15);
        assert_relative_eq!(a.position(Label::C), 3.0 * PI / 4.0, epsilon = 1e-15);
    }

    #[test]
    fn coincident_positions_rejected() {
        assert_eq!(
            AngularTriangle::new(unit(), 0.0, 1.0, TAU + 1.0),
            Err(Error::DegenerateTriangle)
        );
    }

    #[test]
    fn arcs_from_angles() {
        let angles = AngleTriple {
            alpha: FRAC_PI_2,
            beta: PI / 3.0,
            gamma: PI / 6.0,
        };
        assert_arcs(
            &ArcTriple::from_angles(&angles, 1.0).unwrap(),
            [PI, 2.0 * PI / 3.0, PI / 3.0],
        );
    }

    #[test]
    fn arc_triple_validation() {
        assert!(ArcTriple::new(1.0, 0.0, 1.0).is_err());
        assert!(ArcTriple::new(1.0, -1.0, 3.0).is_err());
        assert!(ArcTriple::with_circumference(1.0, 1.0, 1.0, 3.1).is_err());
        assert_eq!(
            ArcTriple::new(1.0, f64::INFINITY, 1.0),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn step_arcs_examples() {
        let l = reference_arcs();
        let one = step_arcs(&l);
        assert_arcs(&one, [FRAC_PI_2, 2.0 * PI / 3.0, 5.0 * PI / 6.0]);
        assert_eq!(one.circumference, l.circumference);
        assert_arcs(
            &step_arcs(&one),
            [3.0 * PI / 4.0, 2.0 * PI / 3.0, 7.0 * PI / 12.0],
        );

        let eq = ArcTriple::new(TAU / 3.0, TAU / 3.0, TAU / 3.0).unwrap();
        assert_eq!(step_arcs(&eq), eq);
    }

    #[test]
    fn step_angular_equilateral_goes_antipodal() {
        let t = AngularTriangle::new(unit(), FRAC_PI_2, 7.0 * PI / 6.0, 11.0 * PI / 6.0).unwrap();
        let s = step_angular(&t);
        let want = [3.0 * PI / 2.0, PI / 6.0, 5.0 * PI / 6.0];
        for (g, w) in s.positions().iter().zip(want) {
            assert_relative_eq!(*g, w, epsilon = 1e-14);
        }
    }

    #[test]
    fn step_angular_by_hand() {
        let t = AngularTriangle::new(unit(), 0.0, PI, 3.0 * FRAC_PI_2).unwrap();
        let s = step_angular(&t);
        let want = [5.0 * PI / 4.0, 7.0 * PI / 4.0, FRAC_PI_2];
        for (g, w) in s.positions().iter().zip(want) {
            assert_relative_eq!(*g, w, epsilon = 1e-15);
        }
        let before = arcs_of(&t);
        let after = arcs_of(&s);
        assert_arcs(&after, step_arcs(&before).components());
    }

    #[test]
    fn iterate_arcs_rows() {
        let l = reference_arcs();
        assert_eq!(iterate_arcs(&l, 0), l);
        assert_arcs(
            &iterate_arcs(&l, 1),
            [FRAC_PI_2, 2.0 * PI / 3.0, 5.0 * PI / 6.0],
        );
        assert_arcs(
            &iterate_arcs(&l, 2),
            [3.0 * PI / 4.0, 2.0 * PI / 3.0, 7.0 * PI / 12.0],
        );
        assert_arcs(
            &iterate_arcs(&l, 3),
            [5.0 * PI / 8.0, 2.0 * PI / 3.0, 17.0 * PI / 24.0],
        );
    }

    #[test]
    fn limits_and_deviation() {
        let l = reference_arcs();
        assert_arcs(&limit_arcs(&l), [TAU / 3.0; 3]);
        assert_relative_eq!(deviation(&l), PI / 3.0, epsilon = 1e-15);
        let eq = ArcTriple::new(TAU / 3.0, TAU / 3.0, TAU / 3.0).unwrap();
        assert_eq!(deviation(&eq), 0.0);
        assert_eq!(limit_arcs(&eq), eq);

        let far = iterate_arcs(&l, 40);
        for (x, y) in far.components().iter().zip(limit_arcs(&l).components()) {
            assert!((x - y).abs() <= TAU / 2f64.powi(40) + 1e-14);
        }
    }

    #[test]
    fn limit_triangles_of_equilateral() {
        let t = AngularTriangle::new(unit(), FRAC_PI_2, 7.0 * PI / 6.0, 11.0 * PI / 6.0).unwrap();
        let (even, odd) = limit_triangles(&t);
        for (g, w) in even.positions().iter().zip(t.positions()) {
            assert_relative_eq!(*g, w, epsilon = 1e-14);
        }
        for (g, w) in odd.positions().iter().zip(step_angular(&t).positions()) {
            assert_relative_eq!(*g, w, epsilon = 1e-14);
        }
    }

    #[test]
    fn limit_vertex_c_moves_by_a_ninth_of_pi() {
        // angles (π/2, π/3, π/6) on the unit circle: A at 0, B at 2γ, C at 2γ + 2α
        let t = AngularTriangle::new(unit(), 0.0, PI / 3.0, 4.0 * PI / 3.0).unwrap();
        assert_arcs(&arcs_of(&t), [PI, 2.0 * PI / 3.0, PI / 3.0]);
        let (even, _) = limit_triangles(&t);
        let moved = normalize_angle(t.position(Label::C) - even.position(Label::C));
        assert_relative_eq!(moved, PI / 9.0, epsilon = 1e-14);
    }

    #[test]
    fn drift_values() {
        let l = reference_arcs();
        assert_eq!(drift(&l, 0).unwrap().drift_ab, 0.0);
        let d2 = drift(&l, 2).unwrap();
        assert_relative_eq!(d2.drift_ab, PI / 12.0, epsilon = 1e-15);
        assert_relative_eq!(d2.drift_limit, PI / 9.0, epsilon = 1e-15);
        assert_relative_eq!(d2.orientation_angle, PI / 18.0, epsilon = 1e-15);
        assert_relative_eq!(
            drift(&l, 4).unwrap().drift_ab,
            PI / 12.0 + PI / 48.0,
            epsilon = 1e-15
        );
        assert_eq!(drift(&l, 3), Err(Error::OddRank(3)));
    }

    #[test]
    fn drift_matches_partial_sums() {
        let l = ArcTriple::new(2.5, 1.75, 2.0).unwrap();
        for m in 0..20u32 {
            let series: f64 = (0..m)
                .map(|k| (l.l_a - l.l_b) / 4.0 * 0.25f64.powi(k as i32))
                .sum();
            assert_relative_eq!(drift(&l, 2 * m).unwrap().drift_ab, series, epsilon = 1e-15);
        }
    }

    #[test]
    fn rational_examples() {
        let f = RationalArcTriple::from_ratios([(1, 2), (1, 3), (1, 6)]).unwrap();
        let one = rational_step(&f);
        assert_eq!(one.fractions(), &[r(1, 4), r(1, 3), r(5, 12)]);
        assert_eq!(rational_iterate(&f, 1), one);

        let eq = RationalArcTriple::from_ratios([(1, 3), (1, 3), (1, 3)]).unwrap();
        for n in [0, 1, 2, 7, 64] {
            assert_eq!(rational_iterate(&eq, n), eq);
        }

        let stepped = (0..10).fold(f.clone(), |acc, _| rational_step(&acc));
        assert_eq!(rational_iterate(&f, 10), stepped);
    }

    #[test]
    fn rational_parse_and_validate() {
        let f: RationalArcTriple = "1/2, 1/3,1/6".parse().unwrap();
        assert_eq!(f.to_string(), "1/2,1/3,1/6");
        assert!("1/2,1/3".parse::<RationalArcTriple>().is_err());
        assert!("1/2,1/2,1/6".parse::<RationalArcTriple>().is_err());
        assert!("1/2,1/2,0".parse::<RationalArcTriple>().is_err());
        assert!("a,b,c".parse::<RationalArcTriple>().is_err());
    }

    #[test]
    fn coefficients_small_ranks() {
        let c = |n| {
            let k = closed_form_coefficients(n);
            (k.own, k.other, k.denominator)
        };
        assert_eq!(c(0), (1.into(), 0.into(), 1.into()));
        assert_eq!(c(1), (0.into(), 1.into(), 2.into()));
        assert_eq!(c(2), (2.into(), 1.into(), 4.into()));
        assert_eq!(c(3), (2.into(), 3.into(), 8.into()));
    }

    #[test]
    fn rational_drift_exact() {
        let f = RationalArcTriple::from_ratios([(1, 2), (1, 3), (1, 6)]).unwrap();
        // fractions of 2π: 1/24 -> π/12, 1/18 -> π/9
        let d = rational_drift(&f, 2).unwrap();
        assert_eq!(d.drift_ab, r(1, 24));
        assert_eq!(d.drift_limit, r(1, 18));
        assert_eq!(rational_drift(&f, 4).unwrap().drift_ab, r(1, 24) + r(1, 96));
        assert_eq!(rational_drift(&f, 5), Err(Error::OddRank(5)));
    }
}
