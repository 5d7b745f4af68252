//! Measurements on triangles: equilateral defect, similarity and
//! parallelism, side rotation, convergence of the mid-arc iteration, and a
//! seeded sampler of random test triangles.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arcs::{
    arcs_of, deviation, limit_triangles, step_angular, to_angular, AngularTriangle, ArcTriple,
};
use crate::error::{Error, Result};
use crate::euclid::{angles_of, wrap_half_pi, wrap_pi, Circle, LabeledTriangle, Point};

/// Default tolerance for angle comparisons in similarity checks.
pub const SIMILARITY_TOLERANCE: f64 = 1e-9;

/// Below this deviation (relative to the circumference) a triangle is treated
/// as already equilateral.
pub const FIXED_POINT_DEVIATION: f64 = 1e-12;

/// Only steps whose deviation is at least this fraction of the circumference
/// enter the contraction-ratio fit. Rounding in the vertex positions is
/// `O(ε·R)` per step, so smaller deviations give noisy ratios.
pub const RATIO_FIT_FLOOR: f64 = 1e-4;

pub const DEFAULT_MIN_ANGLE: f64 = 0.1;

/// Anything with three vertices.
pub trait TriangleLike {
    fn vertex_points(&self) -> [Point; 3];
}

impl TriangleLike for LabeledTriangle {
    fn vertex_points(&self) -> [Point; 3] {
        self.vertices()
    }
}

impl TriangleLike for AngularTriangle {
    fn vertex_points(&self) -> [Point; 3] {
        let c = self.circle();
        self.positions().map(|t| c.point_at(t))
    }
}

fn side_lengths_of(points: [Point; 3]) -> [f64; 3] {
    let [a, b, c] = points;
    [b.distance(c), c.distance(a), a.distance(b)]
}

/// `(longest - shortest) / longest` over the side lengths.
pub fn equilateral_defect_of_sides(sides: [f64; 3]) -> f64 {
    let max = sides.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = sides.iter().copied().fold(f64::INFINITY, f64::min);
    (max - min) / max
}

pub fn equilateral_defect<T: TriangleLike + ?Sized>(t: &T) -> f64 {
    equilateral_defect_of_sides(side_lengths_of(t.vertex_points()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityReport {
    pub is_similar: bool,
    /// Size of the second triangle over the first (perimeter ratio).
    pub ratio: f64,
    /// Rotation taking side c of the first onto side c of the second, in
    /// `(-π, π]`.
    pub rotation: f64,
    pub sides_parallel: bool,
    pub max_angle_mismatch: f64,
    /// Largest angle between corresponding sides, reduced mod π.
    pub max_side_misalignment: f64,
}

impl SimilarityReport {
    /// Largest of the two residuals; the quantity a similar-and-parallel check
    /// compares against its tolerance.
    pub fn residual(&self) -> f64 {
        self.max_angle_mismatch.max(self.max_side_misalignment)
    }
}

/// Similarity at [`SIMILARITY_TOLERANCE`].
pub fn similarity(t1: &LabeledTriangle, t2: &LabeledTriangle) -> SimilarityReport {
    similarity_with_tolerance(t1, t2, SIMILARITY_TOLERANCE)
}

/// Compares sorted angle triples, and corresponding directed sides under
/// A↔A, B↔B, C↔C.
pub fn similarity_with_tolerance(
    t1: &LabeledTriangle,
    t2: &LabeledTriangle,
    tolerance: f64,
) -> SimilarityReport {
    let sorted = |t: &LabeledTriangle| {
        let mut a = angles_of(t).as_array();
        a.sort_by(f64::total_cmp);
        a
    };
    let (a1, a2) = (sorted(t1), sorted(t2));
    let max_angle_mismatch = a1
        .iter()
        .zip(&a2)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);

    let s1 = t1.side_vectors();
    let s2 = t2.side_vectors();
    let max_side_misalignment = s1
        .iter()
        .zip(&s2)
        .map(|(u, v)| wrap_half_pi(v.angle() - u.angle()).abs())
        .fold(0.0, f64::max);

    SimilarityReport {
        is_similar: max_angle_mismatch <= tolerance,
        ratio: t2.perimeter() / t1.perimeter(),
        rotation: wrap_pi(s2[2].angle() - s1[2].angle()),
        sides_parallel: max_side_misalignment <= tolerance,
        max_angle_mismatch,
        max_side_misalignment,
    }
}

/// Signed angle from side c (A→B) of `reference` to side c of `target`,
/// reduced to `(-π/2, π/2]`.
pub fn side_c_rotation<A: TriangleLike + ?Sized, B: TriangleLike + ?Sized>(
    reference: &A,
    target: &B,
) -> f64 {
    let [ra, rb, _] = reference.vertex_points();
    let [ta, tb, _] = target.vertex_points();
    wrap_half_pi((tb - ta).angle() - (rb - ra).angle())
}

/// Rotation of `target` against `reference`, both inscribed in the same
/// circle, measured on side c.
pub fn orientation_vs_reference(
    reference: &AngularTriangle,
    target: &AngularTriangle,
) -> Result<f64> {
    if !reference.circle().approx_eq(&target.circle(), 1e-9) {
        return Err(Error::MismatchedCircle);
    }
    Ok(side_c_rotation(reference, target))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub rank: u32,
    pub arcs: ArcTriple,
    pub deviation: f64,
    /// Measured clockwise displacement of C since rank 0; even ranks only.
    pub drift_ab: Option<f64>,
    pub positions: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub steps: Vec<StepRecord>,
    /// Mean of `deviation(n+1) / deviation(n)`; `None` for a fixed point.
    pub measured_ratio: Option<f64>,
    pub fixed_point: bool,
    pub even_limit: AngularTriangle,
    pub odd_limit: AngularTriangle,
    pub orientation_angle: f64,
    pub limit_side: f64,
    pub circumradius: f64,
}

/// Runs the mid-arc iteration `n_max` times and summarizes it.
pub fn convergence_report(t: &LabeledTriangle, n_max: u32) -> Result<ConvergenceReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "n_max must be at least 2, got {n_max}"
        )));
    }
    let start = to_angular(t)?;
    let circle = start.circle();
    let c0 = start.positions()[2];

    let mut steps = Vec::with_capacity(n_max as usize + 1);
    let mut current = start;
    for rank in 0..=n_max {
        let arcs = arcs_of(&current);
        let drift_ab =
            (rank % 2 == 0).then(|| wrap_pi(c0 - current.positions()[2]) * circle.radius);
        steps.push(StepRecord {
            rank,
            arcs,
            deviation: deviation(&arcs),
            drift_ab,
            positions: current.positions(),
        });
        current = step_angular(&current);
    }

    let circumference = circle.circumference();
    let fixed_point = steps[0].deviation <= FIXED_POINT_DEVIATION * circumference;
    let ratios: Vec<f64> = steps
        .windows(2)
        .filter(|w| w[0].deviation >= RATIO_FIT_FLOOR * circumference)
        .map(|w| w[1].deviation / w[0].deviation)
        .collect();
    let measured_ratio = (!fixed_point && !ratios.is_empty())
        .then(|| ratios.iter().sum::<f64>() / ratios.len() as f64);

    let (even_limit, odd_limit) = limit_triangles(&start);
    let sides = side_lengths_of(even_limit.vertex_points());
    Ok(ConvergenceReport {
        steps,
        measured_ratio,
        fixed_point,
        even_limit,
        odd_limit,
        orientation_angle: orientation_vs_reference(&start, &even_limit)?,
        limit_side: sides.iter().sum::<f64>() / 3.0,
        circumradius: circle.radius,
    })
}

/// Sample `index` of the stream for `seed`. Streams are independent, so
/// samples can be drawn in any order.
pub fn sample_triangle(seed: u64, index: u64, min_angle: f64) -> Result<LabeledTriangle> {
    if !(min_angle > 0.0 && min_angle < PI / 3.0) {
        return Err(Error::InvalidArgument(format!(
            "min_angle must lie in (0, π/3), got {min_angle}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let mut theta = [0.0; 3].map(|_: f64| rng.gen_range(0.0..TAU));
        theta.sort_by(f64::total_cmp);
        // inscribed angle = half the opposite arc
        let angles = [
            0.5 * (theta[2] - theta[1]),
            0.5 * (theta[0] + TAU - theta[2]),
            0.5 * (theta[1] - theta[0]),
        ];
        if angles.iter().any(|&a| a < min_angle) {
            continue;
        }
        let radius = rng.gen_range(0.5..=2.0);
        let center = Point::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        let circle = Circle::new(center, radius)?;
        let [a, b, c] = theta.map(|t| circle.point_at(t));
        if let Ok(t) = LabeledTriangle::new(a, b, c) {
            return Ok(t);
        }
    }
}

/// Deterministic random triangle with every angle at least `min_angle` and
/// circumradius in `[0.5, 2]`.
pub fn random_triangle(seed: u64, min_angle: f64) -> Result<LabeledTriangle> {
    sample_triangle(seed, 0, min_angle)
}
