//! The invariant suite run by `midarc verify`.
//!
//! Each check produces one residual per sample; a check passes when every
//! evaluated residual is within its tolerance. Samples are drawn from
//! independent streams and evaluated in parallel, then folded in index order,
//! so the report does not depend on scheduling.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    convergence_report, equilateral_defect, orientation_vs_reference, sample_triangle, similarity,
    SimilarityReport,
};
use crate::arcs::{
    arcs_of, deviation, drift, iterate_angular, iterate_arcs, limit_triangles, step_angular,
    step_arcs, to_angular, NUMERIC_LIMIT_STEPS,
};
use crate::classic::{
    bisector_directions, circumradius_from_sides, contact, distance_to_line, excenter, excentral,
    morley, napoleon, NapoleonKind,
};
use crate::error::{Error, Result};
use crate::euclid::{angles_of, circumcircle, wrap_pi, Label, LabeledTriangle};

pub const CONTRACTION_RANKS: u32 = 40;
pub const CLOSED_FORM_RANKS: u32 = 30;
const DRIFT_RANKS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Contraction,
    ClosedForm,
    LimitArcs,
    LimitSide,
    LimitBruteForce,
    Antipodality,
    DriftSeries,
    Orientation,
    ContractionRatio,
    MorleyEquilateral,
    MorleyParallelEvenLimit,
    NapoleonOuterEquilateral,
    NapoleonInnerEquilateral,
    NapoleonOuterParallelMorley,
    ExcentralParallelMidarc1,
    ContactParallelMidarc1,
    Excentral2ParallelMidarc2,
    Contact2ParallelMidarc2,
    ExcenterEquidistance,
    BisectorsPerpendicular,
    StepConsistency,
    CircumradiusHeron,
}

impl Check {
    pub const ALL: [Check; 22] = [
        Check::Contraction,
        Check::ClosedForm,
        Check::LimitArcs,
        Check::LimitSide,
        Check::LimitBruteForce,
        Check::Antipodality,
        Check::DriftSeries,
        Check::Orientation,
        Check::ContractionRatio,
        Check::MorleyEquilateral,
        Check::MorleyParallelEvenLimit,
        Check::NapoleonOuterEquilateral,
        Check::NapoleonInnerEquilateral,
        Check::NapoleonOuterParallelMorley,
        Check::ExcentralParallelMidarc1,
        Check::ContactParallelMidarc1,
        Check::Excentral2ParallelMidarc2,
        Check::Contact2ParallelMidarc2,
        Check::ExcenterEquidistance,
        Check::BisectorsPerpendicular,
        Check::StepConsistency,
        Check::CircumradiusHeron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Contraction => "contraction",
            Check::ClosedForm => "closed_form",
            Check::LimitArcs => "limit_arcs",
            Check::LimitSide => "limit_side",
            Check::LimitBruteForce => "limit_brute_force",
            Check::Antipodality => "antipodality",
            Check::DriftSeries => "drift_series",
            Check::Orientation => "orientation",
            Check::ContractionRatio => "contraction_ratio",
            Check::MorleyEquilateral => "morley_equilateral",
            Check::MorleyParallelEvenLimit => "morley_parallel_even_limit",
            Check::NapoleonOuterEquilateral => "napoleon_outer_equilateral",
            Check::NapoleonInnerEquilateral => "napoleon_inner_equilateral",
            Check::NapoleonOuterParallelMorley => "napoleon_outer_parallel_morley",
            Check::ExcentralParallelMidarc1 => "excentral_parallel_midarc1",
            Check::ContactParallelMidarc1 => "contact_parallel_midarc1",
            Check::Excentral2ParallelMidarc2 => "excentral2_parallel_midarc2",
            Check::Contact2ParallelMidarc2 => "contact2_parallel_midarc2",
            Check::ExcenterEquidistance => "excenter_equidistance",
            Check::BisectorsPerpendicular => "bisectors_perpendicular",
            Check::StepConsistency => "step_consistency",
            Check::CircumradiusHeron => "circumradius_heron",
        }
    }

    /// What the residual measures and the bound it must meet.
    pub fn tolerance(self) -> f64 {
        match self {
            // |dev(n+1) - dev(n)/2| / (1 + dev(0)), n < 40
            Check::Contraction => 1e-12,
            // closed form vs stepping, relative per component, n <= 30
            Check::ClosedForm => 1e-12,
            // |l_i - S/3| after 60 steps
            Check::LimitArcs => 1e-9,
            // |side/R - √3| / √3
            Check::LimitSide => 1e-12,
            // closed-form limit vs 60/61 steps, radians
            Check::LimitBruteForce => 1e-9,
            // |odd - even - π|, radians
            Check::Antipodality => 1e-9,
            // measured vs series drift of C at even ranks, over R
            Check::DriftSeries => 1e-12,
            // |rotation of side c - (α - β)/3|, radians
            Check::Orientation => 1e-9,
            // |mean ratio - 1/2|
            Check::ContractionRatio => 1e-9,
            Check::MorleyEquilateral => 1e-9,
            // side misalignment mod π, radians
            Check::MorleyParallelEvenLimit => 1e-9,
            Check::NapoleonOuterEquilateral => 1e-9,
            Check::NapoleonInnerEquilateral => 1e-9,
            Check::NapoleonOuterParallelMorley => 1e-9,
            // max(angle mismatch, side misalignment), radians
            Check::ExcentralParallelMidarc1 => 1e-9,
            Check::ContactParallelMidarc1 => 1e-9,
            Check::Excentral2ParallelMidarc2 => 1e-9,
            Check::Contact2ParallelMidarc2 => 1e-9,
            // relative spread of distances to the side lines
            Check::ExcenterEquidistance => 1e-9,
            // |internal · external|
            Check::BisectorsPerpendicular => 1e-12,
            // |arcs(step) - step(arcs)|
            Check::StepConsistency => 1e-12,
            // relative
            Check::CircumradiusHeron => 1e-12,
        }
    }
}

/// Residual for one check on one sample. `Skipped` marks samples the check
/// does not apply to (a collapsed inner Napoleon triangle, a fixed point).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Residual {
    Value(f64),
    Skipped,
    Failed,
}

fn similar_parallel(r: Result<SimilarityReport>) -> Residual {
    match r {
        Ok(s) => Residual::Value(s.residual()),
        Err(_) => Residual::Failed,
    }
}

fn value(r: Result<f64>) -> Residual {
    r.map_or(Residual::Failed, Residual::Value)
}

/// All residuals for one triangle, indexed like [`Check::ALL`].
pub fn evaluate(t: &LabeledTriangle) -> Vec<(Check, Residual)> {
    let t = t.counterclockwise();
    let start = match to_angular(&t) {
        Ok(s) => s,
        Err(_) => return Check::ALL.iter().map(|&c| (c, Residual::Failed)).collect(),
    };
    let circle = start.circle();
    let r = circle.radius;
    let l0 = arcs_of(&start);
    let (even, odd) = limit_triangles(&start);
    let far_even = iterate_angular(&start, NUMERIC_LIMIT_STEPS);
    let far_odd = step_angular(&far_even);
    let angles = angles_of(&t);
    let morley_t = morley(&t);
    let midarc = |n| iterate_angular(&start, n).to_labeled();

    Check::ALL
        .iter()
        .map(|&check| {
            let res = match check {
                Check::Contraction => {
                    let d0 = deviation(&l0);
                    let mut l = l0;
                    let mut worst: f64 = 0.0;
                    for _ in 0..CONTRACTION_RANKS {
                        let next = step_arcs(&l);
                        worst = worst.max((deviation(&next) - deviation(&l) / 2.0).abs());
                        l = next;
                    }
                    Residual::Value(worst / (1.0 + d0))
                }
                Check::ClosedForm => {
                    let mut stepped = l0;
                    let mut worst: f64 = 0.0;
                    for n in 0..=CLOSED_FORM_RANKS {
                        let closed = iterate_arcs(&l0, n);
                        for (x, y) in closed.components().iter().zip(stepped.components()) {
                            worst = worst.max((x - y).abs() / y.abs());
                        }
                        stepped = step_arcs(&stepped);
                    }
                    Residual::Value(worst)
                }
                Check::LimitArcs => Residual::Value(deviation(&arcs_of(&far_even))),
                Check::LimitSide => {
                    let [a, b, c] = even
                        .to_labeled()
                        .map_or([f64::NAN; 3], |e| e.side_lengths());
                    let s3 = 3f64.sqrt();
                    Residual::Value(
                        [a, b, c]
                            .iter()
                            .map(|s| (s / r - s3).abs() / s3)
                            .fold(0.0, f64::max),
                    )
                }
                Check::LimitBruteForce => {
                    let mut worst: f64 = 0.0;
                    for i in 0..3 {
                        worst = worst
                            .max(wrap_pi(far_even.positions()[i] - even.positions()[i]).abs())
                            .max(wrap_pi(far_odd.positions()[i] - odd.positions()[i]).abs());
                    }
                    Residual::Value(worst)
                }
                Check::Antipodality => {
                    let mut worst: f64 = 0.0;
                    for i in 0..3 {
                        worst = worst
                            .max(wrap_pi(odd.positions()[i] - even.positions()[i] - PI).abs())
                            .max(
                                wrap_pi(far_odd.positions()[i] - far_even.positions()[i] - PI)
                                    .abs(),
                            );
                    }
                    Residual::Value(worst)
                }
                Check::DriftSeries => {
                    let c0 = start.position(Label::C);
                    let mut current = start;
                    let mut worst: f64 = 0.0;
                    for n in (0..=DRIFT_RANKS).step_by(2) {
                        let measured = wrap_pi(c0 - current.position(Label::C)) * r;
                        match drift(&l0, n) {
                            Ok(d) => worst = worst.max((measured - d.drift_ab).abs() / r),
                            Err(_) => worst = f64::NAN,
                        }
                        current = iterate_angular(&current, 2);
                    }
                    Residual::Value(worst)
                }
                Check::Orientation => value(
                    orientation_vs_reference(&start, &even)
                        .map(|o| (o - (angles.alpha - angles.beta) / 3.0).abs()),
                ),
                Check::ContractionRatio => match convergence_report(&t, CONTRACTION_RANKS) {
                    Ok(rep) if rep.fixed_point => Residual::Skipped,
                    Ok(rep) => rep
                        .measured_ratio
                        .map_or(Residual::Failed, |m| Residual::Value((m - 0.5).abs())),
                    Err(_) => Residual::Failed,
                },
                Check::MorleyEquilateral => value(
                    morley_t
                        .as_ref()
                        .map(equilateral_defect)
                        .map_err(Clone::clone),
                ),
                Check::MorleyParallelEvenLimit => value((|| {
                    let m = morley_t.clone()?;
                    Ok(similarity(&even.to_labeled()?, &m).max_side_misalignment)
                })()),
                Check::NapoleonOuterEquilateral => {
                    value(napoleon(&t, NapoleonKind::Outer).map(|n| equilateral_defect(&n)))
                }
                Check::NapoleonInnerEquilateral => match napoleon(&t, NapoleonKind::Inner) {
                    Ok(n) => Residual::Value(equilateral_defect(&n)),
                    Err(Error::DegenerateOutput) => Residual::Skipped,
                    Err(_) => Residual::Failed,
                },
                Check::NapoleonOuterParallelMorley => value((|| {
                    let m = morley_t.clone()?;
                    let n = napoleon(&t, NapoleonKind::Outer)?;
                    Ok(similarity(&m, &n).max_side_misalignment)
                })()),
                Check::ExcentralParallelMidarc1 => {
                    similar_parallel((|| Ok(similarity(&excentral(&t)?, &midarc(1)?)))())
                }
                Check::ContactParallelMidarc1 => {
                    similar_parallel((|| Ok(similarity(&contact(&t)?, &midarc(1)?)))())
                }
                Check::Excentral2ParallelMidarc2 => similar_parallel((|| {
                    Ok(similarity(&excentral(&excentral(&t)?)?, &midarc(2)?))
                })()),
                Check::Contact2ParallelMidarc2 => {
                    similar_parallel((|| Ok(similarity(&contact(&contact(&t)?)?, &midarc(2)?)))())
                }
                Check::ExcenterEquidistance => {
                    let [a, b, c] = t.vertices();
                    let worst = Label::ALL
                        .iter()
                        .map(|&l| {
                            let e = excenter(&t, l);
                            let d = [
                                distance_to_line(e, b, c),
                                distance_to_line(e, c, a),
                                distance_to_line(e, a, b),
                            ];
                            let max = d.iter().copied().fold(f64::MIN, f64::max);
                            let min = d.iter().copied().fold(f64::MAX, f64::min);
                            (max - min) / max
                        })
                        .fold(0.0, f64::max);
                    Residual::Value(worst)
                }
                Check::BisectorsPerpendicular => Residual::Value(
                    Label::ALL
                        .iter()
                        .map(|&l| {
                            let (i, e) = bisector_directions(&t, l);
                            i.dot(e).abs()
                        })
                        .fold(0.0, f64::max),
                ),
                Check::StepConsistency => {
                    let via_circle = arcs_of(&step_angular(&start));
                    let via_arcs = step_arcs(&l0);
                    Residual::Value(
                        via_circle
                            .components()
                            .iter()
                            .zip(via_arcs.components())
                            .map(|(x, y)| (x - y).abs())
                            .fold(0.0, f64::max),
                    )
                }
                Check::CircumradiusHeron => {
                    let [a, b, c] = t.side_lengths();
                    value(
                        circumradius_from_sides(a, b, c)
                            .map(|h| (h - circumcircle(&t).radius).abs() / h),
                    )
                }
            };
            (check, res)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub tolerance: f64,
    pub evaluated: u64,
    pub passed: u64,
    pub skipped: u64,
    pub worst_residual: Option<f64>,
    pub worst_sample: Option<u64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub seed: Option<u64>,
    pub samples: u64,
    pub min_angle: f64,
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub meta: Meta,
    pub records: Vec<CheckSummary>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn record(&self, check: Check) -> Option<&CheckSummary> {
        self.records.iter().find(|r| r.name == check.name())
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.records
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.name.as_str())
            .collect()
    }
}

pub fn tolerances() -> BTreeMap<String, f64> {
    Check::ALL
        .iter()
        .map(|c| (c.name().to_string(), c.tolerance()))
        .collect()
}

/// Evaluates every check on `samples` triangles from the stream of `seed`.
pub fn run_suite(samples: u64, seed: u64, min_angle: f64) -> Result<VerificationReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    let triangles = (0..samples)
        .map(|i| sample_triangle(seed, i, min_angle))
        .collect::<Result<Vec<_>>>()?;
    let per_sample: Vec<Vec<(Check, Residual)>> = triangles.par_iter().map(evaluate).collect();

    let mut records = Vec::with_capacity(Check::ALL.len());
    for (k, &check) in Check::ALL.iter().enumerate() {
        let tol = check.tolerance();
        let mut s = CheckSummary {
            name: check.name().to_string(),
            tolerance: tol,
            evaluated: 0,
            passed: 0,
            skipped: 0,
            worst_residual: None,
            worst_sample: None,
            pass: true,
        };
        for (i, residuals) in per_sample.iter().enumerate() {
            match residuals[k].1 {
                Residual::Skipped => s.skipped += 1,
                Residual::Failed => s.evaluated += 1,
                Residual::Value(v) => {
                    s.evaluated += 1;
                    if v <= tol {
                        s.passed += 1;
                    }
                    if v.is_finite() && s.worst_residual.is_none_or(|w| v > w) {
                        s.worst_residual = Some(v);
                        s.worst_sample = Some(i as u64);
                    }
                }
            }
        }
        s.pass = s.passed == s.evaluated;
        records.push(s);
    }
    let all_passed = records.iter().all(|r| r.pass);
    Ok(VerificationReport {
        meta: Meta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: Some(seed),
            samples,
            min_angle,
            tolerances: tolerances(),
        },
        records,
        all_passed,
    })
}
