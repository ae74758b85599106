//! Convexity properties of the metric, as executable margin computations,
//! plus randomized suites that hunt for violations.
//!
//! Every property is phrased as a margin that must stay nonnegative (or
//! strictly positive where strictness is the claim). Samplers draw
//! coordinates from a dyadic grid so that the distance arithmetic is exact
//! in floating point; checks that assert exact identities then hold bitwise
//! rather than within a tolerance.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{distance, is_between, Point};
use crate::segment::{midpoint, point_at_arclength};
use crate::wstructure::{takahashi_residual, w_point, w_point_arclength};

/// Point at distance `a` from `v1` on the way to `v2`, by direct case
/// analysis: descend the first column, run along the axis, or climb the last
/// column with the remaining budget. Interior split only.
pub fn split_distance(v1: Point, v2: Point, a: f64) -> Result<Point> {
    let d = distance(v1, v2);
    if !(a > 0.0 && a < d) {
        return Err(Error::SplitOutOfRange { a, d });
    }
    if v1.x() == v2.x() {
        let dir = (v2.y() - v1.y()).signum();
        return Ok(Point::raw(v1.x(), v1.y() + dir * a));
    }
    let h1 = v1.y().abs();
    let dx = (v2.x() - v1.x()).abs();
    if a <= h1 {
        Ok(Point::raw(v1.x(), v1.y() - v1.y().signum() * a))
    } else if a <= h1 + dx {
        let dir = (v2.x() - v1.x()).signum();
        Ok(Point::raw(v1.x() + dir * (a - h1), 0.0))
    } else {
        let b = d - a;
        Ok(Point::raw(v2.x(), v2.y() - v2.y().signum() * b))
    }
}

/// Ball convexity margin: the midpoint of two points may not be farther from
/// any anchor than the worse of the two. Nonnegative everywhere; strictly
/// positive on equidistant anchors with distinct endpoints.
pub fn ball_convexity_margin(x: Point, y: Point, z: Point) -> f64 {
    let m = midpoint(x, y);
    distance(x, z).max(distance(y, z)) - distance(m, z)
}

/// Distance convexity margin: the midpoint may not be farther from an anchor
/// than the average of the endpoint distances.
pub fn distance_convexity_margin(x: Point, y: Point, z: Point) -> f64 {
    let m = midpoint(x, y);
    0.5 * (distance(x, z) + distance(y, z)) - distance(m, z)
}

/// Midpoint nonexpansiveness margin: midpoints taken toward a common third
/// point may not spread faster than half the original separation.
pub fn npbc_margin(x: Point, y: Point, z: Point) -> f64 {
    0.5 * distance(x, y) - distance(midpoint(x, z), midpoint(y, z))
}

/// Strict convexity margin: from an apex equidistant to two distinct points,
/// any point strictly between them is strictly closer. Preconditions are
/// enforced; the returned margin must be positive.
pub fn strict_convexity_check(v1: Point, v2: Point, v3: Point, t: Point) -> Result<f64> {
    let d12 = distance(v1, v2);
    let d13 = distance(v1, v3);
    if (d12 - d13).abs() > 1e-9 {
        return Err(Error::NotEquidistant);
    }
    if t == v2 || t == v3 || !is_between(v2, t, v3, 1e-9) {
        return Err(Error::NotBetween);
    }
    Ok(d12 - distance(v1, t))
}

/// The set of prolongation targets past `v2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProlongationResult {
    /// Off-axis pivot: exactly one target, straight away from the axis.
    Unique { point: Point },
    /// Pivot on the axis: a continuum, represented as a two-edge polyline
    /// on the sphere of the leftover radius around the pivot.
    Polyline { vertices: Vec<Point> },
}

/// All points `z` with `d(v1, v2) + d(v2, z) = d(v1, z) = k`: the segment
/// from `v1` through `v2` prolonged to total length `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProlongationSet {
    pub v1: Point,
    pub v2: Point,
    pub k: f64,
    pub result: ProlongationResult,
}

impl ProlongationSet {
    /// Concrete points of the set: the unique target, or `n` points spread
    /// evenly along the polyline (endpoints included).
    pub fn sample(&self, n: usize) -> Vec<Point> {
        match &self.result {
            ProlongationResult::Unique { point } => vec![*point],
            ProlongationResult::Polyline { vertices } => {
                if n <= 1 {
                    return vec![vertices[0]];
                }
                let edges = vertices.len() - 1;
                (0..n)
                    .map(|i| {
                        let t = edges as f64 * i as f64 / (n - 1) as f64;
                        let e = (t.floor() as usize).min(edges - 1);
                        let local = t - e as f64;
                        let a = vertices[e];
                        let b = vertices[e + 1];
                        Point::raw(
                            a.x() + local * (b.x() - a.x()),
                            a.y() + local * (b.y() - a.y()),
                        )
                    })
                    .collect()
            }
        }
    }
}

/// Prolong the segment from `v1` through `v2` to total length `k > d(v1,v2)`.
///
/// An off-axis pivot admits exactly one target: climbing further away from
/// the axis. A pivot on the axis admits a continuum: the far half of the
/// sphere of radius `k - d` around it. A pivot directly below or above `v1`
/// uses the half sphere opposite `v1`'s side.
pub fn prolongation_set(v1: Point, v2: Point, k: f64) -> Result<ProlongationSet> {
    if v1 == v2 {
        return Err(Error::IdenticalPoints);
    }
    let d = distance(v1, v2);
    if !(k > d) {
        return Err(Error::ProlongationTooShort { k, d });
    }
    let rho = k - d;
    let result = if v2.y() != 0.0 {
        ProlongationResult::Unique {
            point: Point::raw(v2.x(), v2.y() + v2.y().signum() * rho),
        }
    } else if v1.x() != v2.x() {
        let s = (v2.x() - v1.x()).signum();
        ProlongationResult::Polyline {
            vertices: vec![
                Point::raw(v2.x(), rho),
                Point::raw(v2.x() + s * rho, 0.0),
                Point::raw(v2.x(), -rho),
            ],
        }
    } else {
        let s = v1.y().signum();
        ProlongationResult::Polyline {
            vertices: vec![
                Point::raw(v2.x() - rho, 0.0),
                Point::raw(v2.x(), -s * rho),
                Point::raw(v2.x() + rho, 0.0),
            ],
        }
    };
    Ok(ProlongationSet { v1, v2, k, result })
}

/// Uniform convexity margin, with the decay split by where the midpoint of
/// the chord lands. For a midpoint on the axis the decay scales with the
/// endpoint heights; for a midpoint on a vertical piece, half the required
/// separation ratio is a valid decay because the midpoint saves half the
/// chord length toward any admissible anchor.
pub fn uniform_convexity_check(v1: Point, v2: Point, z: Point, c: f64, eps: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::UcPrecondition("c must be positive"));
    }
    if !(eps > 0.0) {
        return Err(Error::UcPrecondition("eps must be positive"));
    }
    if !(distance(v1, z) <= c) {
        return Err(Error::UcPrecondition("v1 lies outside the radius-c ball"));
    }
    if !(distance(v2, z) <= c) {
        return Err(Error::UcPrecondition("v2 lies outside the radius-c ball"));
    }
    let d = distance(v1, v2);
    if !(d >= c * eps) {
        return Err(Error::UcPrecondition("endpoints are closer than c*eps"));
    }
    let m = w_point(v1, v2, 0.5)?;
    let delta = if m.y() == 0.0 {
        (eps * v1.y().abs() / d).min(eps * v2.y().abs() / d)
    } else {
        eps / 2.0
    };
    Ok(c * (1.0 - delta) - distance(z, m))
}

/// The randomized suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    MetricAxioms,
    Geodesic,
    Takahashi,
    WPointAgreement,
    BallConvexity,
    DistanceConvexity,
    Npbc,
    StrictConvexity,
    TotalConvexity,
    ExternalConvexity,
    UniformConvexity,
    UniformConvexityDegenerate,
}

impl Check {
    pub fn all() -> [Check; 12] {
        [
            Check::MetricAxioms,
            Check::Geodesic,
            Check::Takahashi,
            Check::WPointAgreement,
            Check::BallConvexity,
            Check::DistanceConvexity,
            Check::Npbc,
            Check::StrictConvexity,
            Check::TotalConvexity,
            Check::ExternalConvexity,
            Check::UniformConvexity,
            Check::UniformConvexityDegenerate,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Check::MetricAxioms => "metric-axioms",
            Check::Geodesic => "geodesic",
            Check::Takahashi => "takahashi",
            Check::WPointAgreement => "w-point-agreement",
            Check::BallConvexity => "ball-convexity",
            Check::DistanceConvexity => "distance-convexity",
            Check::Npbc => "npbc",
            Check::StrictConvexity => "strict-convexity",
            Check::TotalConvexity => "total-convexity",
            Check::ExternalConvexity => "external-convexity",
            Check::UniformConvexity => "uniform-convexity",
            Check::UniformConvexityDegenerate => "uniform-convexity-degenerate",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::all()
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Check::all().into_iter().map(Check::name).collect();
                format!("unknown check '{s}', expected one of: {}", names.join(", "))
            })
    }
}

/// The sample achieving the smallest margin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct WorstCase {
    pub points: Vec<Point>,
    pub params: Vec<f64>,
}

/// Outcome of one randomized suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub samples: u64,
    pub violations: u64,
    pub min_margin: f64,
    pub worst_case: WorstCase,
}

const DYADIC_SCALE: f64 = 1_048_576.0;

/// Random dyadic rational in `[lo, hi]` with 20 fractional bits. Sums and
/// differences of such values (and products with other dyadics of small
/// total width) are exact in double precision.
fn dyadic(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let lo_k = (lo * DYADIC_SCALE).ceil() as i64;
    let hi_k = (hi * DYADIC_SCALE).floor() as i64;
    rng.gen_range(lo_k..=hi_k) as f64 / DYADIC_SCALE
}

fn dyadic_point(rng: &mut ChaCha8Rng) -> Point {
    Point::raw(dyadic(rng, -10.0, 10.0), dyadic(rng, -10.0, 10.0))
}

/// Random point at exact distance `rho` from `center`: straight up or down
/// within the column, or sideways through the axis with the leftover budget
/// split between horizontal travel and the final height.
fn sphere_point(center: Point, rho: f64, rng: &mut ChaCha8Rng) -> Point {
    let h = center.y().abs();
    let span = rho - h;
    let lateral_possible = (span * DYADIC_SCALE).floor() as i64 >= 1;
    if rng.gen_range(0..4u32) >= 2 && lateral_possible {
        let dx_mag = rng.gen_range(1..=(span * DYADIC_SCALE).floor() as i64) as f64 / DYADIC_SCALE;
        let dx = if rng.gen::<bool>() { dx_mag } else { -dx_mag };
        let wy_abs = span - dx_mag;
        let wy = if rng.gen::<bool>() { wy_abs } else { -wy_abs };
        Point::raw(center.x() + dx, wy)
    } else if rng.gen::<bool>() {
        Point::raw(center.x(), center.y() + rho)
    } else {
        Point::raw(center.x(), center.y() - rho)
    }
}

/// Draw one sample for the check and compute its margin.
fn sample_margin(check: Check, rng: &mut ChaCha8Rng) -> (Vec<Point>, Vec<f64>, f64) {
    match check {
        Check::MetricAxioms => {
            let p = dyadic_point(rng);
            let q = dyadic_point(rng);
            let r = dyadic_point(rng);
            let margin = metric_axiom_margin(p, q, r);
            (vec![p, q, r], vec![], margin)
        }
        Check::Geodesic => {
            let p = dyadic_point(rng);
            let q = dyadic_point(rng);
            let d = distance(p, q);
            let s = dyadic(rng, 0.0, 1.0) * d;
            let margin = geodesic_margin(p, q, s);
            (vec![p, q], vec![s], margin)
        }
        Check::Takahashi => {
            let u = dyadic_point(rng);
            let v1 = dyadic_point(rng);
            let v2 = dyadic_point(rng);
            let lambda = dyadic(rng, 0.0, 1.0);
            let margin = takahashi_residual(u, v1, v2, lambda).expect("lambda in range");
            (vec![u, v1, v2], vec![lambda], margin)
        }
        Check::WPointAgreement => {
            let v1 = dyadic_point(rng);
            let v2 = dyadic_point(rng);
            let lambda = match rng.gen_range(0..100u32) {
                0 => 0.0,
                1 => 1.0,
                _ => dyadic(rng, 0.0, 1.0),
            };
            let margin = w_agreement_margin(v1, v2, lambda);
            (vec![v1, v2], vec![lambda], margin)
        }
        Check::BallConvexity => {
            let (x, y, z) = (dyadic_point(rng), dyadic_point(rng), dyadic_point(rng));
            (vec![x, y, z], vec![], ball_convexity_margin(x, y, z))
        }
        Check::DistanceConvexity => {
            let (x, y, z) = (dyadic_point(rng), dyadic_point(rng), dyadic_point(rng));
            (vec![x, y, z], vec![], distance_convexity_margin(x, y, z))
        }
        Check::Npbc => {
            let (x, y, z) = (dyadic_point(rng), dyadic_point(rng), dyadic_point(rng));
            (vec![x, y, z], vec![], npbc_margin(x, y, z))
        }
        Check::StrictConvexity => loop {
            let v1 = dyadic_point(rng);
            let rho = dyadic(rng, 0.01, 8.0);
            let v2 = sphere_point(v1, rho, rng);
            let v3 = sphere_point(v1, rho, rng);
            if v2 == v3 {
                continue;
            }
            let d23 = distance(v2, v3);
            let u = dyadic(rng, 0.0, 1.0);
            let s = u * d23;
            if s == 0.0 || s == d23 {
                continue;
            }
            let t = point_at_arclength(v2, v3, s).expect("interior arclength");
            if t == v2 || t == v3 {
                continue;
            }
            let margin =
                strict_convexity_check(v1, v2, v3, t).expect("constructed sample is admissible");
            return (vec![v1, v2, v3, t], vec![rho, u], margin);
        },
        Check::TotalConvexity => loop {
            let v1 = dyadic_point(rng);
            let v2 = dyadic_point(rng);
            if v1 == v2 {
                continue;
            }
            let d = distance(v1, v2);
            let a = dyadic(rng, 0.0, 1.0) * d;
            if a == 0.0 || a == d {
                continue;
            }
            let margin = split_margin(v1, v2, a);
            return (vec![v1, v2], vec![a], margin);
        },
        Check::ExternalConvexity => loop {
            let v1 = dyadic_point(rng);
            let v2 = dyadic_point(rng);
            if v1 == v2 {
                continue;
            }
            let d = distance(v1, v2);
            let k = d * (1.0 + dyadic(rng, 0.0, 1.0));
            if !(k > d) {
                continue;
            }
            let set = prolongation_set(v1, v2, k).expect("k exceeds the distance");
            let mut worst_margin = f64::INFINITY;
            let mut worst_z = v2;
            for z in set.sample(9) {
                let m = prolongation_margin(v1, v2, k, z);
                if m < worst_margin {
                    worst_margin = m;
                    worst_z = z;
                }
            }
            return (vec![v1, v2, worst_z], vec![k], worst_margin);
        },
        Check::UniformConvexity => uc_sample(rng, false),
        Check::UniformConvexityDegenerate => uc_sample(rng, true),
    }
}

fn uc_sample(rng: &mut ChaCha8Rng, degenerate: bool) -> (Vec<Point>, Vec<f64>, f64) {
    loop {
        let mut v1 = dyadic_point(rng);
        let mut v2 = dyadic_point(rng);
        if degenerate {
            v1 = Point::raw(v1.x(), 0.0);
            if rng.gen::<bool>() {
                v2 = Point::raw(v2.x(), 0.0);
            }
        } else {
            // Keep both endpoints meaningfully off the axis.
            if v1.y().abs() < 0.01 || v2.y().abs() < 0.01 {
                continue;
            }
        }
        if v1 == v2 {
            continue;
        }
        let z = dyadic_point(rng);
        let d = distance(v1, v2);
        let d1 = distance(v1, z);
        let d2 = distance(v2, z);
        let c = d1.max(d2) * (1.0 + dyadic(rng, 0.0, 1.0));
        if !(c > 0.0) {
            continue;
        }
        let t = dyadic(rng, 0.0, 1.0);
        let eps = t * d / c;
        if !(eps > 0.0) {
            continue;
        }
        // Re-verify with the same float predicates the checker applies, in
        // case division rounding broke admissibility.
        if !(d1 <= c && d2 <= c && d >= c * eps) {
            continue;
        }
        let margin =
            uniform_convexity_check(v1, v2, z, c, eps).expect("constructed sample is admissible");
        return (vec![v1, v2, z], vec![c, eps], margin);
    }
}

/// Margin encoding of the metric axioms. Exact identities fold to zero when
/// they hold and to the most negative finite value when they break; the
/// triangle inequality contributes its smallest residual.
fn metric_axiom_margin(p: Point, q: Point, r: Point) -> f64 {
    let exact_ok = distance(p, q).to_bits() == distance(q, p).to_bits()
        && distance(q, r).to_bits() == distance(r, q).to_bits()
        && distance(p, r).to_bits() == distance(r, p).to_bits()
        && distance(p, p) == 0.0
        && distance(q, q) == 0.0
        && distance(r, r) == 0.0
        && ((p == q) == (distance(p, q) == 0.0))
        && ((q == r) == (distance(q, r) == 0.0))
        && ((p == r) == (distance(p, r) == 0.0))
        && distance(p, q) >= 0.0
        && distance(q, r) >= 0.0
        && distance(p, r) >= 0.0;
    if !exact_ok {
        return -f64::MAX;
    }
    let t1 = distance(p, q) + distance(q, r) - distance(p, r);
    let t2 = distance(q, r) + distance(r, p) - distance(q, p);
    let t3 = distance(r, p) + distance(p, q) - distance(r, q);
    t1.min(t2).min(t3)
}

fn geodesic_margin(p: Point, q: Point, s: f64) -> f64 {
    let d = distance(p, q);
    match point_at_arclength(p, q, s) {
        Ok(z) => -((distance(p, z) - s).abs().max((distance(z, q) - (d - s)).abs())),
        Err(_) => -f64::MAX,
    }
}

fn w_agreement_margin(v1: Point, v2: Point, lambda: f64) -> f64 {
    let a = w_point(v1, v2, lambda).expect("lambda in range");
    let b = w_point_arclength(v1, v2, lambda).expect("lambda in range");
    -((a.x() - b.x()).abs().max((a.y() - b.y()).abs()))
}

fn split_margin(v1: Point, v2: Point, a: f64) -> f64 {
    let d = distance(v1, v2);
    match split_distance(v1, v2, a) {
        Ok(z) => -((distance(v1, z) - a).abs().max((distance(z, v2) - (d - a)).abs())),
        Err(_) => -f64::MAX,
    }
}

fn prolongation_margin(v1: Point, v2: Point, k: f64, z: Point) -> f64 {
    let d = distance(v1, v2);
    -((distance(v1, z) - k).abs().max((distance(v2, z) - (k - d)).abs()))
}

/// Run one randomized suite. Deterministic for a fixed seed; a violation is
/// a sample whose margin drops below `-tol`.
pub fn run_check(check: Check, samples: u64, seed: u64, tol: f64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0u64;
    let mut min_margin = f64::INFINITY;
    let mut worst = WorstCase::default();
    for _ in 0..samples {
        let (points, params, margin) = sample_margin(check, &mut rng);
        if margin < -tol {
            violations += 1;
        }
        if margin < min_margin {
            min_margin = margin;
            worst = WorstCase { points, params };
        }
    }
    if samples == 0 {
        min_margin = 0.0;
    }
    PropertyReport {
        property: check.name().to_string(),
        samples,
        violations,
        min_margin,
        worst_case: worst,
    }
}

/// Recompute the margin of a recorded worst case, for consistency audits.
pub fn recompute_margin(check: Check, wc: &WorstCase) -> Result<f64> {
    let pt = |i: usize| wc.points.get(i).copied().ok_or(Error::MalformedWitness);
    let par = |i: usize| wc.params.get(i).copied().ok_or(Error::MalformedWitness);
    match check {
        Check::MetricAxioms => Ok(metric_axiom_margin(pt(0)?, pt(1)?, pt(2)?)),
        Check::Geodesic => Ok(geodesic_margin(pt(0)?, pt(1)?, par(0)?)),
        Check::Takahashi => takahashi_residual(pt(0)?, pt(1)?, pt(2)?, par(0)?),
        Check::WPointAgreement => Ok(w_agreement_margin(pt(0)?, pt(1)?, par(0)?)),
        Check::BallConvexity => Ok(ball_convexity_margin(pt(0)?, pt(1)?, pt(2)?)),
        Check::DistanceConvexity => Ok(distance_convexity_margin(pt(0)?, pt(1)?, pt(2)?)),
        Check::Npbc => Ok(npbc_margin(pt(0)?, pt(1)?, pt(2)?)),
        Check::StrictConvexity => strict_convexity_check(pt(0)?, pt(1)?, pt(2)?, pt(3)?),
        Check::TotalConvexity => Ok(split_margin(pt(0)?, pt(1)?, par(0)?)),
        Check::ExternalConvexity => Ok(prolongation_margin(pt(0)?, pt(1)?, par(0)?, pt(2)?)),
        Check::UniformConvexity | Check::UniformConvexityDegenerate => {
            uniform_convexity_check(pt(0)?, pt(1)?, pt(2)?, par(0)?, par(1)?)
        }
    }
}
