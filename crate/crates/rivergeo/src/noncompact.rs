//! Measures of noncompactness and their moduli.
//!
//! Compact subsets of the river plane are exactly the closed bounded sets
//! that carry height only over finitely many columns. What obstructs
//! compactness is mass at height `h` spread over a continuum of columns:
//! any two points at height `h` in different columns are at least `2h`
//! apart. The escape height of a set captures the worst such height, and
//! the classical set measures are exact multiples of it.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::Point;
use crate::sets::{ball_spread, SetDescription};

/// Which set measure of noncompactness to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// Diameter-based measure: smallest diameter bound for a finite split.
    Alpha,
    /// Radius-based measure: smallest radius of a finite ball cover.
    Chi,
    /// Separation measure: largest spacing of an infinite separated subset.
    Beta,
}

impl Measure {
    pub fn max_epsilon(self) -> f64 {
        match self {
            Measure::Alpha => 2.0,
            Measure::Chi | Measure::Beta => 1.0,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Measure::Alpha => "alpha",
            Measure::Chi => "chi",
            Measure::Beta => "beta",
        };
        f.write_str(s)
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "alpha" => Ok(Measure::Alpha),
            "chi" => Ok(Measure::Chi),
            "beta" => Ok(Measure::Beta),
            other => Err(format!("unknown measure '{other}', expected alpha, chi or beta")),
        }
    }
}

/// Escape height of one primitive, with the signed height and a flag for
/// whether the primitive spans more than one column at all.
fn member_escape(member: &SetDescription) -> (f64, f64) {
    match member {
        SetDescription::FinitePoints { .. } | SetDescription::VerticalSegment { .. } => (0.0, 0.0),
        SetDescription::Box { a, b, c, d } => {
            if a == b {
                (0.0, 0.0)
            } else {
                let signed = if d.abs() >= c.abs() { *d } else { *c };
                (signed.abs(), signed)
            }
        }
        SetDescription::Ball { center, radius, .. } => {
            let s = ball_spread(*center, *radius);
            if s > 0.0 {
                (s, s)
            } else {
                (0.0, 0.0)
            }
        }
        SetDescription::UnionOf { members } => members
            .iter()
            .map(member_escape)
            .fold((0.0, 0.0), |acc, cur| if cur.0 > acc.0 { cur } else { acc }),
    }
}

/// Largest height at which the set occupies a continuum of columns.
/// Zero exactly for the relatively compact descriptions.
pub fn y_star(set: &SetDescription) -> f64 {
    member_escape(set).0
}

/// The member and signed height responsible for the escape height.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MncWitness {
    pub member: usize,
    pub primitive: String,
    pub height: f64,
}

/// All three measures of one set, with the witness behind them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MncReport {
    pub y_star: f64,
    pub alpha: f64,
    pub chi: f64,
    pub beta: f64,
    pub witness: MncWitness,
}

/// Compute the measures of noncompactness of a set. All three are exact
/// multiples of the escape height: diameters must cover both signs of a
/// height band while radii and separations see it once.
pub fn mnc(set: &SetDescription) -> MncReport {
    let (member, primitive, height) = match set {
        SetDescription::UnionOf { members } => {
            let mut best = 0;
            let mut best_escape = f64::NEG_INFINITY;
            for (i, m) in members.iter().enumerate() {
                let (e, _) = member_escape(m);
                if e > best_escape {
                    best_escape = e;
                    best = i;
                }
            }
            let (_, signed) = member_escape(&members[best]);
            (best, members[best].to_string(), signed)
        }
        _ => {
            let (_, signed) = member_escape(set);
            (0, set.to_string(), signed)
        }
    };
    let y = y_star(set);
    MncReport {
        y_star: y,
        alpha: 2.0 * y,
        chi: y,
        beta: y,
        witness: MncWitness {
            member,
            primitive,
            height,
        },
    }
}

/// Search bookkeeping for a modulus estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub evaluations: u64,
    #[serde(skip)]
    pub runtime_seconds: f64,
}

/// Result of estimating a modulus of noncompactness at one epsilon.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusEstimate {
    pub measure: Measure,
    pub epsilon: f64,
    pub value: f64,
    pub argmin_set: SetDescription,
    pub search_stats: SearchStats,
}

struct Search {
    best_d: f64,
    best_set: Option<SetDescription>,
    evaluations: u64,
}

impl Search {
    fn offer(&mut self, d: f64, make: impl FnOnce() -> SetDescription) {
        self.evaluations += 1;
        if d > self.best_d {
            self.best_d = d;
            self.best_set = Some(make());
        }
    }
}

/// Evenly spaced samples over `[lo, hi]` with exact endpoints. Empty when
/// the range is inverted, a single sample when it is degenerate.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if hi < lo {
        return Vec::new();
    }
    if hi == lo {
        return vec![lo];
    }
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Scan axis-backed boxes `[a, b] x [0, h]`. Every candidate is convex,
/// sits inside the unit ball when `b + h <= 1`, and keeps its measure at or
/// above the target when `h >= h_min`. Its distance from the origin is `a`.
#[allow(clippy::too_many_arguments)]
fn scan_boxes(
    search: &mut Search,
    n: usize,
    h_min: f64,
    h_range: (f64, f64),
    b_range: Option<(f64, f64)>,
    a_range: Option<(f64, f64)>,
) {
    for h in linspace(h_range.0.max(h_min), h_range.1.min(1.0), n) {
        let (b_lo, b_hi) = b_range.unwrap_or((0.0, 1.0));
        for b in linspace(b_lo.max(0.0), b_hi.min(1.0 - h), n) {
            let (a_lo, a_hi) = a_range.unwrap_or((0.0, 1.0));
            for a in linspace(a_lo.max(0.0), a_hi.min(b), n) {
                if a >= b {
                    continue;
                }
                search.offer(a, || SetDescription::Box { a, b, c: 0.0, d: h });
            }
        }
    }
}

/// Scan closed balls with center `(x, y)` in the first quadrant. The ball
/// stays inside the unit ball when `x + y + r <= 1` (prolonging through the
/// center attains the bound) and keeps its measure when `r >= h_min + y`.
/// Its distance from the origin is `max(0, x + y - r)`.
#[allow(clippy::too_many_arguments)]
fn scan_balls(
    search: &mut Search,
    n: usize,
    h_min: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
    r_range: Option<(f64, f64)>,
) {
    for x in linspace(x_range.0.max(0.0), x_range.1.min(1.0), n) {
        for y in linspace(y_range.0.max(0.0), y_range.1.min(1.0), n) {
            let (r_lo, r_hi) = r_range.unwrap_or((0.0, 1.0));
            for r in linspace(r_lo.max(h_min + y), r_hi.min(1.0 - x - y), n) {
                let d = (x + y - r).max(0.0);
                search.offer(d, || SetDescription::Ball {
                    center: Point::raw(x, y),
                    radius: r,
                    closed: true,
                });
            }
        }
    }
}

/// Estimate the modulus of noncompactness: over subsets of the closed unit
/// ball around the origin whose chosen measure is at least `epsilon`, the
/// infimum of `1 - d(0, A)`. The search minimizes by pushing candidate sets
/// as far from the origin as the constraints allow, scanning two closed-form
/// families on a grid and then refining one step around the winner. Boxes
/// are scanned first and only strict improvements replace the incumbent, so
/// results are deterministic.
pub fn modulus_estimate(
    measure: Measure,
    epsilon: f64,
    resolution: usize,
) -> Result<ModulusEstimate> {
    let max = measure.max_epsilon();
    if !(epsilon > 0.0 && epsilon <= max) {
        return Err(Error::EpsilonOutOfRange { eps: epsilon, max });
    }
    if resolution < 2 {
        return Err(Error::ResolutionTooSmall);
    }
    let h_min = match measure {
        Measure::Alpha => epsilon / 2.0,
        Measure::Chi | Measure::Beta => epsilon,
    };
    let n = resolution;
    let started = Instant::now();
    let mut search = Search {
        best_d: f64::NEG_INFINITY,
        best_set: None,
        evaluations: 0,
    };

    scan_boxes(&mut search, n, h_min, (h_min, 1.0), None, None);
    scan_balls(&mut search, n, h_min, (0.0, 1.0), (0.0, 1.0), None);

    // Refine one coarse step around the winner, re-clamping the ranges that
    // depend on the outer coordinates.
    let step = 1.0 / (n - 1) as f64;
    match search.best_set.clone() {
        Some(SetDescription::Box { a, b, d: h, .. }) => {
            let h_step = (1.0 - h_min).max(step) * step;
            let b_step = (1.0 - h).max(step) * step;
            let a_step = b.max(step) * step;
            scan_boxes(
                &mut search,
                n,
                h_min,
                (h - h_step, h + h_step),
                Some((b - b_step, b + b_step)),
                Some((a - a_step, a + a_step)),
            );
        }
        Some(SetDescription::Ball { center, radius, .. }) => {
            let r_span = (1.0 - center.x() - center.y() - h_min - center.y()).max(step);
            scan_balls(
                &mut search,
                n,
                h_min,
                (center.x() - step, center.x() + step),
                (center.y() - step, center.y() + step),
                Some((radius - r_span * step, radius + r_span * step)),
            );
        }
        _ => {}
    }

    let argmin_set = search
        .best_set
        .expect("at least the unit ball is always admissible");
    Ok(ModulusEstimate {
        measure,
        epsilon,
        value: 1.0 - search.best_d,
        argmin_set,
        search_stats: SearchStats {
            evaluations: search.evaluations,
            runtime_seconds: started.elapsed().as_secs_f64(),
        },
    })
}

/// Largest epsilon on the grid at which the modulus estimate still vanishes
/// (below a small floor), or zero when it is positive on the whole grid.
pub fn nuc_characteristic(measure: Measure, grid: &[f64], resolution: usize) -> Result<f64> {
    let mut largest = 0.0f64;
    for &eps in grid {
        let est = modulus_estimate(measure, eps, resolution)?;
        if est.value <= 1e-3 && eps > largest {
            largest = eps;
        }
    }
    Ok(largest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::distance_to_set;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    fn boxed(a: f64, b: f64, c: f64, d: f64) -> SetDescription {
        SetDescription::Box { a, b, c, d }
    }

    fn ball(x: f64, y: f64, r: f64) -> SetDescription {
        SetDescription::Ball {
            center: pt(x, y),
            radius: r,
            closed: true,
        }
    }

    #[test]
    fn escape_height_reference_values() {
        assert_eq!(y_star(&boxed(0.0, 1.0, -0.2, 0.5)), 0.5);
        assert_eq!(y_star(&ball(0.3, -0.3, 1.0)), 0.7);
        assert_eq!(y_star(&ball(0.0, 2.0, 1.0)), 0.0);
    }

    #[test]
    fn single_column_sets_have_zero_escape() {
        assert_eq!(y_star(&boxed(2.0, 2.0, -5.0, 7.0)), 0.0);
        assert_eq!(
            y_star(&SetDescription::VerticalSegment {
                x: 1.0,
                y_lo: -4.0,
                y_hi: 9.0
            }),
            0.0
        );
        assert_eq!(
            y_star(&SetDescription::FinitePoints {
                points: vec![pt(0.0, 5.0), pt(3.0, -8.0)]
            }),
            0.0
        );
    }

    #[test]
    fn measure_identities() {
        let sets = [
            boxed(0.0, 1.0, -0.2, 0.5),
            ball(0.3, -0.3, 1.0),
            SetDescription::UnionOf {
                members: vec![boxed(0.0, 1.0, -0.2, 0.5), ball(0.3, -0.3, 1.0)],
            },
        ];
        for set in sets {
            let report = mnc(&set);
            assert_eq!(report.alpha, 2.0 * report.y_star);
            assert_eq!(report.chi, report.y_star);
            assert_eq!(report.beta, report.y_star);
            assert_eq!(report.y_star, y_star(&set));
        }
    }

    #[test]
    fn witness_points_at_the_responsible_member() {
        let set = SetDescription::UnionOf {
            members: vec![
                SetDescription::VerticalSegment {
                    x: 0.0,
                    y_lo: -9.0,
                    y_hi: 9.0,
                },
                boxed(0.0, 1.0, -0.2, 0.5),
                ball(0.3, -0.3, 1.0),
            ],
        };
        let report = mnc(&set);
        assert_eq!(report.y_star, 0.7);
        assert_eq!(report.witness.member, 2);
        assert_eq!(report.witness.height, 0.7);
        assert_eq!(report.witness.primitive, "ball center (0.3, -0.3) radius 1");
    }

    #[test]
    fn witness_signed_height_prefers_positive_on_ties() {
        let report = mnc(&boxed(0.0, 1.0, -0.5, 0.5));
        assert_eq!(report.witness.height, 0.5);
        let report = mnc(&boxed(0.0, 1.0, -0.8, 0.5));
        assert_eq!(report.witness.height, -0.8);
    }

    #[test]
    fn modulus_tracks_epsilon_for_each_measure() {
        let est = modulus_estimate(Measure::Alpha, 1.0, 100).unwrap();
        assert!((est.value - 0.5).abs() <= 0.02, "alpha value {}", est.value);
        let est = modulus_estimate(Measure::Chi, 0.5, 100).unwrap();
        assert!((est.value - 0.5).abs() <= 0.02, "chi value {}", est.value);
        let est = modulus_estimate(Measure::Beta, 0.3, 100).unwrap();
        assert!((est.value - 0.3).abs() <= 0.02, "beta value {}", est.value);
    }

    #[test]
    fn modulus_argmin_is_consistent_with_its_value() {
        let est = modulus_estimate(Measure::Chi, 0.4, 80).unwrap();
        let d = distance_to_set(pt(0.0, 0.0), &est.argmin_set);
        assert!((1.0 - d - est.value).abs() <= 1e-12);
        assert!(est.search_stats.evaluations > 0);
    }

    #[test]
    fn extreme_epsilon_forces_the_unit_ball() {
        let est = modulus_estimate(Measure::Alpha, 2.0, 50).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.argmin_set, ball(0.0, 0.0, 1.0));
        let est = modulus_estimate(Measure::Chi, 1.0, 50).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.argmin_set, ball(0.0, 0.0, 1.0));
    }

    #[test]
    fn epsilon_and_resolution_are_validated() {
        assert!(matches!(
            modulus_estimate(Measure::Alpha, 0.0, 50),
            Err(Error::EpsilonOutOfRange { .. })
        ));
        assert!(matches!(
            modulus_estimate(Measure::Alpha, 2.5, 50),
            Err(Error::EpsilonOutOfRange { .. })
        ));
        assert!(matches!(
            modulus_estimate(Measure::Chi, 1.5, 50),
            Err(Error::EpsilonOutOfRange { .. })
        ));
        assert!(matches!(
            modulus_estimate(Measure::Chi, 0.5, 1),
            Err(Error::ResolutionTooSmall)
        ));
    }

    #[test]
    fn characteristic_vanishes_on_a_coarse_grid() {
        let grid = [0.25, 0.5, 0.75, 1.0];
        assert_eq!(nuc_characteristic(Measure::Chi, &grid, 40).unwrap(), 0.0);
    }

    #[test]
    fn runtime_is_not_serialized() {
        let est = modulus_estimate(Measure::Chi, 0.5, 20).unwrap();
        let json = serde_json::to_string(&est).unwrap();
        assert!(!json.contains("runtime"));
        assert!(json.contains("evaluations"));
    }
}
