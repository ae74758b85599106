//! Convex combinations along geodesics.
//!
//! For points `v1`, `v2` and a weight `lambda` in [0, 1], the combination
//! point `z` is the unique point with `d(z, v1) = (1 - lambda) * d(v1, v2)`
//! and `d(z, v2) = lambda * d(v1, v2)`. It always lies on the geodesic
//! segment, so it can be computed either from closed-form case formulas or by
//! walking the segment to the matching arclength. Both routes are exposed;
//! they must agree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{distance, Point};
use crate::segment::point_at_arclength;

/// Which part of the geodesic a combination point lands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WCaseKind {
    /// On the vertical piece through the first point (weights near 1).
    VerticalAtX1,
    /// On the axis between the two feet.
    OnRiver,
    /// On the vertical piece through the second point (weights near 0).
    VerticalAtX2,
    /// Both points share a column, so the whole segment is one vertical piece.
    VerticalPair,
}

/// A case together with the closed weight interval on which it applies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WCase {
    pub kind: WCaseKind,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::LambdaOutOfRange(lambda))
    }
}

/// Convex combination by closed-form case analysis.
///
/// Weights 0 and 1 return the endpoints exactly. Points in distinct columns
/// reduce to the left-to-right orientation by swapping the arguments and
/// replacing `lambda` with `1 - lambda`.
pub fn w_point(v1: Point, v2: Point, lambda: f64) -> Result<Point> {
    check_lambda(lambda)?;
    if v1 == v2 {
        return Ok(v1);
    }
    let (x1, y1) = (v1.x(), v1.y());
    let (x2, y2) = (v2.x(), v2.y());
    if x1 == x2 {
        return Ok(Point::raw(x1, lambda * y1 + (1.0 - lambda) * y2));
    }
    if x1 > x2 {
        return w_point(v2, v1, 1.0 - lambda);
    }
    let dx = x2 - x1;
    let d = (y1.abs() + y2.abs()) + dx;
    let t_a = 1.0 - y1.abs() / d;
    let t_b = 1.0 - (y1.abs() + dx) / d;
    if lambda >= t_a {
        // Descending the column of v1.
        let y = if y1 >= 0.0 {
            lambda * y1 - (1.0 - lambda) * (y2.abs() + dx)
        } else {
            lambda * y1 + (1.0 - lambda) * (y2.abs() + dx)
        };
        Ok(Point::raw(x1, y))
    } else if lambda >= t_b {
        // Running along the axis.
        let x = -lambda * y1.abs() + (1.0 - lambda) * y2.abs() + lambda * x1 + (1.0 - lambda) * x2;
        Ok(Point::raw(x, 0.0))
    } else {
        // Climbing the column of v2.
        let y = if y2 >= 0.0 {
            -lambda * y1.abs() + (1.0 - lambda) * y2 - lambda * dx
        } else {
            lambda * y1.abs() + (1.0 - lambda) * y2 + lambda * dx
        };
        Ok(Point::raw(x2, y))
    }
}

/// The same combination computed by walking the geodesic: the point at
/// arclength `(1 - lambda) * d(v1, v2)` from `v1`.
pub fn w_point_arclength(v1: Point, v2: Point, lambda: f64) -> Result<Point> {
    check_lambda(lambda)?;
    let d = distance(v1, v2);
    point_at_arclength(v1, v2, (1.0 - lambda) * d)
}

/// Case breakdown of the whole weight range for a fixed pair, ordered by
/// ascending weight. Interval endpoints are shared: the boundary weight maps
/// to the foot of the corresponding column, which both neighbours describe.
pub fn w_cases(v1: Point, v2: Point) -> Vec<WCase> {
    if v1.x() == v2.x() {
        return vec![WCase {
            kind: WCaseKind::VerticalPair,
            lambda_min: 0.0,
            lambda_max: 1.0,
        }];
    }
    let d = distance(v1, v2);
    let t_a = 1.0 - v1.y().abs() / d;
    let t_b = v2.y().abs() / d;
    vec![
        WCase {
            kind: WCaseKind::VerticalAtX2,
            lambda_min: 0.0,
            lambda_max: t_b,
        },
        WCase {
            kind: WCaseKind::OnRiver,
            lambda_min: t_b,
            lambda_max: t_a,
        },
        WCase {
            kind: WCaseKind::VerticalAtX1,
            lambda_min: t_a,
            lambda_max: 1.0,
        },
    ]
}

/// Which case a specific weight falls into. Boundary weights resolve to the
/// vertical pieces, matching the closed intervals reported by `w_cases`.
pub fn w_case_at(v1: Point, v2: Point, lambda: f64) -> Result<WCaseKind> {
    check_lambda(lambda)?;
    if v1.x() == v2.x() {
        return Ok(WCaseKind::VerticalPair);
    }
    let d = distance(v1, v2);
    if lambda >= 1.0 - v1.y().abs() / d {
        Ok(WCaseKind::VerticalAtX1)
    } else if lambda <= v2.y().abs() / d {
        Ok(WCaseKind::VerticalAtX2)
    } else {
        Ok(WCaseKind::OnRiver)
    }
}

/// Convexity defect of the distance from `u` to a combination point:
/// the weighted average of the distances to the endpoints minus the distance
/// to the combination. Nonnegative for every `u` when combinations behave
/// convexly.
pub fn takahashi_residual(u: Point, v1: Point, v2: Point, lambda: f64) -> Result<f64> {
    let z = w_point(v1, v2, lambda)?;
    Ok(lambda * distance(u, v1) + (1.0 - lambda) * distance(u, v2) - distance(u, z))
}

/// A point strictly between two distinct points: the geodesic midpoint, with
/// a one-third fallback should rounding ever collapse it onto an endpoint.
pub fn menger_witness(p: Point, q: Point) -> Result<Point> {
    if p == q {
        return Err(Error::IdenticalPoints);
    }
    let d = distance(p, q);
    let z = point_at_arclength(p, q, d / 2.0)?;
    if z == p || z == q {
        return point_at_arclength(p, q, d / 3.0);
    }
    Ok(z)
}
