//! Set primitives, point membership, distance to a set, an exact convexity
//! decision, and convex hulls of finite point sets.
//!
//! Convexity here means geodesic convexity: a set is convex when it contains
//! the whole geodesic segment between any two of its points. For the
//! supported primitives this is decidable exactly. A set spanning more than
//! one column is convex precisely when every vertical slice is one interval
//! that touches the axis and the columns it occupies form one interval; a set
//! confined to a single column is convex precisely when its slice there is
//! one interval.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{distance, Point};

fn default_true() -> bool {
    true
}

/// Description of a subset of the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SetDescription {
    /// A finite list of points.
    #[serde(rename = "points")]
    FinitePoints { points: Vec<Point> },
    /// An axis-aligned rectangle `[a, b] x [c, d]`.
    #[serde(rename = "box")]
    Box { a: f64, b: f64, c: f64, d: f64 },
    /// A metric ball. `closed` balls include the boundary sphere.
    #[serde(rename = "ball")]
    Ball {
        center: Point,
        radius: f64,
        #[serde(default = "default_true")]
        closed: bool,
    },
    /// A vertical segment `{x} x [y_lo, y_hi]`.
    #[serde(rename = "vseg")]
    VerticalSegment { x: f64, y_lo: f64, y_hi: f64 },
    /// A finite union of the primitives above (not nested).
    #[serde(rename = "union")]
    UnionOf { members: Vec<SetDescription> },
}

use SetDescription::{Ball, FinitePoints, UnionOf, VerticalSegment};

impl SetDescription {
    /// Check structural soundness: finite numbers, ordered interval bounds,
    /// positive radii, nonempty lists, and flat unions.
    pub fn validate(&self) -> Result<()> {
        match self {
            FinitePoints { points } => {
                if points.is_empty() {
                    return Err(Error::EmptyPointList);
                }
                Ok(())
            }
            SetDescription::Box { a, b, c, d } => {
                let finite = a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite();
                if !finite || a > b || c > d {
                    return Err(Error::InvalidInterval);
                }
                Ok(())
            }
            Ball { radius, .. } => {
                if !radius.is_finite() || *radius <= 0.0 {
                    return Err(Error::InvalidRadius);
                }
                Ok(())
            }
            VerticalSegment { x, y_lo, y_hi } => {
                if !x.is_finite() || !y_lo.is_finite() || !y_hi.is_finite() || y_lo > y_hi {
                    return Err(Error::InvalidInterval);
                }
                Ok(())
            }
            UnionOf { members } => {
                if members.is_empty() {
                    return Err(Error::MalformedUnion);
                }
                for m in members {
                    if matches!(m, UnionOf { .. }) {
                        return Err(Error::MalformedUnion);
                    }
                    m.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Membership test with metric tolerance `tol`. Closed primitives accept
    /// points within `tol` of the set; open balls use a strict comparison
    /// against the inflated radius.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        match self {
            Ball {
                center,
                radius,
                closed,
            } => {
                let d = distance(p, *center);
                if *closed {
                    d <= radius + tol
                } else {
                    d < radius + tol
                }
            }
            UnionOf { members } => members.iter().any(|m| m.contains(p, tol)),
            _ => distance_to_set(p, self) <= tol,
        }
    }
}

impl fmt::Display for SetDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinitePoints { points } => write!(f, "points ({})", points.len()),
            SetDescription::Box { a, b, c, d } => write!(f, "box [{a}, {b}] x [{c}, {d}]"),
            Ball {
                center,
                radius,
                closed,
            } => {
                let kind = if *closed { "ball" } else { "open ball" };
                write!(f, "{kind} center {center} radius {radius}")
            }
            VerticalSegment { x, y_lo, y_hi } => write!(f, "vseg {{{x}}} x [{y_lo}, {y_hi}]"),
            UnionOf { members } => write!(f, "union of {} sets", members.len()),
        }
    }
}

/// Distance from `y` to the interval `[lo, hi]` on a line.
fn interval_dist(y: f64, lo: f64, hi: f64) -> f64 {
    if y < lo {
        lo - y
    } else if y > hi {
        y - hi
    } else {
        0.0
    }
}

/// Smallest absolute value attained on `[lo, hi]`.
fn interval_min_abs(lo: f64, hi: f64) -> f64 {
    interval_dist(0.0, lo, hi)
}

/// River distance from a point to a set (its closure, for open balls).
///
/// Targets in the same column are reached vertically; any other target costs
/// both heights plus the horizontal gap, and those terms minimize
/// independently over the set.
pub fn distance_to_set(p: Point, set: &SetDescription) -> f64 {
    match set {
        FinitePoints { points } => points
            .iter()
            .map(|q| distance(p, *q))
            .fold(f64::INFINITY, f64::min),
        SetDescription::Box { a, b, c, d } => {
            if (*a..=*b).contains(&p.x()) {
                interval_dist(p.y(), *c, *d)
            } else {
                let gap_x = interval_dist(p.x(), *a, *b);
                p.y().abs() + gap_x + interval_min_abs(*c, *d)
            }
        }
        Ball { center, radius, .. } => (distance(p, *center) - radius).max(0.0),
        VerticalSegment { x, y_lo, y_hi } => {
            if p.x() == *x {
                interval_dist(p.y(), *y_lo, *y_hi)
            } else {
                p.y().abs() + (p.x() - x).abs() + interval_min_abs(*y_lo, *y_hi)
            }
        }
        UnionOf { members } => members
            .iter()
            .map(|m| distance_to_set(p, m))
            .fold(f64::INFINITY, f64::min),
    }
}

/// Convex hull of a finite point set, in primitive form.
///
/// Points in a single column hull to the vertical segment spanning them.
/// Otherwise the hull is the union of one vertical segment per occupied
/// column, stretched to touch the axis, plus the axis strip between the
/// extreme columns. Columns whose segment would degenerate to an axis point
/// are left to the strip.
pub fn convex_hull(points: &[Point]) -> Result<SetDescription> {
    if points.is_empty() {
        return Err(Error::EmptyPointList);
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|p, q| {
        p.x()
            .partial_cmp(&q.x())
            .unwrap()
            .then(p.y().partial_cmp(&q.y()).unwrap())
    });
    let xmin = sorted.first().unwrap().x();
    let xmax = sorted.last().unwrap().x();
    if xmin == xmax {
        return Ok(VerticalSegment {
            x: xmin,
            y_lo: sorted.first().unwrap().y(),
            y_hi: sorted.last().unwrap().y(),
        });
    }
    let mut members = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let x = sorted[i].x();
        let mut j = i;
        let mut y_min = f64::INFINITY;
        let mut y_max = f64::NEG_INFINITY;
        while j < sorted.len() && sorted[j].x() == x {
            y_min = y_min.min(sorted[j].y());
            y_max = y_max.max(sorted[j].y());
            j += 1;
        }
        let y_lo = y_min.min(0.0);
        let y_hi = y_max.max(0.0);
        if y_lo != 0.0 || y_hi != 0.0 {
            members.push(VerticalSegment { x, y_lo, y_hi });
        }
        i = j;
    }
    let base = SetDescription::Box {
        a: xmin,
        b: xmax,
        c: 0.0,
        d: 0.0,
    };
    if members.is_empty() {
        return Ok(base);
    }
    members.push(base);
    Ok(UnionOf { members })
}

/// Which convexity requirement a set failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailedClause {
    /// Some occupied column cannot reach the axis inside the set, or a
    /// column's slice splits into separated parts.
    VerticalDrop,
    /// The occupied columns do not form one contiguous interval.
    BaseInterval,
    /// A single-column set whose slice is not one interval.
    BallInterval,
}

/// Outcome of the exact convexity decision. Failures carry a witness pair
/// whose connecting segment leaves the set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityVerdict {
    pub convex: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(Point, Point)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<FailedClause>,
}

impl ConvexityVerdict {
    fn convex() -> Self {
        ConvexityVerdict {
            convex: true,
            counterexample: None,
            reason: None,
        }
    }

    fn failed(p: Point, q: Point, reason: FailedClause) -> Self {
        ConvexityVerdict {
            convex: false,
            counterexample: Some((p, q)),
            reason: Some(reason),
        }
    }
}

/// Height reach of a ball beyond its center column: positive when the ball
/// crosses the axis and therefore spills into neighbouring columns.
pub(crate) fn ball_spread(center: Point, radius: f64) -> f64 {
    radius - center.y().abs()
}

/// Leftmost and rightmost occupied columns.
/// Outermost column of a ball that its own slice test accepts.
///
/// `x0 + dir * s` can overshoot the true edge by a rounding step, which
/// would make the slice there empty; walking back toward the center until
/// `|edge - x0| <= s` holds keeps every reported edge column occupied.
fn ball_edge(x0: f64, s: f64, dir: f64) -> f64 {
    let mut edge = x0 + dir * s;
    while (edge - x0).abs() > s {
        edge = if edge > x0 {
            edge.next_down()
        } else {
            edge.next_up()
        };
    }
    edge
}

fn extent(set: &SetDescription) -> (f64, f64) {
    match set {
        FinitePoints { points } => points.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY),
            |(lo, hi), p| (lo.min(p.x()), hi.max(p.x())),
        ),
        SetDescription::Box { a, b, .. } => (*a, *b),
        Ball { center, radius, .. } => {
            let s = ball_spread(*center, *radius).max(0.0);
            (
                ball_edge(center.x(), s, -1.0),
                ball_edge(center.x(), s, 1.0),
            )
        }
        VerticalSegment { x, .. } => (*x, *x),
        UnionOf { members } => members.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY),
            |(lo, hi), m| {
                let (mlo, mhi) = extent(m);
                (lo.min(mlo), hi.max(mhi))
            },
        ),
    }
}

/// Column abscissas where the slice structure of the set can change shape.
fn breakpoints(set: &SetDescription, out: &mut Vec<f64>) {
    match set {
        FinitePoints { points } => out.extend(points.iter().map(|p| p.x())),
        SetDescription::Box { a, b, .. } => {
            out.push(*a);
            out.push(*b);
        }
        Ball { center, radius, .. } => {
            out.push(center.x());
            let s = ball_spread(*center, *radius);
            if s > 0.0 {
                out.push(ball_edge(center.x(), s, -1.0));
                out.push(ball_edge(center.x(), s, 1.0));
            }
        }
        VerticalSegment { x, .. } => out.push(*x),
        UnionOf { members } => members.iter().for_each(|m| breakpoints(m, out)),
    }
}

/// Vertical slice of the set at column `x`, as raw intervals.
fn slices_at(set: &SetDescription, x: f64, out: &mut Vec<(f64, f64)>) {
    match set {
        FinitePoints { points } => {
            for p in points {
                if p.x() == x {
                    out.push((p.y(), p.y()));
                }
            }
        }
        SetDescription::Box { a, b, c, d } => {
            if (*a..=*b).contains(&x) {
                out.push((*c, *d));
            }
        }
        Ball { center, radius, .. } => {
            if x == center.x() {
                out.push((center.y() - radius, center.y() + radius));
            } else {
                let w = ball_spread(*center, *radius) - (x - center.x()).abs();
                if w >= 0.0 {
                    out.push((-w, w));
                }
            }
        }
        VerticalSegment { x: sx, y_lo, y_hi } => {
            if *sx == x {
                out.push((*y_lo, *y_hi));
            }
        }
        UnionOf { members } => members.iter().for_each(|m| slices_at(m, x, out)),
    }
}

/// Merge closed intervals into disjoint components; touching counts as joined.
fn merge_intervals(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    v.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(a.1.partial_cmp(&b.1).unwrap())
    });
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in v {
        if let Some(last) = out.last_mut() {
            if lo <= last.1 {
                last.1 = last.1.max(hi);
                continue;
            }
        }
        out.push((lo, hi));
    }
    out
}

/// A line `y = m x + b` valid on the column range `[x_lo, x_hi]`.
struct BoundLine {
    x_lo: f64,
    x_hi: f64,
    m: f64,
    b: f64,
}

/// Linear pieces bounding the slices of every member, used to locate columns
/// where two bounds cross and the merged slice can pinch apart or rejoin.
fn bound_lines(set: &SetDescription, out: &mut Vec<BoundLine>) {
    match set {
        SetDescription::Box { a, b, c, d } => {
            out.push(BoundLine {
                x_lo: *a,
                x_hi: *b,
                m: 0.0,
                b: *c,
            });
            out.push(BoundLine {
                x_lo: *a,
                x_hi: *b,
                m: 0.0,
                b: *d,
            });
        }
        Ball { center, radius, .. } => {
            let s = ball_spread(*center, *radius);
            if s > 0.0 {
                let x0 = center.x();
                // Upper tent.
                out.push(BoundLine {
                    x_lo: x0 - s,
                    x_hi: x0,
                    m: 1.0,
                    b: s - x0,
                });
                out.push(BoundLine {
                    x_lo: x0,
                    x_hi: x0 + s,
                    m: -1.0,
                    b: s + x0,
                });
                // Lower tent.
                out.push(BoundLine {
                    x_lo: x0 - s,
                    x_hi: x0,
                    m: -1.0,
                    b: x0 - s,
                });
                out.push(BoundLine {
                    x_lo: x0,
                    x_hi: x0 + s,
                    m: 1.0,
                    b: -(x0 + s),
                });
            }
        }
        UnionOf { members } => members.iter().for_each(|m| bound_lines(m, out)),
        FinitePoints { .. } | VerticalSegment { .. } => {}
    }
}

/// A representative height of a nonempty slice, preferring the axis.
fn witness_y(components: &[(f64, f64)]) -> f64 {
    let mut best: Option<f64> = None;
    for &(lo, hi) in components {
        if lo <= 0.0 && 0.0 <= hi {
            return 0.0;
        }
        let endpoint = if lo > 0.0 { lo } else { hi };
        let better = match best {
            None => true,
            Some(cur) => endpoint.abs() < cur.abs(),
        };
        if better {
            best = Some(endpoint);
        }
    }
    best.expect("witness requested for an empty slice")
}

/// Nearest value to `y` within the merged components.
fn clamp_into(y: f64, components: &[(f64, f64)]) -> f64 {
    let mut best = f64::NAN;
    let mut best_gap = f64::INFINITY;
    for &(lo, hi) in components {
        let v = y.clamp(lo, hi);
        let gap = (v - y).abs();
        if gap < best_gap {
            best_gap = gap;
            best = v;
        }
    }
    best
}

/// Exact convexity decision.
///
/// Single balls and vertical segments are convex outright. Anything else is
/// decided by slicing: the slice bounds are piecewise linear in the column
/// coordinate, so checking every boundary column, every column where two
/// bounds cross, and one interior column per remaining slab covers all
/// possible shape changes. Unions must consist of closed primitives, since
/// the witness construction needs boundary points.
pub fn is_convex(set: &SetDescription) -> Result<ConvexityVerdict> {
    set.validate()?;
    match set {
        Ball { .. } | VerticalSegment { .. } => return Ok(ConvexityVerdict::convex()),
        UnionOf { members } => {
            if members
                .iter()
                .any(|m| matches!(m, Ball { closed: false, .. }))
            {
                return Err(Error::OpenPrimitiveInUnion);
            }
        }
        _ => {}
    }

    let (xmin, xmax) = extent(set);

    if xmin == xmax {
        let mut raw = Vec::new();
        slices_at(set, xmin, &mut raw);
        let comps = merge_intervals(raw);
        if comps.len() <= 1 {
            return Ok(ConvexityVerdict::convex());
        }
        let p = Point::raw(xmin, comps[0].1);
        let q = Point::raw(xmin, comps[1].0);
        return Ok(ConvexityVerdict::failed(p, q, FailedClause::BallInterval));
    }

    // Assemble the stations to test.
    let mut stations = Vec::new();
    breakpoints(set, &mut stations);
    let mut lines = Vec::new();
    bound_lines(set, &mut lines);
    for (i, li) in lines.iter().enumerate() {
        for lj in &lines[i + 1..] {
            if li.m == lj.m {
                continue;
            }
            let x = (lj.b - li.b) / (li.m - lj.m);
            if x >= li.x_lo.max(lj.x_lo) && x <= li.x_hi.min(lj.x_hi) {
                stations.push(x);
            }
        }
    }
    stations.retain(|x| (xmin..=xmax).contains(x));
    stations.sort_by(|a, b| a.partial_cmp(b).unwrap());
    stations.dedup();
    let mids: Vec<f64> = stations.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
    stations.extend(mids);
    stations.sort_by(|a, b| a.partial_cmp(b).unwrap());
    stations.dedup();

    let slice_components = |x: f64| {
        let mut raw = Vec::new();
        slices_at(set, x, &mut raw);
        merge_intervals(raw)
    };

    for &x in &stations {
        let comps = slice_components(x);

        if comps.is_empty() {
            let p = Point::raw(xmin, witness_y(&slice_components(xmin)));
            let q = Point::raw(xmax, witness_y(&slice_components(xmax)));
            return Ok(ConvexityVerdict::failed(p, q, FailedClause::BaseInterval));
        }

        let covers_axis = comps.iter().any(|&(lo, hi)| lo <= 0.0 && 0.0 <= hi);
        if !covers_axis {
            // Pick the slice endpoint farthest from the axis, preferring the
            // positive side on ties, and pair it with the nearest point of
            // the far extreme column.
            let mut best = f64::NAN;
            for &(lo, hi) in &comps {
                for e in [lo, hi] {
                    if best.is_nan()
                        || e.abs() > best.abs()
                        || (e.abs() == best.abs() && e > best)
                    {
                        best = e;
                    }
                }
            }
            let x_far = if x == xmax { xmin } else { xmax };
            let q_y = clamp_into(best, &slice_components(x_far));
            let p = Point::raw(x, best);
            let q = Point::raw(x_far, q_y);
            return Ok(ConvexityVerdict::failed(p, q, FailedClause::VerticalDrop));
        }

        if comps.len() > 1 {
            // The axis is covered, so some separated component floats above
            // or below it; pair its inner endpoint with the axis point.
            let above = comps
                .iter()
                .filter(|&&(lo, _)| lo > 0.0)
                .map(|&(lo, _)| lo)
                .fold(f64::INFINITY, f64::min);
            let p_y = if above.is_finite() {
                above
            } else {
                comps
                    .iter()
                    .filter(|&&(_, hi)| hi < 0.0)
                    .map(|&(_, hi)| hi)
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            let p = Point::raw(x, p_y);
            let q = Point::raw(x, 0.0);
            return Ok(ConvexityVerdict::failed(p, q, FailedClause::VerticalDrop));
        }
    }

    Ok(ConvexityVerdict::convex())
}
