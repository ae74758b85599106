//! Geodesic segments: the unique shortest path between two points, stored as
//! an ordered chain of axis-aligned pieces, plus parametrization by arclength.

use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metric::{distance, Point};

/// One straight piece of a geodesic, either vertical (both endpoints share a
/// column) or horizontal along the axis (both endpoints have height zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentPiece {
    pub start: Point,
    pub end: Point,
}

impl SegmentPiece {
    pub fn length(&self) -> f64 {
        distance(self.start, self.end)
    }

    /// Point at arclength `t` from `start`, assuming `0 <= t <= length`.
    fn point_at(&self, t: f64) -> Point {
        let dx = self.end.x() - self.start.x();
        if dx != 0.0 {
            Point::raw(self.start.x() + dx.signum() * t, self.start.y())
        } else {
            let dy = self.end.y() - self.start.y();
            Point::raw(self.start.x(), self.start.y() + dy.signum() * t)
        }
    }
}

impl Serialize for SegmentPiece {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        tup.serialize_element(&self.start)?;
        tup.serialize_element(&self.end)?;
        tup.end()
    }
}

impl<'de> Deserialize<'de> for SegmentPiece {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PieceVisitor;

        impl<'de> Visitor<'de> for PieceVisitor {
            type Value = SegmentPiece;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a two-element array [start, end] of points")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<SegmentPiece, A::Error> {
                let start: Point = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let end: Point = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<Point>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(SegmentPiece { start, end })
            }
        }

        deserializer.deserialize_tuple(2, PieceVisitor)
    }
}

/// A full geodesic from one point to another, as an ordered piece chain.
///
/// Same column: a single vertical piece (zero length when the points
/// coincide). Different columns: a descent to the axis (omitted when the
/// first point already sits on it), a run along the axis, and a climb to the
/// second point (omitted likewise).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSegment {
    pub pieces: Vec<SegmentPiece>,
    #[serde(skip)]
    pub length: f64,
}

/// Build the geodesic segment from `p` to `q`.
pub fn metric_segment(p: Point, q: Point) -> MetricSegment {
    let mut pieces = Vec::with_capacity(3);
    if p.x() == q.x() {
        pieces.push(SegmentPiece { start: p, end: q });
    } else {
        let p_foot = Point::raw(p.x(), 0.0);
        let q_foot = Point::raw(q.x(), 0.0);
        if p.y() != 0.0 {
            pieces.push(SegmentPiece { start: p, end: p_foot });
        }
        pieces.push(SegmentPiece {
            start: p_foot,
            end: q_foot,
        });
        if q.y() != 0.0 {
            pieces.push(SegmentPiece {
                start: q_foot,
                end: q,
            });
        }
    }
    MetricSegment {
        pieces,
        length: distance(p, q),
    }
}

/// Point on the geodesic from `p` to `q` at arclength `s` from `p`.
///
/// Endpoints are returned exactly at `s == 0` and `s == distance(p, q)`.
pub fn point_at_arclength(p: Point, q: Point, s: f64) -> Result<Point> {
    let d = distance(p, q);
    if !(0.0..=d).contains(&s) {
        return Err(Error::ArclengthOutOfRange { s, max: d });
    }
    if s == 0.0 {
        return Ok(p);
    }
    if s == d {
        return Ok(q);
    }
    let seg = metric_segment(p, q);
    let mut remaining = s;
    for piece in &seg.pieces {
        let len = piece.length();
        if remaining <= len {
            return Ok(piece.point_at(remaining));
        }
        remaining -= len;
    }
    // Unreachable unless rounding in the piece sum falls short of `d`.
    Ok(q)
}

/// Metric midpoint: the point halfway along the geodesic. Total, since half
/// the distance is always an admissible arclength.
pub fn midpoint(p: Point, q: Point) -> Point {
    let d = distance(p, q);
    point_at_arclength(p, q, d / 2.0).expect("half the distance is a valid arclength")
}
