//! Points of the plane and the river distance between them.
//!
//! Movement off the horizontal axis is vertical only; unrestricted movement
//! happens along the axis itself. Two points in the same column are joined by
//! a plain vertical path. Any other pair must descend to the axis, travel
//! along it, and climb back out, so the distance is the sum of both heights
//! plus the horizontal gap.

use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of the plane. Coordinates are always finite and never negative zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    x: f64,
    y: f64,
}

impl Point {
    /// Construct a point, rejecting NaN and infinite coordinates.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Self::raw(x, y))
        } else {
            Err(Error::NonFinitePoint)
        }
    }

    /// Internal constructor for coordinates already known to be finite.
    /// Adding positive zero collapses -0.0 into 0.0 so serialized output
    /// and equality checks never see a signed zero.
    pub(crate) fn raw(x: f64, y: f64) -> Self {
        Point {
            x: x + 0.0,
            y: y + 0.0,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        tup.serialize_element(&self.x)?;
        tup.serialize_element(&self.y)?;
        tup.end()
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PointVisitor;

        impl<'de> Visitor<'de> for PointVisitor {
            type Value = Point;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a two-element array [x, y] of finite numbers")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Point, A::Error> {
                let x: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let y: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<f64>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Point::new(x, y).map_err(|_| de::Error::custom("coordinates must be finite"))
            }
        }

        deserializer.deserialize_tuple(2, PointVisitor)
    }
}

/// River distance between two points.
///
/// Same column: vertical gap. Different columns: both heights plus the
/// horizontal gap. The heights are summed before the horizontal term so the
/// expression is bitwise symmetric in its arguments.
pub fn distance(p: Point, q: Point) -> f64 {
    if p.x == q.x {
        (p.y - q.y).abs()
    } else {
        (p.y.abs() + q.y.abs()) + (p.x - q.x).abs()
    }
}

/// Whether `z` lies metrically between `p` and `q` within `tol`:
/// the two legs through `z` add up to the direct distance.
pub fn is_between(p: Point, z: Point, q: Point, tol: f64) -> bool {
    distance(p, z) + distance(z, q) - distance(p, q) <= tol
}
