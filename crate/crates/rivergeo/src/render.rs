//! Deterministic SVG rendering of scene descriptions.
//!
//! A scene is a viewport plus a list of drawable objects. Rendering is pure
//! string construction with fixed four-decimal coordinates and a stable draw
//! order (axis first, then objects as listed), so identical scenes produce
//! byte-identical documents. Balls are drawn in their true metric shape: a
//! diamond around the axis plus a vertical spike when the ball reaches the
//! axis, and a bare vertical segment when it does not.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::metric::Point;
use crate::segment::metric_segment;
use crate::sets::{convex_hull, SetDescription};

/// Pixels per world unit.
const SCALE: f64 = 60.0;
/// Outer margin in pixels.
const MARGIN: f64 = 20.0;

/// A drawable picture: viewport, objects, and shared style defaults.
#[derive(Debug, Clone, Deserialize)]
pub struct Scene {
    pub viewport: Viewport,
    #[serde(default)]
    pub objects: Vec<SceneObject>,
    #[serde(default)]
    pub style: Style,
}

/// World-coordinate window, as half-open ranges on each axis.
#[derive(Debug, Clone, Deserialize)]
pub struct Viewport {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl Viewport {
    fn validate(&self) -> Result<()> {
        let ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo < hi;
        if ok(self.x) && ok(self.y) {
            Ok(())
        } else {
            Err(Error::InvalidViewport)
        }
    }
}

/// Shared drawing parameters.
#[derive(Debug, Clone, Deserialize)]
pub struct Style {
    #[serde(default = "default_stroke_width")]
    pub stroke_width: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            stroke_width: default_stroke_width(),
        }
    }
}

fn default_stroke_width() -> f64 {
    2.0
}

/// One drawable object.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SceneObject {
    /// A single marked point.
    Point { at: Point },
    /// The shortest path between two points, drawn as a polyline.
    Segment { from: Point, to: Point },
    /// A metric ball, drawn in its true shape.
    Ball { center: Point, radius: f64 },
    /// An axis-aligned rectangle outline.
    Box { a: f64, b: f64, c: f64, d: f64 },
    /// The convex hull of a point cloud, drawn as vertical strips plus base.
    Hull { points: Vec<Point> },
}

struct Frame {
    x_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            MARGIN + (x - self.x_lo) * SCALE,
            MARGIN + (self.y_hi - y) * SCALE,
        )
    }
}

/// Renders a scene to a complete SVG 1.1 document.
///
/// The river axis is always drawn. Returns an error for a malformed
/// viewport or object parameters, never for objects that merely fall
/// outside the visible window.
pub fn render_svg(scene: &Scene) -> Result<String> {
    scene.viewport.validate()?;
    for object in &scene.objects {
        match object {
            SceneObject::Ball { radius, .. } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::InvalidRadius);
                }
            }
            SceneObject::Box { a, b, c, d } => {
                let fine = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo <= hi;
                if !(fine(*a, *b) && fine(*c, *d)) {
                    return Err(Error::InvalidInterval);
                }
            }
            SceneObject::Hull { points } => {
                if points.is_empty() {
                    return Err(Error::EmptyPointList);
                }
            }
            _ => {}
        }
    }

    let frame = Frame {
        x_lo: scene.viewport.x.0,
        y_hi: scene.viewport.y.1,
    };
    let width = MARGIN * 2.0 + (scene.viewport.x.1 - scene.viewport.x.0) * SCALE;
    let height = MARGIN * 2.0 + (scene.viewport.y.1 - scene.viewport.y.0) * SCALE;
    let sw = scene.style.stroke_width;

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{width:.4}\" height=\"{height:.4}\" \
         viewBox=\"0 0 {width:.4} {height:.4}\">\n"
    );
    let _ = write!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{width:.4}\" height=\"{height:.4}\" fill=\"#ffffff\"/>\n"
    );

    let (ax1, ay) = frame.map(scene.viewport.x.0, 0.0);
    let (ax2, _) = frame.map(scene.viewport.x.1, 0.0);
    line(&mut svg, (ax1, ay), (ax2, ay), "#4f83cc", sw);

    for object in &scene.objects {
        match object {
            SceneObject::Point { at } => {
                let (cx, cy) = frame.map(at.x(), at.y());
                let _ = write!(
                    svg,
                    "<circle cx=\"{cx:.4}\" cy=\"{cy:.4}\" r=\"3.5\" fill=\"#c0392b\"/>\n"
                );
            }
            SceneObject::Segment { from, to } => {
                let seg = metric_segment(*from, *to);
                let mut pts = vec![seg.pieces[0].start];
                pts.extend(seg.pieces.iter().map(|piece| piece.end));
                polyline(&mut svg, &frame, &pts, "#1e8449", sw);
            }
            SceneObject::Ball { center, radius } => {
                draw_ball(&mut svg, &frame, *center, *radius, sw);
            }
            SceneObject::Box { a, b, c, d } => {
                let (x, y) = frame.map(*a, *d);
                let w = (b - a) * SCALE;
                let h = (d - c) * SCALE;
                let _ = write!(
                    svg,
                    "<rect x=\"{x:.4}\" y=\"{y:.4}\" width=\"{w:.4}\" height=\"{h:.4}\" \
                     fill=\"none\" stroke=\"#b9770e\" stroke-width=\"{sw:.4}\"/>\n"
                );
            }
            SceneObject::Hull { points } => {
                draw_hull(&mut svg, &frame, points, sw)?;
            }
        }
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn draw_ball(svg: &mut String, frame: &Frame, center: Point, radius: f64, sw: f64) {
    let spread = radius - center.y().abs();
    if spread > 0.0 {
        let corners = [
            (center.x() - spread, 0.0),
            (center.x(), spread),
            (center.x() + spread, 0.0),
            (center.x(), -spread),
        ];
        let mut attr = String::new();
        for (i, &(x, y)) in corners.iter().enumerate() {
            let (px, py) = frame.map(x, y);
            if i > 0 {
                attr.push(' ');
            }
            let _ = write!(attr, "{px:.4},{py:.4}");
        }
        let _ = write!(
            svg,
            "<polygon points=\"{attr}\" fill=\"none\" stroke=\"#7d3c98\" \
             stroke-width=\"{sw:.4}\"/>\n"
        );
    }
    line(
        svg,
        frame.map(center.x(), center.y() - radius),
        frame.map(center.x(), center.y() + radius),
        "#7d3c98",
        sw,
    );
}

fn draw_hull(svg: &mut String, frame: &Frame, points: &[Point], sw: f64) -> Result<()> {
    let hull = convex_hull(points)?;
    let mut strips: Vec<(f64, f64, f64)> = Vec::new();
    let mut base: Option<(f64, f64)> = None;
    let mut collect = |set: &SetDescription| {
        if let SetDescription::VerticalSegment { x, y_lo, y_hi } = set {
            strips.push((*x, *y_lo, *y_hi));
        } else if let SetDescription::Box { a, b, .. } = set {
            base = Some((*a, *b));
        }
    };
    if let SetDescription::UnionOf { members } = &hull {
        members.iter().for_each(&mut collect);
    } else {
        collect(&hull);
    }
    for (x, y_lo, y_hi) in strips {
        line(
            svg,
            frame.map(x, y_lo),
            frame.map(x, y_hi),
            "#85c1e9",
            sw * 3.0,
        );
    }
    if let Some((a, b)) = base {
        line(svg, frame.map(a, 0.0), frame.map(b, 0.0), "#2e86c1", sw * 1.5);
    }
    Ok(())
}

fn line(svg: &mut String, from: (f64, f64), to: (f64, f64), stroke: &str, width: f64) {
    let _ = write!(
        svg,
        "<line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" \
         stroke=\"{stroke}\" stroke-width=\"{width:.4}\"/>\n",
        from.0, from.1, to.0, to.1
    );
}

fn polyline(svg: &mut String, frame: &Frame, points: &[Point], stroke: &str, width: f64) {
    let mut attr = String::new();
    for (i, p) in points.iter().enumerate() {
        let (px, py) = frame.map(p.x(), p.y());
        if i > 0 {
            attr.push(' ');
        }
        let _ = write!(attr, "{px:.4},{py:.4}");
    }
    let _ = write!(
        svg,
        "<polyline points=\"{attr}\" fill=\"none\" stroke=\"{stroke}\" \
         stroke-width=\"{width:.4}\"/>\n"
    );
}
