//! Geometry of the plane under the river metric.
//!
//! Off-axis travel is vertical only, unrestricted travel happens along the
//! horizontal axis. The crate provides exact distances, geodesic segments
//! and their arclength parametrization, the convex combination structure
//! induced by geodesics, set primitives with an exact convexity decision and
//! hulls, measures of noncompactness with their moduli, and randomized
//! property checks. A command line front end lives in the `rivergeo` binary.

pub mod error;
pub mod metric;
pub mod noncompact;
pub mod numfmt;
pub mod properties;
pub mod render;
pub mod segment;
pub mod sets;
pub mod wstructure;

pub use error::{Error, Result};
pub use metric::{distance, is_between, Point};
pub use noncompact::{
    mnc, modulus_estimate, nuc_characteristic, y_star, Measure, MncReport, MncWitness,
    ModulusEstimate, SearchStats,
};
pub use properties::{
    ball_convexity_margin, distance_convexity_margin, npbc_margin, prolongation_set,
    recompute_margin, run_check, split_distance, strict_convexity_check,
    uniform_convexity_check, Check, ProlongationResult, ProlongationSet, PropertyReport,
    WorstCase,
};
pub use render::{render_svg, Scene, SceneObject, Style, Viewport};
pub use segment::{metric_segment, midpoint, point_at_arclength, MetricSegment, SegmentPiece};
pub use sets::{
    convex_hull, distance_to_set, is_convex, ConvexityVerdict, FailedClause, SetDescription,
};
pub use wstructure::{
    menger_witness, takahashi_residual, w_case_at, w_cases, w_point, w_point_arclength, WCase,
    WCaseKind,
};
