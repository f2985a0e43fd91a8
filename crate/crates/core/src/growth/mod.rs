//! Numeric layer: complex roots, fibers of a Noether frame, and growth
//! exponent estimation in the maximum norm.

mod estimate;
mod fiber;
mod roots;

pub use estimate::{check_prop52, estimate_growth, snap_rational, GrowthConfig, GrowthEstimate, Prop52Check, PROP52_EPSILON};
pub use fiber::{fiber_solve, ComplexPoint, Fiber, MAX_CANDIDATES};
pub use roots::roots_univariate;
