//! Exact space-time packing and scheduling for cuboid items in a cuboid container.
//!
//! Each item must spend a contiguous bake time inside the container, and items
//! may be repositioned or reoriented whenever the resident set changes. The
//! objective is the makespan: the span from the first item entering to the last
//! item leaving. All geometry and time arithmetic is exact rational, so
//! feasibility verdicts and optimality claims carry no floating-point caveats.
//!
//! The solver stack has three levels:
//!
//! * [`packer`] decides whether a fixed set of boxes fits in the container at
//!   one instant, by complete search over canonical corner coordinates.
//! * [`scheduler`] runs the greedy beat-wise schedule for a fixed baking order,
//!   repacking the surviving items at every beat boundary.
//! * [`optimizer`] minimizes the makespan over all distinct baking orders.
//!
//! [`oracle`] holds deliberately naive brute-force checkers used to certify the
//! solvers on small integer instances, and [`format`] / [`generator`] cover the
//! plain-text instance and schedule files plus seeded instance generation.
//!
//! Geometry and packing are generic over the scalar type through [`num::Num`];
//! the solver pipeline uses the exact rational [`Scalar`] alias, while the
//! oracles instantiate the same box primitives at `i64`.

pub mod format;
pub mod generator;
pub mod geometry;
pub mod num;
pub mod optimizer;
pub mod oracle;
pub mod packer;
pub mod scheduler;

/// Exact scalar used by the solver pipeline: an arbitrary-precision rational,
/// always in lowest terms with a positive denominator.
pub type Scalar = num_rational::BigRational;

pub use geometry::{Axis, Container, Dims3, ItemId, Layout, Orientation, PlacedItem, Placement};
pub use optimizer::{Instance, SolveOptions, SolveResult};
pub use scheduler::{BakeItem, Beat, Schedule, ValidationReport};

/// Shorthand for building the rational [`Scalar`] from an integer.
pub fn scalar(n: i64) -> Scalar {
    num_rational::BigRational::from_integer(n.into())
}

/// Shorthand for building the rational [`Scalar`] `p/q`. Panics if `q` is zero.
pub fn ratio(p: i64, q: i64) -> Scalar {
    num_rational::BigRational::new(p.into(), q.into())
}
