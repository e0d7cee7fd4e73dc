//! Solvers for minimum-weight coverage of points by weighted disks whose
//! centers lie on a common line (the x-axis), together with the reductions
//! they rely on and brute-force references for testing.
//!
//! Supported variants:
//!
//! - 1D: points and weighted segments on the line ([`solve1d`]).
//! - Unit disks and L1 diamonds, reduced to 1D through per-disk
//!   outside-point indices ([`reduce`]).
//! - L∞ squares and L2 disks, reduced to 1D through bounding couples
//!   ([`couples`], [`sweep_linf`], [`sweep_l2`]).
//! - Line-separable unit disks, lower-only half-planes and general
//!   half-planes ([`halfplane`]).
//!
//! Every solver is checked against the exhaustive search in [`oracle`].

pub mod aggregate;
pub mod couples;
pub mod curves;
pub mod error;
pub mod gen;
pub mod geom;
pub mod halfplane;
pub mod oracle;
pub mod problem;
pub mod reduce;
pub mod solution;
pub mod solve1d;
pub mod sweep;
pub mod sweep_l2;
pub mod sweep_linf;

pub use error::{Error, Result};
pub use geom::{covers, normalize, Disk, Instance, Metric, PointP};
pub use problem::{Algorithm, Problem};
pub use solution::{Solution, Stats, SweepConfig};
