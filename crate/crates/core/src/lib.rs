//! Exact divisor theories and executable Riemann-Roch checks.
//!
//! Three backends implement [`RankOracle`]:
//!
//! * [`GraphOracle`]: a finite multigraph with chip-firing equivalence. Its
//!   rank is computed by brute-force enumeration and never looks at the genus
//!   or canonical divisor.
//! * [`curve::EllipticOracle`]: rational points of an elliptic curve over a
//!   small prime field, with equivalence decided by the group law.
//! * [`curve::ProjectiveLineOracle`]: marked points on a genus-0 curve.
//!
//! The [`lab`] module turns Riemann-Roch, the two Baker-Norine properties,
//! Riemann's inequality, Noether's reduction and its corollary into
//! campaigns that produce [`lab::CheckReport`]s.

pub mod curve;
pub mod divisor;
pub mod error;
pub mod families;
pub mod graph;
pub mod lab;
pub mod rank;
pub mod reduction;

pub use divisor::{Divisor, Point};
pub use error::{Error, Result};
pub use families::{generate_family, GraphFamily, GraphFamilySpec};
pub use graph::Multigraph;
pub use rank::{graph_rank, rank_drop_bound_check, GraphOracle, RankOracle};
