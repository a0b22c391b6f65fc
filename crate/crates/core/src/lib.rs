//! Bounds on the entanglement cost of exact state preparation under
//! operations that preserve the positivity of the partial transpose.
//!
//! The cost of a bipartite state `ρ` lies between `log2 tr|ρ^Γ|` (the
//! logarithmic negativity) and `log2 Z(ρ)`, and the two coincide whenever
//! the binegativity `|ρ^Γ|^Γ` is positive semidefinite. The crate computes
//! both bounds, builds and checks the preparation map behind the upper
//! bound, and covers the Werner and Gaussian families where the bounds meet.
//!
//! ```
//! use pptcost::{measures, werner};
//!
//! let sigma_a = werner::antisymmetric_state(3).unwrap();
//! let report = measures::eppt_bounds(&sigma_a).unwrap();
//! assert!(report.bounds_coincide);
//! assert!((report.eppt_upper - (5.0f64 / 3.0).log2()).abs() < 1e-12);
//! ```

pub mod error;
pub mod gaussian;
pub mod linalg;
pub mod measures;
pub mod survey;
pub mod werner;

pub use error::{Error, Result};
pub use nalgebra;
pub use num_complex;
pub use linalg::{CMatrix, DensityMatrix, Dims, Subsystem};
