//! Feasibility of distance-regular graph intersection arrays.
//!
//! Everything here is exact: intersection numbers are rationals, eigenvalues
//! are integers or isolated real algebraic numbers, and every comparison that
//! decides a verdict is certified.

pub mod arrays;
pub mod feasibility;
pub mod graphs;
pub mod krein;
pub mod linalg;
pub mod search;
pub mod spectral;

pub use arrays::{ArrayError, DerivedCounts, IntersectionArray, PNumberTensor};
pub use feasibility::{gate, is_feasible, FeasibilityReport, Filter, FilterConfig, Verdict};
pub use spectral::{AlgebraicScalar, Spectrum};
