//! Max-times (tropical) linear algebra over `(ℝ₊, max, ×)`.
//!
//! The pipeline: `λ(A)` by Karp's algorithm, the Kleene star of `A/λ(A)` by
//! Floyd–Warshall, the critical digraph, bases of the eigencone and the
//! subeigencone, and diagonal scalings `X⁻¹AX` that make every critical
//! entry equal to `λ(A)` and every other entry smaller. The assignment
//! module does the same for maximal permutations with a two-sided scaling.
//!
//! Every routine is generic over [`Scalar`]: [`Exact`] gives decidable
//! results on rational input, [`LogReal`] trades exactness for speed.
//!
//! ```
//! use maxvis::{critical_structure, strict_visualizer, Exact, MaxMatrix, Method};
//!
//! let a = MaxMatrix::from_rows(vec![
//!     vec![Exact::new(1, 1), Exact::new(2, 1)],
//!     vec![Exact::new(1, 8), Exact::new(1, 1)],
//! ])
//! .unwrap();
//! assert_eq!(critical_structure(&a).unwrap().lambda, Exact::one());
//! let x = strict_visualizer(&a, &Method::ColumnSum).unwrap();
//! assert_eq!(x.get(1), &Exact::new(9, 8));
//! ```

pub mod assignment;
pub mod cones;
pub mod error;
pub mod graph;
pub mod io;
pub mod kleene;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod spectral;
pub mod visualize;

pub use assignment::{
    brute_force_assignment, maximal_permutation, maximal_permutations, visualize_assignment,
    AssignmentVisualization, Permutation,
};
pub use cones::{
    dimensions, eigencone_basis, linear_hull_membership, membership, subeigencone_basis, ConeBasis,
    ConeKind, DimensionReport, Membership,
};
pub use error::{Error, Result};
pub use graph::is_irreducible;
pub use kleene::{is_kleene_star, kleene_series_oracle, kleene_star, KleeneStar};
pub use linalg::linear_rank;
pub use matrix::{MaxMatrix, MaxVector, Provenance, ScalingVector};
pub use scalar::{Exact, LogReal, NumericMode, Scalar, DEFAULT_TOLERANCE};
pub use spectral::{
    brute_force_lambda, critical_structure, definite_form, max_cycle_geometric_mean, SpectralData,
};
pub use visualize::{
    check_visualization, in_relative_interior, lift_scaling, preserving_scaling_check,
    quotient_matrix, star_block_structure, strict_visualizer, Method, Preservation, QuotientMatrix,
    Visualization, VisualizationStatus,
};
