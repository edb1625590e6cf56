//! Exact-arithmetic toolkit for classifying the real locus of a toric
//! degeneration as a branched cover of its intersection complex.
//!
//! The crate is organized around five areas:
//!
//! * [`linalg`] — checked 64-bit integer and GF(2) linear algebra on small
//!   dense matrices (row-vector convention: covectors multiply on the right).
//! * [`complex`] — polyhedral intersection complexes carrying integral affine
//!   charts, kink functions, and marked singular points; balancing validation.
//! * [`monodromy`] — group presentations and affine monodromy representations
//!   `gamma -> (T, lambda, theta)`, twisted composition, relation verification,
//!   and sign cohomology (H^1 with GF(2) coefficients twisted by T mod 2).
//! * [`cover`] — the induced permutation action on a real 2^n-element fiber,
//!   orbit decomposition, and Riemann–Hurwitz bookkeeping for the components.
//! * [`monoid`] — rational cones, dual cones, toric monoids enumerated inside
//!   a coordinate box, local models built from tropical data, monodromy cones,
//!   and ghost ranks of faces (real fiber sizes of the moment map).
//!
//! [`scenario`] defines the JSON input format shared by the CLI and the test
//! suites, and [`builtin`] provides ready-made example scenarios.
//!
//! # Example
//!
//! Classify the real locus of the builtin quartic scenario over the `+1`
//! component of the base:
//!
//! ```
//! use kncover::{build_action, builtin, classify, Scenario, Sign};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let Some(Scenario::Complex(quartic)) = builtin::by_name("quartic-k3") else {
//!     unreachable!("quartic-k3 is a complex scenario");
//! };
//! let monodromy = quartic.monodromy()?;
//! let rep = monodromy.to_rep()?;
//! let action = build_action(&rep, Sign::Plus)?;
//! let report = classify(&action, &monodromy.branch_points, 2)?;
//!
//! let mut degrees: Vec<usize> = report.components.iter().map(|c| c.degree).collect();
//! degrees.sort();
//! assert_eq!(degrees, [1, 3]);
//! # Ok(())
//! # }
//! ```

pub mod builtin;
pub mod complex;
pub mod cover;
pub mod linalg;
pub mod monodromy;
pub mod monoid;
pub mod scenario;

pub use complex::{BalanceReport, MplFunction, PolyhedralComplex, SingularPoint};
pub use cover::{build_action, classify, orbits, theta_shift, CoverAction, CoverReport, Sign};
pub use linalg::{Gf2Matrix, Gf2Vector, Int, IntMatrix, IntVector};
pub use monodromy::{focus_focus_shear, h1_theta, AffineRep, AffineTriple, H1Report, Presentation};
pub use monoid::{
    build_local_model, dual_cone, ghost_rank, monodromy_cone, monoid_generators, GhostRank,
    LocalModel, LocalModelSpec, MonodromyCone, RationalCone, ToricMonoid,
};
pub use scenario::Scenario;
