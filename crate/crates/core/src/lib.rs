//! Symbolic and numerical tools for stable unitary representations of
//! surface groups and their products.
//!
//! The algebraic side computes deformation K-theory as a wedge of
//! `ku`-module summands ([`ku`]), reads off the homotopy of the
//! representation spectrum and of the stable moduli space of flat
//! connections ([`group`]), and compares them with integral cohomology and
//! complex K-theory assembled by Künneth formulas ([`graded`],
//! [`verify`]). The numerical side ([`numerics`]) realizes the torus moduli
//! map on commuting unitary pairs and the stable eigenvalue map.

pub mod connectivity;
pub mod error;
pub mod expr;
pub mod graded;
pub mod group;
pub mod ku;
pub mod numerics;
pub mod verify;

pub use connectivity::{connectivity_bounds, ConnectivityRecord};
pub use error::{Error, ErrorClass, Result};
pub use expr::{parse_expr, GroupExpr};
pub use graded::{
    kunneth_integer, kunneth_mod2, rational_ranks, torsion_f2_rank_by_parity, FinAbGroup,
    GradedGroup, Grading,
};
pub use group::{cohomology, kdef, ktheory, moduli_homotopy, qcd, rdef_homotopy};
pub use ku::{oracle::smash_oracle, KuModule, KuSummand, SummandCounts, SummandKind};
pub use verify::{atiyah_segal_compare, consistency_suite, ComparisonReport, SuiteReport};
