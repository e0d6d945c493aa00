//! Symbolic dynamics of free group automorphisms on the group and its
//! boundary: exact word iteration, limit points, parabolic orbits and
//! dynamics graphs.

pub mod autofile;
pub mod automorphism;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod graph;
pub mod matrix;
pub mod report;
pub mod subgroup;
pub mod word;

pub use autofile::AutoFile;
pub use automorphism::{AutoPair, Endomorphism};
pub use dynamics::{
    detect_boundary_period, detect_parabolic, growth_classify, iterate, omega_limit, omega_limit_backward,
    omega_limit_rational, recognize_rational, verify_splitting, GrowthClass, GrowthReport, IterationConfig,
    LimitPoint, LimitResult, ParabolicReport, RationalPoint, SplittingCheck, Verdict,
};
pub use families::{classify_twist, expected_graph, twist_reduce, Family, FamilySpec, GraphTemplate, TwistCase};
pub use graph::{build_graph, build_graph_with_bound, default_seeds, isogloss, DynamicsGraph, Edge, Isogloss, IsoglossyClass};
pub use error::{Error, Result};
pub use matrix::{dilatation_info, DilatationInfo, IntMatrix};
pub use subgroup::StallingsGraph;
pub use word::{Alphabet, CyclicDecomposition, Letter, Word};
