//! Numerical verdicts for the cone properties, the apex liminf, the
//! homogeneity chain, the one-dimensional ratio test and the deduction rules.

pub mod chain;
pub mod hessian;
pub mod inequalities;
pub mod liminf;
pub mod one_dim;
pub mod theorem;
mod verdict;

pub use chain::{check_homogeneity_chain, check_irrational_scaling, chain27_residual, ScalingRow, ScalingTable};
pub use hessian::{check_concavity_hessian, HessianPoint, HessianReport};
pub use inequalities::{
    check_concavity, check_concavity_triples, check_convexity, check_homogeneity, check_homogeneity_points,
    check_subadditivity, check_superadditivity, check_superadditivity_pairs, concavity_triples,
    DEFAULT_CONCAVITY_LAMBDAS, DEFAULT_HOMOGENEITY_LAMBDAS,
};
pub use liminf::{estimate_apex_liminf, LiminfClass, LiminfEstimate};
pub use one_dim::{check_ratio_constancy_1d, check_support_line_1d, RatioReport};
pub use theorem::{deduce_third_property, Deduction, Given, TheoremReport, TheoremRule};
pub use verdict::{CheckMethod, Status, Verdict, Witness, WitnessKind, MAX_SKIP_FRACTION};
pub(crate) use verdict::{evaluate, Evaluation};
