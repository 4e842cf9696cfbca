//! Numerical radius computations and a verification suite for numerical
//! radius inequalities on complex square matrices.

pub mod convex;
pub mod error;
pub mod linalg;
pub mod matrix_file;
pub mod norms;
pub mod radius;
pub mod random;
pub mod suite;

pub use convex::ConvexFunctionSpec;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianEigenDecomposition, UnitVector};
pub use norms::{evaluate_norm, operator_norm, NormSpec};
pub use radius::{
    generalized_numerical_radius, numerical_radius, numerical_radius_oracle, rotation_profile, Profile,
    RadiusResult,
};
pub use suite::{
    evaluate_check, generate, run_suite, EnsembleKind, EnsembleSpec, InequalityId, InequalityReport, Operands, Params,
    RunReport, SuiteConfig,
};
