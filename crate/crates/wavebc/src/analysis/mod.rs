//! Laplace–Fourier-side analysis: scalar boundary conditions, the coupled
//! pair, general first-order systems, and the reflection-cascade roots.

pub mod coupled;
pub mod reflection;
pub mod report;
pub mod scalar;
pub mod system;

pub use coupled::{classify_coupled, coupled_boundary_solution, coupled_determinant, CoupledBC};
pub use reflection::{reflection_roots, ReflectionCase, ReflectionRoot};
pub use report::{AnalysisError, GeneralizedEigenvalue, StabilityClass, StabilityReport, WaveKind};
pub use scalar::{
    boundary_symbol, classify_scalar, eigenvalue_search, generalized_eigenvalues,
    perturbation_slope, ScalarBC, SlopeFit,
};
pub use system::{
    block_reduce, build_first_order_symbol, eigen_split, exact_h_eigenvalues, h_spectrum,
    resolvent_product, resolvent_solution, split_lower_left_norm, EigenSplit, FirstOrderSymbol,
    HSpectrum, SystemSpec,
};
