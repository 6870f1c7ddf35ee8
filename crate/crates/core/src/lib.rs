//! Finite-dimensional unimodular Kac algebras (finite quantum groups) and the
//! Fourier analysis that lives on them: transforms between an algebra and its
//! dual, convolution, noncommutative Lp norms, von Neumann entropy and
//! support functionals, biprojections and their shifts, and the
//! minimizer-characterization checks for the Hirschman-Beckner and
//! Donoho-Stark uncertainty principles.
//!
//! The crate is organized bottom-up:
//!
//! * [`block`] — block-diagonal complex matrix arithmetic and spectral ops,
//! * [`algebra`] — the Kac algebra structure and its axiom verification,
//! * [`dual`] — the multiplicative unitary and the dual algebra construction,
//! * [`fourier`] — transforms, convolution, entropy, support, inequality suite,
//! * [`biproj`] — biprojections, shifts, bi-shift certificates,
//! * [`minimizer`] — the minimizer equivalence and related theorems,
//! * [`builders`] — group tables and the standard algebra/element corpus,
//! * [`io`] — JSON wire formats.

pub mod algebra;
pub mod biproj;
pub mod block;
pub mod builders;
pub mod dual;
pub mod fourier;
pub mod io;
pub mod linalg;
pub mod minimizer;
pub mod tol;

pub use algebra::{AxiomReport, FiniteKacAlgebra};
pub use biproj::BiShiftCertificate;
pub use block::BlockOperator;
pub use builders::GroupTable;
pub use dual::DualPair;
pub use fourier::UncertaintyReport;
pub use minimizer::MinimizerVerdict;
pub use tol::ToleranceConfig;

pub type Complex64 = num_complex::Complex64;
pub type CMat = nalgebra::DMatrix<Complex64>;
pub type CVec = nalgebra::DVector<Complex64>;
