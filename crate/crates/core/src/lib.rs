//! Radial multiplier channels on finite fermion algebras.
//!
//! A diagonal symbol on the discrete hypercube `Omega_n = {-1,1}^n` defines a
//! Fourier multiplier on the `2^n`-dimensional fermion algebra. Its symbol
//! function — the Walsh synthesis of the coefficients — carries everything:
//! complete positivity is positivity of `f`, and the entanglement-assisted
//! capacity, the cb minimum output entropies and the cb `L^1 -> L^p` norms
//! are all explicit functionals of `f`.
//!
//! Modules:
//! - [`hypercube`]: symbols, Walsh transforms, `L^p` norms, Segal entropy
//! - [`clifford`]: the Jordan-Wigner matrix realization of the generators
//! - [`channel`]: multiplier channels, Choi matrices, CP/TP checks
//! - [`capacity`]: capacities and cb norms in closed form
//! - [`oracle`]: independent numerical cross-checks (Choi spectra, seeded
//!   optimization of the BSST mutual information, minimum output entropy)
//! - [`action`]: the hypercube action on the algebra and its verifiers

pub mod action;
pub mod capacity;
pub mod channel;
pub mod clifford;
pub mod error;
pub mod hypercube;
pub mod linalg;
pub mod oracle;
pub mod parallel;

pub use capacity::{capacity_report, CapacityReport};
pub use channel::MultiplierChannel;
pub use clifford::FermionRep;
pub use error::{Error, Result};
pub use hypercube::{HypercubeFunction, MultiplierSymbol};
pub use oracle::{DensityOperator, OptimizerConfig};
