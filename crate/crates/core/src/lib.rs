//! Numerical laboratory for the three-mode Tavis-Cummings Hamiltonian
//!
//! ```text
//! H = w1 a†a + w2 b†b + w3 c†c + g (a† b c + a b† c†)
//! ```
//!
//! The crate builds the Hamiltonian on truncated and block-resolved Fock
//! spaces ([`fock`]), realizes the su(1,1) and su(2) Jordan-Schwinger
//! algebras with their displacement operators and number coherent states
//! ([`algebra`]), evaluates the closed-form spectra of the four algebraic
//! diagonalization routes ([`spectra`]), diagonalizes exactly ([`diag`]) and
//! evaluates real-space wavefunctions ([`wavefn`]).

pub mod algebra;
pub mod diag;
mod error;
pub mod fock;
pub(crate) mod special;
pub mod spectra;
pub mod wavefn;

pub use error::{Error, Result};
pub use fock::{BasisSpec, Block, Mode, Occupation, SparseOperator};
pub use spectra::ModelParams;

/// Double-precision complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix.
pub type ComplexMatrix = nalgebra::DMatrix<C64>;
