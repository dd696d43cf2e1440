//! Hilbert C*-modules over finite-dimensional C*-algebras.
//!
//! The algebra `A = M_{n_1}(C) ⊕ … ⊕ M_{n_B}(C)` acts on the free module
//! `A^k`; every construction is carried blockwise, so each layer reduces to
//! dense complex linear algebra in [`matkit`]:
//!
//! - [`cstar`]: algebra elements, adjoint, norm, spectrum, positivity;
//! - [`hmod`]: module vectors, the `A`-valued inner product, submodules;
//! - [`modop`]: adjointable operators, kernels, ranges, Moore-Penrose
//!   inverses and the reduced minimum modulus;
//! - [`angles`]: Dixmier angles and the `γ(PQ)² + ‖(1−P)QR‖² ≥ 1` defect;
//! - [`verifier`]: executable checks of the closed-range results;
//! - [`sample`]: seeded random instances.

pub mod angles;
pub mod cstar;
pub mod error;
pub mod hmod;
pub mod matkit;
pub mod modop;
pub mod sample;
pub mod verifier;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
