//! Quaternionic spectral theory at desk scale: quaternion arithmetic, right
//! quaternionic Hilbert spaces, S-spectra of matrices, and Fredholm /
//! essential S-spectrum analysis of structured operators on `ℓ²(ℕ, ℍ)`.

pub mod embedding;
pub mod error;
pub mod essential;
pub mod fredholm;
pub mod hilbert;
pub mod io;
pub mod matrix;
pub mod quaternion;
pub mod spectrum;
pub mod structured;
pub mod verify;

pub use error::{Error, Result};
pub use hilbert::{gram_schmidt, inner, left_mul, project, HilbertBasis, QVector};
pub use matrix::{adjoint, apply, finite_rank_decomp, neumann_inverse, op_norm, rank_kernel, scalar_op, QMatrix, Side};
pub use quaternion::{conjugate_by, qinv, qmul, sphere_rep, Quaternion, SphereClass};
