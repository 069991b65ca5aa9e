//! Hankel operators `f -> (I - P)(phi f)` on truncated orthonormal bases:
//! exact Gram matrices, finite-section spectra, essential-norm brackets,
//! kernel test sequences and unitary invariance.

mod bracket;
mod eigen;
mod gram;
mod kernel_seq;
mod unitary;
mod window;

pub use bracket::{ess_norm_bracket, neville, op_norm, tail_table, BracketConfig, EssNormBracket, KernelSequence};
pub use eigen::{char_poly, jacobi_eigenvalues, HermitianGram, JACOBI_TOL};
pub use gram::{gram, gram_exact, gram_float, projection_coeffs, ExactGram};
pub use kernel_seq::{kernel_sequence_est, KernelValue, TIE_TOL};
pub use unitary::{apply_unitary, Transform};
pub use window::BasisWindow;
