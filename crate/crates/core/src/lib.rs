//! Right and left eigenvalue problems for quaternionic matrices and for
//! complex-linear operators on quaternionic vector spaces.
//!
//! Every problem is translated to an equivalent complex one through the
//! symplectic decomposition `q = z + j·w`, solved there, and translated back.

pub mod cli;
pub mod complex_eig;
pub mod error;
pub mod hlcr;
pub mod left_eig;
pub mod linalg;
pub mod matching;
pub mod matrices;
pub mod quaternion;
pub mod right_eig;

pub use complex_eig::{charpoly, eig, roots, ComplexEigResult};
pub use error::{Error, Result};
pub use hlcr::HlcrElement;
pub use left_eig::{left_eig_2x2, LeftEigResult};
pub use matrices::{complexify_matrix, dequaternionify_matrix, ComplexMatrix, HlcrMatrix, Matrix, QuatMatrix, QuatVector};
pub use quaternion::{Quaternion, UnitQuaternion};
pub use right_eig::{
    co_spectrum, diagonalize_complexlinear, diagonalize_quaternionic, hermitian_from_antihermitian,
    right_spectrum_complexlinear, right_spectrum_quaternionic, Convention, RightEigOptions,
};
