//! Numerical side: commuting unitary pairs, their joint eigenvalues on
//! symmetric products of the torus, and unitary characters of surface
//! groups.

pub mod characters;
pub mod eigen;
pub mod matching;
pub mod matrix;
pub mod simdiag;

pub use characters::{
    relation_defect, stable_eigenvalue_map, u1_characters, CharacterPoint, LabeledCharacter,
    Presentation, StableEigenvalues,
};
pub use eigen::{hermitian_eigen, HermitianEigen};
pub use matching::multiset_distance;
pub use matrix::ComplexMatrix;
pub use simdiag::{
    simultaneous_diag, torus_moduli_map, unitary_spectrum, EigenPairMultiset, SimDiag,
    SimDiagOptions, TorusMap,
};
pub use num_complex::Complex64;
