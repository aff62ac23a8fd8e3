pub mod error;
pub mod field;
pub mod linmap;
pub mod matrix;
pub mod sparse;
pub mod rmatrix;
pub mod tmatrix;
pub mod hopf;
pub mod tangle;
pub mod functor;
pub mod statesum;
pub mod delta;
pub mod cli;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp, Rational};
pub use hopf::HopfData;
pub use linmap::{Morphism, ObjectWord};
pub use matrix::DenseMatrix;
pub use rmatrix::RMatrixPackage;
pub use tangle::TangleWord;
pub use tmatrix::TMatrixPackage;

pub type QMatrix = DenseMatrix<Rational>;
pub type FpMatrix = DenseMatrix<Fp>;
pub type QMorphism = Morphism<Rational>;
pub type FpMorphism = Morphism<Fp>;
pub type QHopf = HopfData<Rational>;
pub type FpHopf = HopfData<Fp>;
pub type QRMatrixPackage = RMatrixPackage<Rational>;
pub type FpRMatrixPackage = RMatrixPackage<Fp>;
