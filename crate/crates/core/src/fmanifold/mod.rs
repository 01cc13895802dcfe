pub mod jordan;
pub mod linalg;
pub mod structure;
pub mod tensors;

pub use jordan::JordanSpec;
pub use linalg::{det, invert};
pub use structure::{
    associativity_residual, canonical_structure, circ, d_l_function, hertling_manin_residual, mult_operator, nijenhuis,
    CTensor, Structure,
};
pub use tensors::{Matrix, Tensor3, Tensor4, VectorField};
