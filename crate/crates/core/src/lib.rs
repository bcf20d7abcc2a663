pub mod error;
pub mod finset;

pub use error::{Error, Result};
pub mod smbf;
pub mod bicategory;
pub mod fuller;
pub mod basechange;
pub mod equivariant;
pub mod invariants;
pub mod deformation;
pub mod random;
pub mod io;
pub mod suite;
