pub mod abelian;
pub mod catalog;
pub mod cyclotomic;
pub mod equivariant;
pub mod error;
pub mod gl_types;
pub mod linalg;
pub mod lrr;
pub mod mackey;
pub mod numtheory;
pub mod poly;
pub mod rational;
pub mod rational_rr;
pub mod verify;

pub use error::{Error, Result};
