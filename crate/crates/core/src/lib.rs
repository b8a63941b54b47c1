pub mod cli;
pub mod category;
pub mod diagram;
pub mod error;
pub mod exact;
pub mod hopf;
pub mod ideal;
pub mod invariant;
pub mod modified;
pub mod report;
pub mod trace;

pub use category::{Category, HomSpace, Morphism, ObjectRef};
pub use error::{Error, Result};
pub use exact::{Field, Matrix, Scalar};
