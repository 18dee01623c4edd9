//! Exact computations for generalized complex structures on flat
//! hyperkähler models `H^n`.

pub mod courant;
pub mod double_space;
pub mod error;
pub mod family;
pub mod hyperkahler;
pub mod linalg;
pub mod multivector;
pub mod sampling;
pub mod scalars;
pub mod twistor;

pub use error::{GctkError, Result};
