//! Faces of Tits cones and imaginary cones of Kac–Moody root data, and the
//! Coxeter-monoid machinery built on them.

pub mod cartan;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod exactla;
pub mod facial;
pub mod fixtures;
pub mod golden;
pub mod imagcone;
pub mod realization;
pub mod subcone;
pub mod subset;
pub mod titscone;

pub use cartan::{Classification, Gcm, HypClass, TypeLabel};
pub use error::{Error, Result};
pub use realization::{Characteristic, RootBase, SystemSpec};
pub use subset::Subset;
