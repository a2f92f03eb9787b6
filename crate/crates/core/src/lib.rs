pub mod edbounds;
pub mod error;
pub mod genfree;
pub mod gf;
pub mod intlat;
pub mod perm;
pub mod rootsys;
pub mod schreier;
pub mod reps;
pub mod weyl;

pub use error::{Error, Result};
