//! Grassmannian Schubert structure constants in `H*`, `H*_T`, `K` and `K_T`,
//! computed by filling puzzle paths one piece at a time, together with the
//! interval rank matrix machinery that tracks the geometry of each step.

pub mod board;
pub mod error;
pub mod filling;
pub mod interval;
pub mod oracle;
pub mod pink;
pub mod poly;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use poly::{LPoly, Poly};
pub use words::Word;
