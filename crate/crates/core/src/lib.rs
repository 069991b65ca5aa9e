//! Hankel operators with polynomial symbols on Bergman spaces of products
//! of two disks: symbol algebra, exact Gram matrices, spectral brackets for
//! the essential norm, and the boundary-disk bounds that sandwich it.

pub mod bergman;
pub mod bounds;
pub mod error;
pub mod exact;
pub mod hankel;
pub mod symbol;
pub mod verify;

pub use bergman::{BasisIndex, ProductDomain};
pub use error::{Error, Result};
pub use symbol::{Coord, Symbol};
