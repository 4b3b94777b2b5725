//! Which zero-order terms give a ring with the PBW property.

mod pbw;
mod potential;
mod spec;

pub use pbw::*;
pub use potential::*;
pub use spec::*;
