//! Computation with operadic weak ω-categories below a finite
//! dimension bound.
//!
//! The crate is organised bottom-up:
//!
//! * [`globset`]: truncated globular sets, their morphisms, discs, spheres
//!   and lifting problems against the boundary inclusions.
//! * [`pasting`]: globular pasting schemes, labelled pasting diagrams and the free
//!   strict ω-category structure on them.
//! * [`lterm`]: the initial globular operad with contraction, presented as a
//!   term calculus with unique normal forms.
//! * [`suspension`]: the one-object suspension of schemes, diagrams and terms.
//! * [`algebra`]: algebras for the term calculus, strict ω-categories as the
//!   canonical example, and hom algebras.
//! * [`groupoid`]: identities, binary composites and witness sets for weak
//!   invertibility.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod globset;
pub mod groupoid;
pub mod lterm;
pub mod pasting;
pub mod report;
pub mod suspension;

pub use error::{Error, Result};
pub use report::{Report, Violation};

/// Global dimension bound. Cells above it do not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation(usize);

impl Truncation {
    pub const DEFAULT: Truncation = Truncation(3);

    pub const fn new(max_dim: usize) -> Self {
        Truncation(max_dim)
    }

    pub const fn max_dim(self) -> usize {
        self.0
    }

    pub fn check(self, dim: usize) -> Result<()> {
        if dim > self.0 {
            Err(Error::DimensionOverflow { dim, max: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Self::DEFAULT
    }
}
