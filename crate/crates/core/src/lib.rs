//! Contextual-inversion groups acting on pitch segments, the combinatorial
//! surfaces they tile, and walks on those tilings.

pub mod group;
pub mod lattice;
pub mod pitch;
pub mod surface;
pub mod walks;
pub mod wire;

pub use group::{Family, GroupElement, GroupError, TileGroup};
pub use pitch::{AffineOperator, OperatorDescriptor, PitchError, PitchSegment};
