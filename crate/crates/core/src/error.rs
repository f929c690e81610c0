use crate::lattice::SubsetMask;

/// Errors produced by lattice and counting operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("universe size {0} out of range (0..=8)")]
    UniverseOutOfRange(u32),

    #[error("mask {mask:?} out of range for universe of size {n}")]
    MaskOutOfRange { mask: SubsetMask, n: u32 },

    #[error("operands belong to different universes ({0} vs {1})")]
    UniverseMismatch(u32, u32),

    #[error("sets are not pairwise incomparable: {0:?} is contained in {1:?}")]
    NotAnAntichain(SubsetMask, SubsetMask),

    #[error("bit vector is not downward closed at mask {0:?}")]
    NotDownwardClosed(SubsetMask),

    #[error("bottom antichain is not below top")]
    BottomNotBelowTop,

    #[error("set family is not convex, missing {0:?}")]
    NotConvex(SubsetMask),

    #[error("precondition violated: {0}")]
    Precondition(&'static str),

    #[error("operation unsupported at this size: {0}")]
    UnsupportedSize(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("interval poset is empty")]
    EmptyPoset,
}

pub type Result<T> = std::result::Result<T, Error>;
