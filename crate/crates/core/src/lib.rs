//! Exact computations in free loops and truncated non-associative power
//! series: Evans normal forms, Magnus maps, dimension filtrations, Higman's
//! (L,A) construction and its Hopf-algebraic refinement.
//!
//! All coefficient arithmetic is done with arbitrary-precision rationals;
//! every identity checked by this crate is exact.

pub mod higman;
pub mod higman_hopf;
pub mod hopf;
pub mod loops;
pub mod magnus;
pub mod series;
pub mod suites;
pub mod term;

use num::BigRational;

/// Coefficient type used throughout the crate.
pub type Q = BigRational;

/// Non-commutative or commutative flavour of every construction.
///
/// The flag is threaded through words, monomials and series; mixing the two
/// flavours in one computation is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Mode {
    NonCommutative,
    Commutative,
}

impl Mode {
    pub fn is_commutative(self) -> bool {
        matches!(self, Mode::Commutative)
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::NonCommutative => write!(f, "non-commutative"),
            Mode::Commutative => write!(f, "commutative"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("generator index {index} out of range 1..={alphabet}")]
    GeneratorOutOfRange { index: u32, alphabet: u8 },
    #[error("series is not a unit (zero constant term)")]
    NotAUnit,
    #[error("truncation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("mode mismatch: {0} vs {1}")]
    ModeMismatch(Mode, Mode),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("substituted element must have zero constant term")]
    NonZeroConstant,
    #[error("base for logarithms must have constant term 1 and a non-zero linear coefficient")]
    InvalidBase,
    #[error("drop_parens is only defined for non-commutative series")]
    CommutativeFlatten,
    #[error("set is not closed under components: missing {0}")]
    NotComponentClosed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn q_zero() -> Q {
    use num::Zero;
    Q::zero()
}

pub(crate) fn q_one() -> Q {
    use num::One;
    Q::one()
}

pub(crate) fn q_int(n: i64) -> Q {
    Q::from_integer(n.into())
}
