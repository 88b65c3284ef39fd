//! Computer algebra for finite-codimensional subalgebras of holomorphic
//! functions on the unit disk, modeled through truncated Taylor data at
//! the origin.
//!
//! A subalgebra is represented by a *connection*: a finite-dimensional
//! space of derivative functionals supported at the origin whose common
//! kernel the subalgebra is. On top of that representation the crate
//! computes the integer invariants (codimension, order, contact),
//! canonical primitives and moduli coordinates, decides when two cusp
//! algebras are biholomorphically equivalent, and produces explicit
//! two-function embeddings of the associated cusp together with point
//! clouds suitable for rendering.
//!
//! Module layout:
//! - [`jet`]: arithmetic of truncated complex power series.
//! - [`functional`]: derivative functionals and connections.
//! - [`algebra`]: [`CuspAlgebra`] construction, invariants, membership,
//!   primitives, and the polynomial-plus-remainder decomposition.
//! - [`moduli`]: canonical forms, equivalence, moduli coordinates, and
//!   local equivalence maps.
//! - [`polyexp`]: closed-form functions `p(z) exp(q(z))` and polynomial
//!   root finding.
//! - [`embedding`]: zero-free primitives, embedding pairs, and cusp
//!   rendering.

use thiserror::Error;

pub mod algebra;
pub mod embedding;
pub mod functional;
pub mod jet;
mod linalg;
pub mod moduli;
pub mod polyexp;

pub use algebra::{CuspAlgebra, Decomposition, FiltrationProfile, ModuliPoint};
pub use embedding::EmbeddingPair;
pub use functional::{Connection, LocalFunctional};
pub use jet::Jet;
pub use polyexp::PolyExpFunction;

/// Default absolute tolerance for coefficientwise comparisons.
pub const DEFAULT_COEFF_TOL: f64 = 1e-9;

/// Default relative pivot threshold used by row reduction; a column
/// entry below this fraction of the largest input row norm is treated
/// as zero when ranks are decided.
pub const DEFAULT_PIVOT_REL: f64 = 1e-8;

/// Default relative tolerance for membership tests: a functional value
/// on a jet `f` counts as zero when it is below this fraction of
/// `1 + ||f||_inf`.
pub const DEFAULT_MEMBER_REL: f64 = 1e-8;

/// Tolerance for the unimodularity check on rotation multipliers.
pub const UNIMODULAR_TOL: f64 = 1e-10;

/// Numeric thresholds used by rank decisions and membership tests.
///
/// The fields default to the crate-level constants; construct with
/// struct update syntax to override a single threshold.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Absolute tolerance for coefficientwise jet comparison.
    pub coeff: f64,
    /// Relative pivot threshold for row reduction.
    pub pivot_rel: f64,
    /// Relative tolerance for functional-annihilation (membership) tests.
    pub member_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            coeff: DEFAULT_COEFF_TOL,
            pivot_rel: DEFAULT_PIVOT_REL,
            member_rel: DEFAULT_MEMBER_REL,
        }
    }
}

/// Errors reported by the toolkit.
///
/// Precondition violations are hard errors rather than silent
/// coercions; in particular jets of different truncations never mix.
#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("truncation {got} is too small, need at least {needed}")]
    TruncationTooSmall { needed: usize, got: usize },
    #[error("inner jet of a composition must vanish at the origin")]
    InnerConstantTerm,
    #[error("jet is not a univalent germ: constant term must vanish and linear term must not")]
    NotUnivalent,
    #[error("jet does not have a double zero with nonzero second Taylor coefficient")]
    NotOrderTwo,
    #[error("jet has a vanishing constant term and therefore no reciprocal")]
    ZeroConstantTerm,
    #[error("jet is not divisible by z^{power}: a lower-order coefficient is nonzero")]
    NotDivisible { power: usize },
    #[error("functional of order {order} does not fit in truncation {truncation}")]
    OrderExceedsTruncation { order: usize, truncation: usize },
    #[error("connection is not algebraic: its kernel is not closed under products")]
    NotAlgebraic,
    #[error("connection does not annihilate constants, so its kernel is not unital")]
    ConstantsNotAnnihilated,
    #[error("connection has contact zero and its kernel is not a cusp algebra")]
    NotCusp,
    #[error("operation requires a simple algebra (contact 1), found contact {contact}")]
    NotSimple { contact: usize },
    #[error("jet is not a member of the algebra")]
    NotMember,
    #[error("jet is not a primitive of the algebra")]
    NotPrimitive,
    #[error("moduli points have different lengths: {left} vs {right}")]
    ModuliLengthMismatch { left: usize, right: usize },
    #[error("internal verification residual {residual:.3e} exceeds its tolerance")]
    ResidualTooLarge { residual: f64 },
    #[error("linear system is singular to working precision")]
    SingularSystem,
    #[error("zero location must lie in the punctured open unit disk, got modulus {modulus}")]
    ZeroLocationOutOfRange { modulus: f64 },
    #[error("quotient left the algebra; the dividend does not vanish at the divisor's zero")]
    QuotientLeftAlgebra,
    #[error("polynomial root finding did not converge to certified residuals")]
    RootsNotConverged,
    #[error("embedding pair failed the jet-span density check")]
    DensityCheckFailed,
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
