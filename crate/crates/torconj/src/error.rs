//! Error type shared by the whole library.

use std::fmt;

/// Errors reported by library operations on bad or incompatible inputs.
///
/// Internal consistency failures (a constructed certificate that does not
/// verify, a coefficient ring that fails its ring axioms) are reported as
/// `Internal`; they signal a bug, not a bad input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix or vector dimensions do not fit the operation.
    Dimension(String),
    /// Two values live over different minimal polynomials.
    ContextMismatch,
    /// Division or inversion of the zero field element.
    ZeroElement,
    /// A supplied basis is linearly dependent.
    DependentBasis,
    /// The polynomial is not monic.
    NotMonic,
    /// The polynomial degree is outside the supported range.
    BadDegree(String),
    /// The polynomial has a nontrivial integer factor.
    Reducible(String),
    /// A lattice that must have full rank does not.
    RankDeficient,
    /// A lattice presented as an order fails a ring axiom.
    NotAnOrder(String),
    /// The minimal polynomial does not have unit constant term.
    NonUnitModulus,
    /// An element lies outside the lattice it must belong to.
    NotInLattice,
    /// A matrix that must be unimodular is not.
    NotUnimodular,
    /// The two automorphisms have distinct characteristic polynomials.
    CharpolyMismatch,
    /// The ideals are not weakly equivalent, so no block certificate exists.
    NotWeaklyEquivalent,
    /// The matrix does not intertwine the given pair.
    NotIntertwiner,
    /// The matrices do not commute.
    NonCommuting,
    /// A conjugate that must be block diagonal is not.
    NotBlockDiagonal,
    /// The diagonal blocks of a conjugate disagree.
    UnequalDiagonalBlocks,
    /// The recovered polynomial does not map the root to a conjugate root.
    NotGaloisElement,
    /// An embedding column has non-unit content.
    ColumnContentNotOne,
    /// The embedding columns do not span a primitive sublattice.
    NotPrimitiveEmbedding,
    /// No integer matrix intertwines the embedding with the block system.
    NotSemiconjugacy,
    /// A supplied certificate or witness fails its defining identities.
    InvalidWitness(String),
    /// Generator or partition search exhausted its budget.
    SearchExhausted(String),
    /// Malformed textual input.
    Parse(String),
    /// A self-check failed; this signals a bug in the library.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension(s) => write!(f, "dimension mismatch: {s}"),
            Error::ContextMismatch => write!(f, "operands have different minimal polynomials"),
            Error::ZeroElement => write!(f, "division by the zero field element"),
            Error::DependentBasis => write!(f, "basis elements are linearly dependent"),
            Error::NotMonic => write!(f, "polynomial is not monic"),
            Error::BadDegree(s) => write!(f, "unsupported degree: {s}"),
            Error::Reducible(s) => write!(f, "polynomial is reducible: {s}"),
            Error::RankDeficient => write!(f, "lattice does not have full rank"),
            Error::NotAnOrder(s) => write!(f, "not an order: {s}"),
            Error::NonUnitModulus => {
                write!(f, "minimal polynomial needs constant term +1 or -1 here")
            }
            Error::NotInLattice => write!(f, "element lies outside the required lattice"),
            Error::NotUnimodular => write!(f, "matrix is not unimodular"),
            Error::CharpolyMismatch => {
                write!(f, "automorphisms have different characteristic polynomials")
            }
            Error::NotWeaklyEquivalent => {
                write!(f, "ideals are not weakly equivalent; no block certificate exists")
            }
            Error::NotIntertwiner => write!(f, "matrix does not intertwine the pair"),
            Error::NonCommuting => write!(f, "matrices do not commute"),
            Error::NotBlockDiagonal => write!(f, "conjugate is not block diagonal"),
            Error::UnequalDiagonalBlocks => write!(f, "diagonal blocks differ"),
            Error::NotGaloisElement => {
                write!(f, "polynomial does not send the root to a conjugate root")
            }
            Error::ColumnContentNotOne => write!(f, "embedding column has non-unit content"),
            Error::NotPrimitiveEmbedding => {
                write!(f, "embedding does not span a primitive sublattice")
            }
            Error::NotSemiconjugacy => write!(f, "embedding is not a semiconjugacy"),
            Error::InvalidWitness(s) => write!(f, "invalid witness: {s}"),
            Error::SearchExhausted(s) => write!(f, "search exhausted: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::Internal(s) => write!(f, "internal consistency failure: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
