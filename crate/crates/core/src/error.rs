use thiserror::Error;

/// Errors shared by every layer of the library. Validation errors name the
/// first witness in row-major scan order so failures are reproducible.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table is not square: row {row} has length {len}, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("table is not closed: entry ({0},{1}) out of range")]
    NotClosed(usize, usize),
    #[error("index 0 does not act as a two-sided identity (first witness {0})")]
    NoIdentityAtZero(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("map does not send identity to identity")]
    IdentityNotPreserved,
    #[error("map is not a homomorphism: fails at ({0},{1})")]
    NotHomomorphism(usize, usize),
    #[error("element {0} out of range for group of order {1}")]
    ElementOutOfRange(usize, usize),
    #[error("subgroup is not closed or misses an inverse (witness {0})")]
    NotSubgroup(usize),
    #[error("subgroup is not normal (witness g = {0})")]
    NotNormal(usize),
    #[error("subgroup is not normal in the quotient (witness {0})")]
    NotNormalInQ(usize),
    #[error("automorphism search bound {bound} exceeded by group of order {order}")]
    SearchBoundExceeded { bound: usize, order: usize },
    #[error("kernel of the projection does not match the designated subgroup")]
    KernelMismatch,

    #[error("coboundary is only defined in degrees 0 and 1 (got {0})")]
    DegreeTooHigh(u8),
    #[error("enumeration size {size} exceeds the configured bound {bound}")]
    SizeBoundExceeded { size: u128, bound: u128 },
    #[error("action is not well defined: lifts {0} and {1} disagree")]
    NotWellDefined(usize, usize),
    #[error("coefficient groups are incompatible between source and target")]
    CoefficientMismatch,
    #[error("coefficient group is not abelian")]
    NotAbelian,
    #[error("class is not invariant under the acting group (witness r = {0})")]
    NoInvarianceWitness(usize),
    #[error("class does not restrict to zero, so it lies outside the relative kernel")]
    NotInH2P,
    #[error("cochain has the wrong shape for its module")]
    CochainShape,

    #[error("kernel map is not injective")]
    NotInjective,
    #[error("projection is not surjective")]
    NotSurjective,
    #[error("exactness fails at {0}")]
    ExactnessFailure(&'static str),
    #[error("commutativity fails on edge {0}")]
    DiagramFailure(&'static str),
    #[error("lifting does not lie over the outer action at q = {0}")]
    NotALifting(usize),
    #[error("cochain is not a normalized cocycle")]
    NotACocycle,
    #[error("outer actions of the two extensions differ at q = {0}")]
    OuterActionMismatch(usize),
    #[error("relative outer actions of the two inputs differ at q = {0}")]
    ActionMismatch(usize),
    #[error("extensions do not share kernel and quotient")]
    KernelQuotientMismatch,
    #[error("no section compatible with the requested liftings exists at r = {0}")]
    NoSection(usize),
    #[error("automorphism is not compatible with the relative outer action")]
    NotThetaCompatible,
    #[error("map is not a prolongation of the base action (witness p = {0})")]
    NotAProlongation(usize),
    #[error("map is not an isomorphism of extensions")]
    NotExtensionIso,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
