use thiserror::Error;

/// Errors surfaced by the library.
///
/// Contract violations (mismatched dimensions, mixing algebras) panic via
/// assertions instead; these variants cover input errors and exceeded
/// search guards, which callers are expected to handle.
#[derive(Debug, Error)]
pub enum Error {
    /// Syntax or semantic error in an algebra description file.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The algebra is outside the supported class (not a string algebra,
    /// non-admissible ideal, ...). Names the violated condition.
    #[error("unsupported algebra class: {0}")]
    UnsupportedAlgebra(String),

    /// A cyclic string exists, so the algebra is representation-infinite
    /// and the indecomposable catalog cannot be completed.
    #[error("band detected: representation-infinite ({0})")]
    BandDetected(String),

    /// A configured search bound was exceeded.
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    /// The isomorphism test exhausted both its enumeration guard and its
    /// sampling budget without a verdict.
    #[error("iso test inconclusive: {0}")]
    IsoInconclusive(String),

    /// The Hom-count system was singular or the rebuilt module failed the
    /// isomorphism check; signals an incomplete catalog.
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),

    /// A machine-checked theorem identity did not hold.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}
