//! Error taxonomy shared by every module of the crate.
//!
//! All numerical routines return [`Result`]; no routine panics on a domain
//! violation or silently substitutes a default. Errors carry enough context
//! (the offending argument, an iteration budget, a byte offset) to be
//! actionable without a debugger.

use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Unified error type for kernel, series, quadrature, parser, and corpus
/// operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Gamma-family function evaluated at (or within 1e-12 of) a nonpositive
    /// integer pole.
    #[error("gamma-family pole at nonpositive integer, z = {0}")]
    PoleAtNonpositiveInteger(Complex64),

    /// A magnitude exceeded the double-precision range.
    #[error("magnitude overflow in {context}")]
    OverflowMagnitude { context: &'static str },

    /// A series or continued fraction failed to converge within its budget.
    #[error("no convergence in {context} after {iterations} iterations")]
    NonConvergence {
        context: &'static str,
        iterations: usize,
    },

    /// Upper incomplete gamma requested on the negative real axis without an
    /// explicit branch rotation.
    #[error("branch ambiguity for incomplete gamma at z = {0}; use the rotated form")]
    BranchAmbiguity(Complex64),

    /// Bessel function at z = 0 with an order whose real part is negative.
    #[error("Bessel function undefined at z = 0 for order {0}")]
    ZeroArgumentNegativeOrder(Complex64),

    /// Large-argument asymptotics requested outside the supported
    /// real-order/real-argument regime.
    #[error("asymptotic Bessel branch unsupported for complex order {nu} at |z| = {abs_z}")]
    AsymptoticUnsupported { nu: Complex64, abs_z: f64 },

    /// Newton iteration for a Bessel zero left its basin and the bisection
    /// fallback also failed.
    #[error("Newton iteration diverged locating zero {n} of J_{nu}")]
    NewtonDivergence { nu: f64, n: u32 },

    /// Hurwitz/Lerch evaluated at the s = 1 pole.
    #[error("Hurwitz-Lerch pole at s = 1")]
    PoleAtSOne,

    /// Hurwitz/Lerch shift parameter hit a nonpositive integer.
    #[error("Hurwitz-Lerch shift pole at a = {0}")]
    ShiftPole(Complex64),

    /// Lerch base outside the closed unit disk.
    #[error("Lerch base |z| > 1 outside the convergence disk, z = {0}")]
    OutsideConvergenceDisk(Complex64),

    /// Hypergeometric series divergent for the given argument.
    #[error("divergent hypergeometric series for argument {0}")]
    DivergentSeries(Complex64),

    /// A lower pFq parameter is a nonpositive integer not screened by a
    /// terminating upper parameter.
    #[error("lower hypergeometric parameter pole at {0}")]
    LowerParameterPole(Complex64),

    /// 2F1 continuation needs a transformation whose gamma prefactors
    /// degenerate (a-b or c-a-b within 1e-8 of an integer).
    #[error("degenerate 2F1 transformation: {which} = {value} is within 1e-8 of an integer")]
    DegenerateTransformation { which: &'static str, value: Complex64 },

    /// Elliptic integral at a singular parameter (m = 1 or n = 1).
    #[error("singular elliptic parameter {0}")]
    SingularParameter(Complex64),

    /// Multi-index sum showed sustained shell growth.
    #[error("series diverged: {shells} consecutive growing shells, last magnitude {last}")]
    Divergent { shells: usize, last: f64 },

    /// Multi-index sum hit the total-degree cap before converging.
    #[error("series degree cap {cap} exceeded (tail estimate {tail})")]
    DegreeCapExceeded { cap: usize, tail: f64 },

    /// Levin acceleration given fewer than 8 partial sums.
    #[error("acceleration needs at least 8 partials, got {0}")]
    InsufficientPartials(usize),

    /// Finite-bound series evaluation asked to handle b = infinity.
    #[error("infinite upper bound: use the infinite-form evaluator")]
    UnsupportedInfiniteBound,

    /// Infinite-form evaluation without a decaying exponential factor.
    #[error("infinite-form series requires a decaying exponential factor ({0})")]
    NoDecayFactor(&'static str),

    /// Infinite-form evaluation requested for a configuration the family
    /// does not support (wrong family, or a log weight).
    #[error("unsupported infinite-form configuration: {0}")]
    InfiniteFormUnsupported(&'static str),

    /// Semi-infinite quadrature hit a non-integrable endpoint.
    #[error("non-integrable singularity detected in quadrature")]
    NonIntegrableSingularity,

    /// Oscillatory panel acceleration stalled.
    #[error("acceleration of oscillatory panel sums stalled at residual {0}")]
    AccelerationStall(f64),

    /// Expression parser syntax error.
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },

    /// Expression references a function outside the builtin roster.
    #[error("unknown builtin '{name}' at byte {offset}")]
    UnknownBuiltin { name: String, offset: usize },

    /// Builtin called with the wrong number of arguments.
    #[error("'{name}' expects {expected} argument(s), got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },

    /// Free parameter not bound at evaluation time.
    #[error("unbound parameter '{0}'")]
    UnboundParam(String),

    /// Corpus file format violation.
    #[error("corpus format error at line {line}: {message}")]
    FormatError { line: usize, message: String },

    /// Two corpus entries share an id.
    #[error("duplicate corpus entry id '{0}'")]
    DuplicateId(String),

    /// A numeric operation produced a non-finite component.
    #[error("non-finite value produced in {context}")]
    NonFinite { context: &'static str },
}
