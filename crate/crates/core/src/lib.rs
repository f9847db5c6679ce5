//! besselint-core: series evaluation of definite integrals of products of
//! Bessel functions, verified against an independent quadrature oracle.
//!
//! The crate is organized in layers:
//!
//! 1. [`kernel`] — gamma-family special functions over complex arguments;
//! 2. [`bessel`], [`zeta`], [`hyper`] — the special-function vocabulary of
//!    the closed forms (Bessel J/I, Hurwitz–Lerch zeta, hypergeometric pFq,
//!    complete elliptic integrals);
//! 3. [`series`] — convergence-controlled summation over 1–6 nested indices;
//! 4. [`families`] — the nine master integral-to-series identities;
//! 5. [`quad`] — the independent quadrature oracle (tanh-sinh and
//!    oscillatory Gauss–Kronrod), which never touches the series engine;
//! 6. [`expr`], [`corpus`] — a small expression language for closed forms
//!    and the verification runner that classifies each identity as Pass,
//!    ErrataConfirmed, Fail, or Skipped.

pub mod bessel;
pub mod corpus;
pub mod cx;
pub mod error;
pub mod expr;
pub mod families;
pub mod hyper;
pub mod kernel;
pub mod quad;
pub mod series;
pub mod zeta;

pub use corpus::{CorpusEntry, Expected, MatchTolerances, Report, Status, Verdict};
pub use cx::{cx, re, Cx};
pub use error::{Error, Result};
pub use expr::{eval_expr, parse_expr, print_expr, Expr};
pub use families::FamilySpec;
pub use quad::{QuadConfig, QuadResult};
pub use series::{SeriesResult, SumConfig};
