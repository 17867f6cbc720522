//! Counters: non-increasing formal power series in `δ` with coefficients in
//! the min-plus algebra, together with exact algorithms for the Hadamard
//! product `⊙`, its residual `⊙♯` and its dual residual `⊙♭`.
//!
//! A counter `s` maps a time `t` to the cumulative number of events `s(t)`
//! that occurred up to and including `t`. It is stored compactly through its
//! change points: a monomial `n d t` means "value `n` for every instant `≤ t`".
//!
//! ```
//! use counters::{hadamard, text};
//!
//! let s = text::parse_series("-1d0 + (5d2)(2d1)*").unwrap();
//! let a = text::parse_series("-1d-5 + (3d0)(1d2)*").unwrap();
//! let x = hadamard::sharp(&s, &a).unwrap();
//! assert_eq!(text::format_series(&x), "0d0 + (1d2 + 2d3)(3d2)*");
//! ```

pub mod error;
pub mod extnum;
pub mod hadamard;
pub mod oracle;
#[cfg(feature = "random")]
pub mod random;
pub mod series;
pub mod text;

pub use error::{Error, Result};
pub use extnum::{ExtInt, InfConvention};
pub use hadamard::{DiffParams, OpOutcome};
pub use series::{Monomial, Polynomial, Series};
