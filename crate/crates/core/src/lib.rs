//! Decide, from coefficient data alone, whether a polynomial with nonzero
//! coefficients has only simple zeros — and check every such certificate
//! against independent root-finding and winding-number oracles.
//!
//! The certificates compare the second quotients `q_k = a_{k-1}^2 / (a_{k-2} a_k)`
//! of the coefficients against degree-dependent thresholds ([`constants`]).
//! A certified polynomial has simple zeros with pairwise distinct moduli,
//! one per annulus between the radii of [`polyseries::radii`]; the real-case
//! certificates conclude that every zero is real. The [`extremal`] module
//! constructs witnesses showing each threshold cannot be lowered, and
//! [`cubic`] carries the complete sharp analysis for degree 3.
//!
//! ```
//! use zerocert::certifier::{certify_even, Verdict};
//! use zerocert::polyseries::parse_poly;
//! use zerocert::rootlab::{verify_annuli, AnnulusVerdict, RootConfig};
//!
//! // 1 + z + z^2/6 + z^3/216 + z^4/46656: every quotient equals 6
//! let p = parse_poly(
//!     r#"{"coeffs":[[1,0],[1,0],[0.16666666666666666,0],
//!                   [0.004629629629629629,0],[0.0000214334705075445,0]]}"#,
//! )
//! .unwrap();
//! let cert = certify_even(&p);
//! assert_eq!(cert.verdict, Verdict::Certified);
//!
//! // and the independent oracles agree: one zero per annulus
//! let check = verify_annuli(&p, &RootConfig::default()).unwrap();
//! assert_eq!(check.verdict, AnnulusVerdict::Pass);
//! ```

pub mod certifier;
pub mod constants;
pub mod cubic;
pub mod error;
pub mod extremal;
pub mod polyseries;
pub mod rootlab;

pub use error::{Error, Result};
pub use num_complex::Complex64;
