//! Exact computation of higher and extended Jacobi polynomials of linear
//! codes over finite fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactmath`]: big integers, rationals and exact linear solving
//! - [`gf`]: arithmetic in GF(p^e) via lookup tables
//! - [`qcomb`]: q-brackets and Gaussian binomials
//! - [`bipoly`]: bihomogeneous polynomials in `(w,z)` and `(x,y)`
//! - [`code`]: linear codes, duals, codeword/subcode/extension enumeration
//! - [`enumerators`]: weight, higher weight, Jacobi and extended Jacobi tables
//! - [`transforms`]: MacWilliams-type identities
//! - [`designs`]: subcode-support designs and polarization
//! - [`harmonic`]: harmonic functions, Hahn polynomials and coefficient recovery
//! - [`verify`]: the batch identity checker behind `jacobiforge verify`
//! - [`cli`]: the command-line front end
//!
//! Every quantity is exact. Coordinates are 0-based inside the library and
//! 1-based on the command line and in rendered output of reference sets.
//!
//! ```
//! use jacobiforge::code::{LinearCode, RefSet};
//! use jacobiforge::enumerators::higher_jacobi;
//!
//! let c = LinearCode::parse("q=2 n=6\n110000\n001100\n000011").unwrap();
//! let t = RefSet::new(6, &[0]).unwrap();
//! let j2 = higher_jacobi(&c, &t, 2).unwrap();
//! assert_eq!(j2.to_poly().to_string(), "w*x*y^4 + 2*z*x^2*y^3 + 4*z*y^5");
//! ```

pub mod bipoly;
pub mod cli;
pub mod code;
pub mod designs;
pub mod enumerators;
mod error;
pub mod exactmath;
pub mod gf;
pub mod harmonic;
pub mod qcomb;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
