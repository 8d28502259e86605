//! Exact combinatorics of central real hyperplane arrangements: sign
//! vectors and Yoshinaga's test, Varchenko–Gelfand and Cordovil ideals,
//! matroid chordality and Falk–Randell formality.
//!
//! ```
//! use arrcheck::{catalog, report::{analyze, AnalyzeOptions}};
//!
//! let d4 = catalog::get("d4").unwrap();
//! let r = analyze(&d4, "d4", &AnalyzeOptions::default()).unwrap();
//! assert_eq!(r.chamber_count, 192);
//! assert!(r.yoshinaga && !r.cordovil.quadratic);
//! ```

pub mod arrangement;
pub mod catalog;
pub mod cone;
pub mod cordovil;
pub mod error;
pub mod exact;
pub mod field;
pub mod formality;
pub mod input;
pub mod matroid;
pub mod report;
pub mod signgeo;
pub mod vg;

pub use arrangement::Arrangement;
pub use error::{Error, Result};
pub use field::FieldKind;
