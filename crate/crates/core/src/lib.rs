//! Alexander polynomials and genera of doubly primitive knots, computed from
//! the lens-space surgery parameters `(p, q, k)` of their dual knots.
//!
//! The main entry points:
//!
//! ```
//! use dpknot::{alexander_polynomial, compute_tables, genus, validate_triple};
//!
//! let triple = validate_triple(18, 5, 7)?;
//! let delta = alexander_polynomial(&compute_tables(&triple))?;
//! assert_eq!(delta.to_string(), "1 - t + t^3 - t^4 + t^5 - t^6 + t^7 - t^9 + t^10");
//! assert_eq!(genus(&delta)?, 5);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! [`fox`] recomputes the same polynomial from the knot-group presentation
//! as an independent check, [`structure`] exposes the degree-sequence
//! analysis, and [`enumerate`] sweeps whole parameter ranges.

pub mod alexander;
pub mod enumerate;
pub mod form;
pub mod fox;
pub mod laurent;
pub mod params;
pub mod reference;
pub mod structure;
pub mod verify;

pub use alexander::{alexander_polynomial, genus, AlexanderError, GenusError};
pub use enumerate::{evaluate_triple, scan_w1, search, CatalogRecord, CheckStatus, SearchConfig, SearchFilter, W1Report};
pub use form::{form_decomposition, FormDecomposition, NotAlternatingForm};
pub use fox::oracle_alexander;
pub use laurent::{bracket, canonicalize, exact_divide, gcd_primitive, mul, DensePoly, LaurentError, LaurentPoly};
pub use params::{compute_tables, saito_condition, validate_triple, ParamError, SaitoCheck, SequenceTables, SurgeryTriple};
pub use structure::{structure_analysis, StructureReport};
pub use verify::{verify_triple, VerificationReport};
