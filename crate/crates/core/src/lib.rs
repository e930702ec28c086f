//! Exact enumeration of Grassmannians `Gr(k,n)(F_q)`, the top-dimensional open
//! positroid variety `Π°_{k,n}` and its anisotropic twisted form over small
//! finite fields, together with the q-series closed forms they are checked
//! against.
//!
//! Module map:
//!
//! * [`field`]: `F_{p^m}` with a designated base subfield and Frobenius.
//! * [`matrix`]: dense linear algebra, minors and cyclic minors.
//! * [`grassmann`]: Schubert-cell enumeration, rotation and torus actions.
//! * [`positroid`]: membership, counts, stabilizers, rotation fixed points.
//! * [`twisted`]: Moore matrices, the twisted count, the anisotropic torus and
//!   the Lang element.
//! * [`qseries`]: exact integer polynomials in `q`.
//! * [`report`], [`verify`], [`table`]: machine-readable reports, verification
//!   suites and count tables used by the command-line front end.

pub mod error;
pub mod field;
pub mod grassmann;
pub mod limits;
pub mod matrix;
pub mod positroid;
pub mod qseries;
pub mod report;
pub mod sweep;
pub mod table;
pub mod twisted;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElement, FieldSpec};
pub use grassmann::{CellIndex, GrassmannPoint};
pub use limits::Limits;
pub use matrix::{Matrix, RrefResult};
pub use qseries::IntPolynomial;
pub use report::VerificationReport;
