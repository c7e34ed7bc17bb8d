//! Exact twisted cohomology for infinitesimal projective rigidity of
//! hyperbolic 3-manifolds.
//!
//! The pipeline is: a finitely presented group and a holonomy into `SO(3,1)`
//! (given directly or through `SL(2,C)`), all over `Q(i, sqrt d)`; Fox calculus
//! builds the cochain complex with coefficients in `sl(4)`, `so(3,1)`, `v` or
//! `gl(4)`; exact elimination gives cohomology, and the Killing form turns
//! cocycle values into certificates.

pub mod cohomology;
pub mod examples;
pub mod field;
pub mod lie;
pub mod linalg;
pub mod presentation;
pub mod rigidity;

pub use cohomology::{Cochain1, Cochain2, CohomologyError, CohomologyReport, Restriction, TwistedComplex};
pub use field::{Field, FieldElement, FieldError, Rational};
pub use lie::{killing, LieError, LieModule, ModuleKind, Representation};
pub use linalg::{LinalgError, Matrix, Subspace, Vector};
pub use presentation::{fox_derivative, Cusp, GroupRingElement, Presentation, PresentationError, Word};
pub use rigidity::{filling_prediction, flexing_scan, rigidity_report, RigidityError, RigidityVerdict, SlopeScan};
