//! Exact symbolic computation of integral Hodge functions.
//!
//! The crate packages the integral cohomology of a (possibly synthetic)
//! smooth projective variety — Hodge numbers plus per-degree torsion groups
//! — into a single element of a quotient ring, in which the invariant is
//! multiplicative for products of varieties and additive for cut-and-paste
//! decompositions. The cohomology groups can be reconstructed degree by
//! degree from the ring element.
//!
//! Modules:
//!
//! * [`abgroup`] — finitely generated abelian groups in canonical form,
//!   with tensor, Tor, and torsion invariants;
//! * [`ring`] — the coefficient ring, its normal form, degree function and
//!   `(u*v)`-localization;
//! * [`hodge`] — cohomology profiles, the integral Hodge function, and the
//!   reconstruction maps;
//! * [`motivic`] — formal classes of varieties (cut-and-paste, Kunneth
//!   products, blow-ups, cell decompositions) and their images under
//!   `h_vir`;
//! * [`verify`] — seeded randomized suites checking every identity against
//!   independent brute-force routes.

pub mod abgroup;
pub mod hodge;
pub mod motivic;
pub mod ring;
pub mod verify;

pub use abgroup::{AbGroupError, FinAbGroup, TorsionRun};
pub use hodge::{CohomologyProfile, HodgeError, ProfileError, ProfileParseError};
pub use motivic::{ClassTerm, MotivicError, VirtualClass};
pub use ring::{BasisMonomial, IdemPart, LocalizedElement, MainPart, Prime, RingElement};
