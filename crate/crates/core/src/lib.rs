//! Supercharacter theories of parabolic subgroups `G = LU` in the finite
//! orthogonal groups (types B, D) and symplectic groups (type C) over a
//! prime field of odd characteristic.
//!
//! Two theories are built and checked by exact arithmetic:
//!
//! * the Ub-theory ([`utheory`]), obtained from the action of the ambient
//!   block-unitriangular group `Ub` on the Lie algebra `u` of `U` and its dual;
//! * the coarser Gb-theory ([`gtheory`]), labelled by rook placements with
//!   special coefficient maps.
//!
//! [`verify`] contains the falsification harness: supercharacter axioms,
//! the auxiliary lemmas, induced-character oracles and the refinement
//! relation between the two theories.

pub mod algebra;
pub mod chartab;
pub mod error;
pub mod groups;
pub mod gtheory;
pub mod orbits;
pub mod session;
pub mod table;
pub mod theory;
pub mod utheory;
pub mod verify;

pub use error::{Error, Result};
pub use groups::{Family, GroupSpec, Parabolic};
pub use session::{Guards, Session};
