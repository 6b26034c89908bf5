//! Exact recomputation of the invariants of the moduli space of eight points
//! on the projective line: GIT stability, the Kirwan blow-up of the Luna
//! slice, the discriminant quadratic space over F_2, equivariant Betti
//! numbers and the divisor-class ledger.

pub mod blowup;
pub mod cohomology;
pub mod forms_git;
pub mod fqspace;
pub mod picard;
pub mod polyalg;
pub mod verify;
