//! Exact classification of operator identities of degree 2 and
//! multiplicity 3 on associative algebras.
//!
//! The pipeline enumerates operator monomials through Dyck words, builds the
//! matrix of consequences of the general identity over `Q[a1..a10]`,
//! reduces it to partial Smith form, and studies the rank strata through
//! determinantal ideals and their Gröbner bases.

pub mod exactalg;
pub mod opmonoms;
pub mod opcompose;
pub mod polymat;
pub mod groebner;
pub mod classify;
