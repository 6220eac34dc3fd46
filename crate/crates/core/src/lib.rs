//! Construction and verification toolkit for finite groups without
//! characteristic conjugacy classes of cyclic subgroups.
//!
//! The crate builds the extension groups `G_p(A) = B x| A` (B elementary
//! abelian over GF(p) with the basis action `(v_h^i)^g = v_{hg}^i - v_g^i`),
//! iterates them over the primes of `|A|`, and decides `<p>`-wildness either
//! exactly (full automorphism group action on classes of cyclic subgroups)
//! or constructively (explicit automorphism words moving every class).

pub mod autos;
pub mod config;
pub mod error;
pub mod gfp;
pub mod group;
pub mod order;
pub mod semidirect;
pub mod tower;
pub mod wildness;

pub use config::Config;
pub use error::{Error, Result};
