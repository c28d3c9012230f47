//! Exact algebra behind (a,b,c)-generation questions for finite groups of Lie type.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`gf`] finite fields `F_p`, `F_{p^m}` and the rationals, behind the [`gf::Field`] traits;
//! * [`exactpoly`] dense polynomials over `Z`/`Q` and over finite fields, with full factorization;
//! * [`cyclo`] the cyclotomic constraint polynomials annihilating `tr(g)` and `chi_2(g)`
//!   for symplectic `g` of bounded order;
//! * [`matsp`] 4x4 matrices, `Sp_4(q)`, group closure and stabilizer chains, generation tests;
//! * [`traceid`] the degree-4 trace identities, trace-word reduction and the character-field
//!   generators of two order-3 symplectic matrices;
//! * [`rigidity`] the centralizer-dimension bookkeeping classifying hyperbolic triples;
//! * [`certificate`] the finite list of field degrees `r` for which `Sp_4(p^r)` can be
//!   `(3,3,c)`-generated.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod certificate;
pub mod cyclo;
mod error;
pub mod exactpoly;
pub mod gf;
pub mod matsp;
pub mod rigidity;
pub mod traceid;

pub use error::{Error, Result};

use rand::SeedableRng;

/// Seed type threaded through every randomized routine.
pub type Seed = u64;

/// The generator used throughout the crate. ChaCha8 keeps runs reproducible across platforms.
pub type Rng = rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: Seed) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Derive an independent stream for sub-task `index` of a run seeded with `seed`.
pub fn derive_seed(seed: Seed, index: u64) -> Seed {
    // splitmix64 finaliser
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
