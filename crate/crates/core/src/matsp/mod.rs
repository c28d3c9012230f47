//! 4x4 matrices over finite fields and the symplectic group `Sp_4(q)`: characteristic
//! polynomial coefficients, word maps, absolute irreducibility, group orders by closure or by
//! stabilizer chains, and `(a, b, c)`-generation tests.

mod census;
mod group;
pub mod linalg;
mod mat;
mod sample;
mod word;

pub use census::{census, generates_psp4, generates_sp4, is_abc_pair, psp_quotient_test, CensusEntry, Sp4Sampler};
pub use group::{
    closure_order, element_order, element_order_with_hint, enumerate_group, group_order, is_absolutely_irreducible,
    sp4_element_order, sp4_exponent_multiple, sp4_order, standard_generators, trace_witness, transvection,
    OrderConfig, ProductReplacement, StabChain, Strategy,
};
pub use mat::{form, CharPoly4, Mat4, GRAM};
pub use sample::{random_gl4_order_three, random_invertible};
pub use word::{eval_word, GroupWord};

#[cfg(test)]
mod tests;
