//! Trace identities for 4x4 matrices, the reduction of traces of words in two order-3
//! elements to a finite generating set, and the character-field generators of symplectic
//! `(3,3)`-pairs.

mod charfield;
mod poly;
mod procesi;
mod reduce;
mod word;

pub use charfield::{
    charfield_generators, check_formulas, classify_case, formula_value, rho_eval, sampled_trace_field_degree, Case,
    CaseReport, FormulaCheck, FORMULAS_ALL,
};
pub use poly::{Symbol, TracePoly};
pub use procesi::{
    cycle_decomposition, identity, parse_identity, permutations, procesi_lhs, procesi_sym5, Expr, IDENTITY_1,
    IDENTITY_2, IDENTITY_3,
};
pub use word::{canonical_words, invert, reduce_cyclic, reduce_linear, Mode, TraceWord};
pub use reduce::{find_pattern, generator_set, reduce_trace, Pattern, TraceReducer};

#[cfg(test)]
mod tests;
