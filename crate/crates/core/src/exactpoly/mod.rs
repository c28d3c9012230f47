//! Dense univariate polynomials over `Z` and over field contexts, with gcd/lcm over `Q` and
//! complete factorization over finite fields (squarefree, distinct-degree, Cantor-Zassenhaus).

mod factor;
mod field;
mod int;

pub use factor::{
    distinct_degree, equal_degree, factor, roots_in, roots_in_ext, roots_in_field, squarefree_decomposition,
    Factorization,
};
pub use field::FieldPoly;
pub use int::{gcd_q, lcm_q, IntPoly};

#[cfg(test)]
mod tests;
