//! Schur-, Bernstein- and Markov-type inequality constants for complex
//! polynomials without zeros in the open unit disk.
//!
//! Norms are sup-norms over `[-1, 1]`; weights `phi` are decreasing on `[0, 1]`
//! and act on `[-1, 1]` through `phi(|x|)`.

pub mod error;
pub mod extremal;
pub mod json;
pub mod lorentz;
pub mod norm;
pub mod poly;
pub mod roots;
pub mod sample;
pub mod schur;
pub mod selftest;
pub mod weight;

pub use error::{Error, Result};
pub use extremal::{
    bernstein_factor, bernstein_scan, extremal_search, halasz_polynomial, halasz_report, markov_bound,
    reproduce_nonconvex, ExtremalResult, HalaszReport,
};
pub use lorentz::{
    bernstein_operator, lorentz_degree, to_lorentz, verify_degree_theorem, verify_lorentz_schur,
    DegreeStatus, DegreeVerdict, LorentzRep,
};
pub use norm::{sup_norm, weighted_sup_norm, NormMethod, NormResult, WeightedGrid};
pub use poly::{Evaluate, Polynomial, RootForm};
pub use roots::{find_roots, zero_free_in_disk};
pub use schur::{
    check_lemma_bound, equality_case_detect, erdelyi_remark_bound, find_weight_maximizer, schur_constant,
    schur_constant_power, verify_schur, verify_schur_with_grid, SchurReport,
};
pub use weight::{Weight, WeightKind};
