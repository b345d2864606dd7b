//! Exact log canonical thresholds of polynomials at the origin.
//!
//! Thresholds are computed from the Newton polyhedron of the support: for
//! general coefficients the threshold is `min(1, 1/t*)` where `(t*, …, t*)`
//! is the point where the diagonal enters the polyhedron. Around that core
//! sit the closed forms and inequalities of the threshold calculus and tools
//! for exploring the sets `HT_n` of all thresholds in `n` variables.
//!
//! All arithmetic is exact; see [`Rat`].

pub mod cli;
pub mod error;
pub mod hull;
pub mod lct;
pub mod lp;
pub mod output;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod sets;

pub use error::{Error, Result};
pub use hull::{contains_point, diagonal_parameter, facets, Facet, NewtonPolyhedron};
pub use lct::{
    check_restriction, check_subadditivity, lct_diagonal, lct_direct_sum, lct_newton,
    lct_univariate, multiplicity_bounds, truncation_bound, Exactness, ThresholdReport, Witness,
};
pub use parse::{parse_poly, ParseError};
pub use poly::{ExponentVector, Poly, ThresholdValue};
pub use rat::Rat;
pub use sets::{
    accumulation_scan, epsilon_candidate, family_limit_check, gap_search, ht1, ht2_enumerate,
    sylvester, toric_sample, SylvesterSeq, ThresholdSetSample,
};
