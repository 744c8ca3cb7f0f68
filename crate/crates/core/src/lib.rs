//! Binary extended cyclic codes with two-coset defining sets, their exact
//! weight distributions (enumeration, MacWilliams transform, and closed
//! forms), and the 2-designs — including Steiner systems S(2, 4, 2^m) —
//! supported by their codewords.

// Parity and divisibility tests stay in `%` form throughout.
#![allow(clippy::manual_is_multiple_of)]

pub mod binom;
pub mod bits;
pub mod code;
pub mod cyclotomic;
pub mod designs;
pub mod error;
pub mod field;
pub mod polyring;
pub mod wdist;

pub use binom::binomial;
pub use bits::{BitVec, Echelon};
pub use code::{affine_permute, spectral_member, CodeKind, LinearCode};
pub use cyclotomic::{coset, coset_leaders, defining_set, CyclotomicCoset, DefiningSet};
pub use designs::{
    am_check, design_to_json, dual_design_params, extract_blocks_by_enumeration,
    extract_weight4_blocks, lambda_from_count, read_block_file, steiner_block_count, verify_design,
    write_block_file, wt6_lambda, wt8_lambda, AmReport, Design, DesignParams, PairCoverage,
};
pub use error::{Error, Result};
pub use field::{default_poly, FieldCtx, FieldElement};
pub use polyring::{generator_poly, minimal_poly, BinPoly};
pub use wdist::{
    a468, closed_form_code_wd, closed_form_dual_wd, enumerate_span_wd, enumerate_wd,
    enumerate_wd_seq, enumerate_wd_sharded, macwilliams, macwilliams_count, CaseTag,
    ClosedFormCase, WeightDistribution, A468, DEFAULT_GUARD,
};
