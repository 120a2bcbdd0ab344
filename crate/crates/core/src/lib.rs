//! Unbalanced sums-over-paths over exact rings: construction, rewriting,
//! normalization and equivalence checking.

pub mod boolexpr;
pub mod error;
pub mod gen;
pub mod oracle;
pub mod pathsum;
pub mod rexpr;
pub mod rings;
pub mod selftest;
pub mod theories;

pub use boolexpr::{BoolExpr, Monomial, Var};
pub use error::{Error, Result};
pub use oracle::{dense_matrix, dense_vector, matrices_equal, DenseMatrix};
pub use pathsum::{compose, tensor, to_state, Context, PathSum};
pub use rexpr::{normalize_rexpr, NormalTable, RExpr, Theory};
pub use rings::{RingElem, RingSpec};
pub use theories::{
    apply_rule, equivalent, normalize_field, normalize_ring, reduce_rewrite_first, Config, NormalForm, RuleId,
    Strategy, Verdict,
};
