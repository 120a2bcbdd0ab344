//! Equational theories as executable rewrite rules, the two normalization
//! procedures and the equivalence check built on them.

mod equiv;
mod factors;
mod normalize;
mod rules;
mod strategy;

pub use equiv::{equivalent, normal_form, Config, Equivalence, Verdict};
pub use factors::AmplitudeView;
pub use normalize::{
    eliminate_last_by_rules, normalize_field, normalize_field_traced, normalize_ring, normalize_ring_traced,
    NormalForm,
};
pub use rules::{apply_rule, find_site, rule_available, RewriteStep, RuleId, Site};
pub use strategy::{canonical_balanced_form, reduce_rewrite_first, BalancedForm, Strategy};
