//! Finite combinatorics around amalgamation and Ramsey properties of
//! categories: generic bounded checks over enumerable categories, plus
//! concrete backends for monoids, almost linear orders and lexicographic
//! trees, and builders for finite prefixes of Fraïssé-type sequences.

pub mod category;
pub mod fraisse;
pub mod gen;
pub mod monoids;
pub mod orders;
pub mod trees;
pub mod verdict;

pub use category::EnumerableCategory;
pub use verdict::{BudgetReport, SearchBudget, Verdict};
