//! Nested-intervals tree encoding with continued fractions.
//!
//! Tree nodes are labeled by products of the 2x2 integer matrices
//! `[[q, 1], [1, 0]]`, one per sibling index `q` along the node's path. The
//! product `[[a, b], [c, d]]` has determinant ±1 and doubles as the Möbius
//! transform `(a*x + b) / (c*x + d)`, whose image of `[1, inf)` is a
//! half-open interval with rational endpoints. Descendant intervals nest
//! inside ancestor intervals, so:
//!
//! * ancestors follow from arithmetic alone ([`encoding::parent`]);
//! * descendants are an interval range query ([`store::TreeStore::descendants`]);
//! * inserting never relabels an existing node;
//! * moving a subtree is matrix algebra ([`encoding::relative`], [`encoding::concat`]).
//!
//! ```
//! use mobius_tree::{path_to_matrix, matrix_to_interval, Path};
//!
//! let m = path_to_matrix(&"3.12.5.1.21".parse::<Path>().unwrap());
//! assert_eq!(m.to_string(), "4913,225,1594,73");
//! assert_eq!(matrix_to_interval(&m).to_string(), "(4913/1594, 5138/1667]");
//! ```

pub mod encoding;
pub mod exactmath;
pub mod store;

pub use encoding::{
    child, concat, convergents, depth, interval_contains, interval_to_matrix, is_ancestor,
    is_ancestor_by_interval, matrix_to_interval, matrix_to_path, next_sibling, parent,
    path_to_matrix, path_to_ratio, prev_sibling, ratio_to_matrix, ratio_to_path, relative,
    ClosedEnd, EncodingError, MobiusMatrix, NestedInterval, Path,
};
pub use exactmath::{euclid_quotients, ext_gcd, gcd, ratio_cmp, DomainError, Ratio};
pub use store::{NodeRecord, NodeRef, StoreError, StoreStats, TreeStore};
