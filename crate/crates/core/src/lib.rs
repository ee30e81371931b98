//! Induced `K_{s,t}`-saturated families in the Boolean lattice.
//!
//! * [`sets`]: subsets of `[n]` as bit words and canonically ordered families.
//! * [`poset`]: finite posets, `K_{s,t}`, legs, and generic induced-copy search.
//! * [`chains`]: internally disjoint complete chains and lanterns.
//! * [`construction`]: the linear-size saturated family and its size accounting.
//! * [`verifier`]: saturation checking, explicit witnesses, trace bounds and the
//!   legs certificate.
//! * [`oracle`]: exact `sat*(n, P)` for `n <= 5`.

pub mod chains;
pub mod construction;
pub mod error;
pub mod export;
pub mod oracle;
pub mod poset;
pub mod sets;
pub mod verifier;

pub use error::{Error, Result};
pub use poset::{Embedding, Poset};
pub use sets::{Family, GroundSet, Relation, SetWord};
