//! Knapp–Stein R-groups for the p-adic similitude groups `GSp(2n)`, `GO(2n)`,
//! `GO(2n+1)` and `GU(n)`, computed from an abstract inducing datum.
//!
//! The R-group of an induced representation `Ind_P^G σ` is determined here in
//! two independent ways: a closed-form generator description
//! ([`rgroup::closed_form_r`]) and a literal filter of the block Weyl group
//! ([`rgroup::brute_force_r`]). On top of the R-group the crate decides
//! whether the induced representation has elliptic constituents
//! ([`elliptic`]), tabulates the signs `ε(κ)` of its constituents
//! ([`components`]) and cross-checks everything against the brute-force
//! route ([`oracle`]).

pub mod cli;
pub mod components;
pub mod datum;
pub mod elliptic;
pub mod error;
pub mod gf2;
pub mod oracle;
pub mod report;
pub mod rgroup;
pub mod weyl;

pub use datum::{
    bundled, parse_instance, serialize_instance, Character, CharGroup, CharSubgroup, GroupFamily,
    InducingDatum, InstanceDoc,
};
pub use error::{Error, Result};
pub use weyl::{BlockSet, ReducedRoot, SignedBlockPermutation};
