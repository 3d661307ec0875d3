//! Hamilton double rays, circles and covers in Cayley graphs of infinite
//! groups, with finite-window verification.

pub mod error;
pub mod graphs;
pub mod group;
pub mod oracle;
pub mod rays;
pub mod rewrite;
pub mod constructions;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Element, Family, FamilySpec, GenSet, Group, GroupSpecFile, Label, SubgroupSpec};
