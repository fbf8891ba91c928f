//! Interval Garside structures on finite complex reflection groups and the
//! braid groups they present.
//!
//! A [`GarsideStructure`] is built from a finite group, a generating set and
//! an apex `c`; its simples are the interval `[1,c]`. Elements of the Garside
//! group are kept in left normal form ([`Element`]). On top of that sit
//! conjugacy tools (swap orbits, minimal conjugators, recurrent sets) and
//! parabolic subgroups (closures, intersections, the curve graph).

pub mod bits;
pub mod cache;
pub mod catalog;
pub mod conjugacy;
pub mod cyclo;
pub mod datafile;
pub mod element;
pub mod error;
pub mod group;
pub mod interval;
pub mod parabolic;
pub mod structure;

pub use bits::Bits;
pub use cache::StructureCache;
pub use catalog::{CatalogEntry, StructureSpec};
pub use conjugacy::{ConjGraph, SwapStep, SwapTrace};
pub use element::{Element, FractionPair, Letter, Rescaled};
pub use error::{Error, Result};
pub use group::{Backend, Family, FiniteGroup, GroupElement, GroupSpec};
pub use interval::{length_and_interval, Interval};
pub use parabolic::{AtomSet, CheckMode, Exactness, ParabolicHandle, Rank2Closure, SampleParams};
pub use structure::GarsideStructure;
