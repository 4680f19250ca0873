//! Finite posets, the simplex category and simplicial sets.
//!
//! The crate is organised bottom-up:
//!
//! * [`delta`]: finite ordinals `[n]`, monotone maps between them, generator
//!   normal forms and the classical pushout squares in Δ.
//! * [`poset`], [`iso`], [`corpus`]: finite posets, monotone maps, chains,
//!   linear extensions, order isomorphisms and small-poset enumeration.
//! * [`colimit`]: colimits of finite diagrams of posets, their reflection into
//!   Δ and into total orders, and bounded universal-property checking.
//! * [`simplicial`]: truncated simplicial sets, simplicial maps and the nerve.
//! * [`continuity`]: the finite limit checks that characterise nerves, and
//!   reconstruction of a poset from a simplicial set that passes them.
//! * [`kan`]: extending functors out of Δ to all finite posets by the
//!   comma-category colimit.
//! * [`text`]: the line-based file formats.

pub mod colimit;
pub mod continuity;
pub mod corpus;
pub mod delta;
pub mod iso;
pub mod kan;
pub mod poset;
pub mod simplicial;
pub mod text;

pub use colimit::{Cocone, PosetDiagram};
pub use delta::{DeltaMap, GeneratorWord, Ordinal};
pub use poset::{Chain, FinPoset, MonotoneMap};
pub use simplicial::{SimplicialMap, TruncatedSimplicialSet};
