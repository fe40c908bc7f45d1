//! The guide in `book/` is kept honest by compiling every one of its code
//! blocks as a doctest: `cargo test --doc` runs them all. One module per
//! chapter so a failure names its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/quivers.md")]
mod quivers {}

#[doc = include_str!("../../../book/src/modules.md")]
mod modules {}

#[doc = include_str!("../../../book/src/complexes.md")]
mod complexes {}

#[doc = include_str!("../../../book/src/torsion-pairs.md")]
mod torsion_pairs {}

#[doc = include_str!("../../../book/src/tilting.md")]
mod tilting {}

#[doc = include_str!("../../../book/src/file-format.md")]
mod file_format {}
