//! The guide in `book/` is written for mdbook, which cannot run listings that
//! depend on workspace crates. Each chapter is pulled in here as the docs of
//! an empty module so `cargo test --doc` runs its listings.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/link-functions.md")]
pub mod link_functions {}

#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}

#[doc = include_str!("../../../book/src/limits.md")]
pub mod limits {}

#[doc = include_str!("../../../book/src/simulation.md")]
pub mod simulation {}

#[doc = include_str!("../../../book/src/spectra.md")]
pub mod spectra {}

#[doc = include_str!("../../../book/src/freeness.md")]
pub mod freeness {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
