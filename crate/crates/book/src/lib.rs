//! Compiles every Rust listing in `book/src` as a doc-test, so the guide
//! cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/partial-transpose.md")]
pub mod partial_transpose {}
#[doc = include_str!("../../../book/src/cost-bounds.md")]
pub mod cost_bounds {}
#[doc = include_str!("../../../book/src/preparation-map.md")]
pub mod preparation_map {}
#[doc = include_str!("../../../book/src/werner.md")]
pub mod werner {}
#[doc = include_str!("../../../book/src/gaussian.md")]
pub mod gaussian {}
#[doc = include_str!("../../../book/src/survey.md")]
pub mod survey {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
