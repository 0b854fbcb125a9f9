//! Compiles and runs the listings in the guide under `book/src` as doc-tests.

#[doc = include_str!("../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../book/src/discretization.md")]
pub mod discretization {}

#[doc = include_str!("../../book/src/solver.md")]
pub mod solver {}

#[doc = include_str!("../../book/src/pipeline.md")]
pub mod pipeline {}

#[doc = include_str!("../../book/src/seam.md")]
pub mod seam {}

#[doc = include_str!("../../book/src/reproducibility.md")]
pub mod reproducibility {}

#[doc = include_str!("../../book/src/datasets.md")]
pub mod datasets {}

#[doc = include_str!("../../book/src/cli.md")]
pub mod cli {}
