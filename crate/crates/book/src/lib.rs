//! Runs the guide's Rust listings as doctests.

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/counting.md")]
mod counting {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/channels.md")]
mod channels {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rank-selection.md")]
mod rank_selection {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/codes.md")]
mod codes {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/oracle.md")]
mod oracle {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
