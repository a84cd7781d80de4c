//! Optimal error-detecting codes for asymmetric channels.
//!
//! A channel whose action induces a partial order on its inputs (symbols
//! only drop, packets only get lost, dimensions only shrink, ones only move
//! right) is modelled here as a graded poset. A code detects up to `t`
//! errors iff no two distinct codewords are comparable with rank gap `<= t`,
//! and for normal posets the optimum is a union of level sets whose ranks
//! are more than `t` apart.
//!
//! ```
//! use asymcode::{codes, Channel, GradedChannel, Radius};
//!
//! let ch = Channel::subset(4)?;
//! let report = codes::optimal_code_size(&ch, ch.rank_range(), Radius::Errors(1))?;
//! assert_eq!(report.generic_total.to_string(), "8");
//! assert_eq!(report.ranks, vec![0, 2, 4]);
//! # Ok::<(), asymcode::Error>(())
//! ```

pub mod channels;
pub mod codes;
pub mod count;
mod error;
pub mod oracle;
pub mod poset;

pub use channels::{Channel, Element, Family};
pub use codes::{Code, Radius, SizeReport, VerifyReport};
pub use count::BigCount;
pub use error::{Error, Result};
pub use poset::{GradedChannel, RankRange, RankSelection};
