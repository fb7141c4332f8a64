//! Information-theoretic comparison of two labelings of the same objects.
//!
//! Besides the standard entropy-based measures this crate computes the
//! reduced mutual information, which subtracts the information needed to
//! transmit the contingency table, and the machinery for counting
//! contingency tables with fixed margins that it relies on.

pub mod classic;
pub mod corrected;
pub mod error;
pub mod numeric;
pub mod omega;
pub mod partitions;
pub mod report;

pub use classic::EncodingLengths;
pub use corrected::{AdjustedMi, RmiResult};
pub use error::{Error, Result};
pub use omega::{LogCount, Margins, OmegaMethod, OmegaOptions};
pub use partitions::{ContingencyTable, Labeling};
pub use report::{Base, MeasureName, MeasureReport, ReportOptions};
