//! Maximum-likelihood fitting, information-criterion selection, slope
//! analysis and threshold robustness scans.

mod fit;
pub mod init;
pub mod optimize;
mod select;
mod slope;
mod threshold;

pub use fit::{fit, fit_all, fit_with_fixed_break, Exclusion, FitOptions, FitOutcome, FitResult};
pub use select::{information_criteria, select, select_from_fits, Criterion, RankEntry, SelectionReport};
pub use slope::{slope, slope_analysis, SlopeSummary};
pub use threshold::{modal_family, threshold_scan, ThresholdResult};
