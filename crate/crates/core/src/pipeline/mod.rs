//! Built-in bundle list, input parsing, per-entry analysis and report output.

pub mod analysis;
pub mod parse;
pub mod report;
pub mod table;

pub use analysis::{
    analyze_all, analyze_entry, analyze_entry_with, AnalysisOptions, AnalysisReport, Certificate,
    ChernSummary, LocalFreeness, Route, RouteOutcome, Verdict,
};
pub use parse::{parse_entries, parse_entry, render_entry};
pub use report::{emit_report, ReportFormat};
pub use table::{builtin_entry, builtin_table, TableEntry};
