//! CSV ingestion, run configuration, report files and the end-to-end
//! pipeline behind the command-line tool.

pub mod config;
pub mod inputs;
pub mod pipeline;
pub mod prospects;
pub mod report;
mod table;

pub use config::{DataPaths, MetricsConfig, RunConfig, SelectionConfig};
pub use inputs::{load_economics, load_elicitations, load_history, write_simulation_summary};
pub use pipeline::{
    compare_front_files, optimize, report, select_from_front, simulate, OptimizeOutputs, SelectOptions, SelectOutputs,
};
pub use prospects::{load_appraisals, load_prospects, load_traps, ProspectList, RowRejection};
pub use report::{
    front_points, read_front, write_front, write_metric_table, write_representatives, write_tiers, write_trace,
    FrontRecord, RunManifest, ScopedChoice,
};

/// Decimal places in every numeric CSV cell.
pub const CSV_DECIMALS: usize = 6;

/// Fixed-precision rendering used by every CSV writer. Negative zero prints
/// as zero; infinities print as `inf` / `-inf`.
pub fn fixed(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{v:.prec$}", prec = CSV_DECIMALS);
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

#[cfg(test)]
mod tests {
    use super::fixed;

    #[test]
    fn fixed_format() {
        assert_eq!(fixed(1.0 / 3.0), "0.333333");
        assert_eq!(fixed(-0.0), "0.000000");
        assert_eq!(fixed(-1e-9), "0.000000");
        assert_eq!(fixed(-2.5), "-2.500000");
        assert_eq!(fixed(f64::INFINITY), "inf");
        assert_eq!("inf".parse::<f64>().unwrap(), f64::INFINITY);
    }
}
