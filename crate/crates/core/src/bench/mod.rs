//! Scenario suites, metrics and the experiment drivers built on them.

pub mod compare;
pub mod metrics;
pub mod perching;
pub mod scenarios;
pub mod sweep;

pub use compare::{
    compare_aorrt, compare_ospa, run_comparison, ComparisonReport, ComparisonRow, ComparisonSpec,
    WaypointCloud,
};
pub use metrics::{
    accuracy, occurrence_rates, precision_rate, published_occurrence_rates, reduce_maneuver_set,
    write_records_csv, HostInfo, MeanSem, OccurrenceRate, RunRecord,
};
pub use perching::{ends_with_pitch_up, run_perching, PerchingConfig};
pub use scenarios::{
    generate_grid_scenarios, generate_random_scenarios, grid_shape, load_scenarios, Rectangle,
    Scenario, ScenarioSpeeds,
};
pub use sweep::{run_ospa, run_sweep, SweepReport, SweepRow, SweepSpec, SweepValues};
