//! Seeded Monte Carlo estimation, bound checks, probes and result files.

pub mod estimate;
pub mod probes;
pub mod registry;
pub mod results;
pub mod seeds;
pub mod suites;
pub mod trials;

pub use estimate::{BoundCheck, Comparison, Estimate, OptSource, Verdict, SLACK_SIGMAS};
pub use probes::{
    conjecture_probe, counterexample_experiment, degree_revenue_probe, naive_grouped_exact_expectation,
    secretary_success_frequency, ConjectureRow, ConjectureTable, CounterexampleResult, DegreeRevenueStats,
    NAIVE_EXACT_GROUP_BUDGET, PROBE_MIN_FREQUENCY,
};
pub use registry::{estimate_revenue, AlgorithmId, Params};
pub use results::{report_rows, save_results, save_trials, trials_path, write_results, ResultRow, TrialDump};
pub use seeds::{derive_seed, splitmix64, trial_rng, trial_seed};
pub use suites::{check_bounds, check_bounds_guarded, Suite, SuiteConfig, SuiteReport};
pub use trials::run_trials;
