//! Online algorithms over a random-order arrival stream.

pub mod bvm;
pub mod graphic;
pub mod grouped;
pub mod hvm;
pub mod sampling;
pub mod secretary;
pub mod stream;
pub mod units;

pub use bvm::{
    bvm_sample_and_price, bvm_sample_and_price_with_sample, bvm_simulate, bvm_simulate_with_coins, Coin, PriceTable,
    PricedOutcome, SimulateResult,
};
pub use graphic::{graphic_matroid_secretary, graphic_matroid_secretary_oriented, GraphicOutcome};
pub use grouped::{
    grouped_threshold_match, grouped_threshold_match_with_exponent, max_threshold_exponent,
    naive_grouped_sample_and_price, naive_grouped_sample_and_price_with_sample, sample_with_groups,
    sample_with_groups_with_coins, threshold_sample_size, NaiveGroupedOutcome, ThresholdOutcome,
};
pub use hvm::{
    hvm_sample_and_price, hvm_sample_and_price_with_sample, hvm_sample_probability, hvm_simulate,
    hvm_simulate_with_coins,
};
pub use sampling::{binomial_inverse_cdf, ceil_log2};
pub use secretary::{classical_cutoff, run_classical_secretary, run_grouped_secretary, SecretaryOutcome};
pub use stream::{Action, Arrival, ArrivalStream, Decision, DecisionLog, OnlineStream, Unit};
pub use units::{
    bundle_arrivals, edge_arrivals, elements, group_arrivals, vertex_arrivals, BundleArrival, EdgeArrival, Element,
    ElementGroup, GroupArrival, GroupEdge, IncidentBundle, IncidentEdge, VertexArrival,
};
