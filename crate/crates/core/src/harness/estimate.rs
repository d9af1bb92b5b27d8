use std::fmt;

use serde::Serialize;

/// Monte Carlo summary of a per-trial quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over √trials; 0 for a single trial.
    pub std_error: f64,
    pub trials: usize,
    pub min: f64,
    pub max: f64,
}

impl Estimate {
    /// Summarises `samples`, which must be nonempty.
    pub fn from_samples(samples: &[f64]) -> Self {
        assert!(!samples.is_empty(), "an estimate needs at least one trial");
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let std_error = if samples.len() > 1 {
            let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        Self {
            // summation rounding can push the mean a hair outside the range
            mean: mean.clamp(min, max),
            std_error,
            trials: samples.len(),
            min,
            max,
        }
    }

    /// Estimate of `E[a] / E[b]` with a delta-method standard error, from
    /// paired samples. `None` when `E[b]` is 0.
    pub fn ratio(a: &[f64], b: &[f64]) -> Option<Self> {
        assert_eq!(a.len(), b.len());
        let n = a.len() as f64;
        let (ea, eb) = (Self::from_samples(a), Self::from_samples(b));
        if eb.mean == 0.0 {
            return None;
        }
        let r = ea.mean / eb.mean;
        let std_error = if a.len() > 1 {
            let cov = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - ea.mean) * (y - eb.mean))
                .sum::<f64>()
                / (n - 1.0);
            let (va, vb) = (ea.std_error.powi(2) * n, eb.std_error.powi(2) * n);
            ((va + r * r * vb - 2.0 * r * cov) / (eb.mean * eb.mean * n)).max(0.0).sqrt()
        } else {
            0.0
        };
        Some(Self {
            mean: r,
            std_error,
            trials: a.len(),
            min: r,
            max: r,
        })
    }
}

/// A deterministic quantity recorded as an estimate with zero error.
impl From<f64> for Estimate {
    fn from(x: f64) -> Self {
        Self {
            mean: x,
            std_error: 0.0,
            trials: 1,
            min: x,
            max: x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational row; no judgement is made.
    Reported,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Reported => "reported",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How an estimate is compared with its reference value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// mean ≥ reference − slack·SE
    AtLeast,
    /// mean ≤ reference + slack·SE
    AtMost,
    /// |mean − reference| ≤ slack·SE
    Within,
    Report,
}

/// Where the benchmark value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OptSource {
    Exact,
    /// Greedy weight times its approximation factor, used when the exact
    /// oracle is over budget. Rows with this source do not affect exit codes.
    GreedyScaled,
    /// The row does not depend on an optimum.
    None,
}

impl OptSource {
    pub fn as_str(self) -> &'static str {
        match self {
            OptSource::Exact => "exact",
            OptSource::GreedyScaled => "greedy_scaled",
            OptSource::None => "none",
        }
    }
}

/// Default slack, in standard errors, for statistical checks.
pub const SLACK_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub bound_name: String,
    pub algorithm: String,
    /// The reference value: a lower bound for [`Comparison::AtLeast`], an
    /// upper bound for [`Comparison::AtMost`], a target for
    /// [`Comparison::Within`].
    pub theoretical_lower: f64,
    pub comparison: Comparison,
    pub estimate: Estimate,
    pub slack_sigmas: f64,
    pub verdict: Verdict,
    pub opt_source: OptSource,
}

impl BoundCheck {
    pub fn new(
        bound_name: impl Into<String>,
        algorithm: impl Into<String>,
        reference: f64,
        comparison: Comparison,
        estimate: Estimate,
        slack_sigmas: f64,
        opt_source: OptSource,
    ) -> Self {
        let slack = slack_sigmas * estimate.std_error;
        let verdict = match comparison {
            Comparison::AtLeast => pass_if(estimate.mean >= reference - slack),
            Comparison::AtMost => pass_if(estimate.mean <= reference + slack),
            Comparison::Within => pass_if((estimate.mean - reference).abs() <= slack),
            Comparison::Report => Verdict::Reported,
        };
        Self {
            bound_name: bound_name.into(),
            algorithm: algorithm.into(),
            theoretical_lower: reference,
            comparison,
            estimate,
            slack_sigmas,
            verdict,
            opt_source,
        }
    }

    /// `mean ≥ lower − 3·SE`.
    pub fn at_least(name: &str, algorithm: &str, lower: f64, estimate: Estimate, opt_source: OptSource) -> Self {
        Self::new(name, algorithm, lower, Comparison::AtLeast, estimate, SLACK_SIGMAS, opt_source)
    }

    /// A zero-tolerance invariant: the per-trial indicator must be 1 on
    /// every trial.
    pub fn always(name: &str, algorithm: &str, indicator: Estimate) -> Self {
        Self::new(name, algorithm, 1.0, Comparison::AtLeast, indicator, 0.0, OptSource::None)
    }

    pub fn report(name: &str, algorithm: &str, estimate: Estimate) -> Self {
        Self::new(name, algorithm, f64::NAN, Comparison::Report, estimate, 0.0, OptSource::None)
    }

    /// True if the row should count towards a failing exit status.
    pub fn counts_as_failure(&self) -> bool {
        self.verdict == Verdict::Fail && self.opt_source != OptSource::GreedyScaled
    }
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_statistics() {
        let e = Estimate::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.mean, 2.5);
        // sample variance 5/3
        assert!((e.std_error - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!((e.min, e.max, e.trials), (1.0, 4.0, 4));
    }

    #[test]
    fn single_trial_has_zero_error() {
        let e = Estimate::from_samples(&[7.5]);
        assert_eq!((e.mean, e.std_error, e.min, e.max), (7.5, 0.0, 7.5, 7.5));
    }

    #[test]
    fn verdict_rule() {
        let e = Estimate {
            mean: 0.9,
            std_error: 0.05,
            trials: 100,
            min: 0.0,
            max: 2.0,
        };
        assert_eq!(BoundCheck::at_least("b", "a", 1.0, e, OptSource::Exact).verdict, Verdict::Pass);
        assert_eq!(BoundCheck::at_least("b", "a", 1.06, e, OptSource::Exact).verdict, Verdict::Fail);
        let flagged = BoundCheck::at_least("b", "a", 2.0, e, OptSource::GreedyScaled);
        assert_eq!(flagged.verdict, Verdict::Fail);
        assert!(!flagged.counts_as_failure());
        let within = BoundCheck::new("b", "a", 1.0, Comparison::Within, e, 3.0, OptSource::None);
        assert_eq!(within.verdict, Verdict::Pass);
    }

    #[test]
    fn ratio_of_constants() {
        let r = Estimate::ratio(&[2.0, 2.0], &[4.0, 4.0]).unwrap();
        assert_eq!(r.mean, 0.5);
        assert_eq!(r.std_error, 0.0);
        assert!(Estimate::ratio(&[1.0], &[0.0]).is_none());
    }
}
