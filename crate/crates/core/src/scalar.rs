//! Scalar abstraction for edge weights.
//!
//! Every algorithm in the crate is written against [`Weight`], so the same
//! code runs on `f32` and `f64` instances. Experiments and the instance file
//! format use `f64`; see the aliases at the crate root.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// A nonnegative real edge weight.
pub trait Weight:
    Float + FromPrimitive + ToPrimitive + Debug + Display + FromStr + Default + Send + Sync + 'static
{
    /// Lossy conversion used by the statistics layer.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Inverse of [`Weight::as_f64`]; rounds to the nearest representable value.
    fn from_f64_lossy(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).unwrap_or_else(Self::nan)
    }

    /// Valid weights are finite and nonnegative.
    fn is_valid_weight(self) -> bool {
        self.is_finite() && self >= Self::zero()
    }
}

impl<T> Weight for T where
    T: Float + FromPrimitive + ToPrimitive + Debug + Display + FromStr + Default + Send + Sync + 'static
{
}

/// The global comparator: heavier first, then lower edge index first.
///
/// Every scan that processes edges "in decreasing order of weight" uses this
/// ordering, so offline greedy, Simulate and the online algorithms agree on
/// how ties are broken.
pub fn heavier_first<W: Weight>(a: (W, usize), b: (W, usize)) -> Ordering {
    b.0.partial_cmp(&a.0)
        .unwrap_or(Ordering::Equal)
        .then(a.1.cmp(&b.1))
}

/// True when `a` strictly precedes `b` under [`heavier_first`].
pub fn beats<W: Weight>(a: (W, usize), b: (W, usize)) -> bool {
    heavier_first(a, b) == Ordering::Less
}

/// Indices `0..weights.len()` sorted by [`heavier_first`].
pub fn descending_order<W: Weight>(weights: &[W]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&i, &j| heavier_first((weights[i], i), (weights[j], j)));
    order
}

/// Sums weights in the given order. Callers pass indices in ascending order
/// so totals are reproducible bit for bit.
pub fn sum_weights<W: Weight>(weights: impl IntoIterator<Item = W>) -> W {
    weights.into_iter().fold(W::zero(), |acc, w| acc + w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_go_to_lower_index() {
        assert!(beats((2.0_f64, 3), (2.0, 5)));
        assert!(!beats((2.0_f64, 5), (2.0, 3)));
        assert!(beats((3.0_f64, 9), (2.0, 0)));
        assert!(!beats((1.0_f32, 0), (1.0, 0)));
    }

    #[test]
    fn descending_order_is_stable_on_ties() {
        let w = [1.0, 3.0, 3.0, 0.5, 2.0];
        assert_eq!(descending_order(&w), vec![1, 2, 4, 0, 3]);
    }

    #[test]
    fn weight_validity() {
        assert!(0.0_f64.is_valid_weight());
        assert!(!(-1.0_f64).is_valid_weight());
        assert!(!f64::INFINITY.is_valid_weight());
        assert!(!f32::NAN.is_valid_weight());
    }
}
