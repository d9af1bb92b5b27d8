//! Classical and grouped secretary rules.

use std::f64::consts::E;

use crate::online::stream::{Action, DecisionLog, OnlineStream};
use crate::online::units::{Element, ElementGroup};
use crate::scalar::{beats, Weight};

/// ⌊n/e⌋, the number of arrivals the classical rule only observes.
pub fn classical_cutoff(n: usize) -> usize {
    (n as f64 / E).floor() as usize
}

/// One observe-then-beat secretary: remembers the best observed candidate
/// and accepts the first later candidate beating it.
#[derive(Debug, Clone)]
pub(crate) struct ThresholdSecretary<W> {
    best_observed: Option<(W, usize)>,
    accepted: bool,
}

impl<W: Weight> ThresholdSecretary<W> {
    pub fn new() -> Self {
        Self {
            best_observed: None,
            accepted: false,
        }
    }

    pub fn observe(&mut self, candidate: (W, usize)) {
        if self.best_observed.is_none_or(|best| beats(candidate, best)) {
            self.best_observed = Some(candidate);
        }
    }

    /// True if `candidate` is accepted. At most one acceptance per rule.
    pub fn consider(&mut self, candidate: (W, usize)) -> bool {
        if self.accepted {
            return false;
        }
        if self.best_observed.is_none_or(|best| beats(candidate, best)) {
            self.accepted = true;
        }
        self.accepted
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecretaryOutcome<W> {
    pub selected: Option<Element<W>>,
    pub log: DecisionLog,
}

/// Observes the first ⌊n/e⌋ elements, then accepts the first element that
/// beats everything observed. Ties between equal weights go to the lower id.
pub fn run_classical_secretary<W, S>(mut stream: S) -> SecretaryOutcome<W>
where
    W: Weight,
    S: OnlineStream<Unit = Element<W>>,
{
    let cutoff = classical_cutoff(stream.len());
    let mut rule = ThresholdSecretary::new();
    let mut selected = None;
    while let Some(arrival) = stream.next_arrival() {
        let el = arrival.unit;
        let key = (el.weight, el.id);
        if arrival.index < cutoff {
            rule.observe(key);
            stream.decide(Action::Reject);
        } else if rule.consider(key) {
            selected = Some(el);
            stream.decide(Action::Accept(vec![el.id]));
        } else {
            stream.decide(Action::Reject);
        }
    }
    SecretaryOutcome {
        selected,
        log: stream.finish(),
    }
}

fn best_element<W: Weight>(group: &ElementGroup<W>) -> Option<Element<W>> {
    group
        .elements
        .iter()
        .copied()
        .reduce(|a, b| if beats((b.weight, b.id), (a.weight, a.id)) { b } else { a })
}

/// Keeps only the best element of each group and runs the classical rule
/// over the `g` groups.
pub fn run_grouped_secretary<W, S>(mut stream: S) -> SecretaryOutcome<W>
where
    W: Weight,
    S: OnlineStream<Unit = ElementGroup<W>>,
{
    let cutoff = classical_cutoff(stream.len());
    let mut rule = ThresholdSecretary::new();
    let mut selected = None;
    while let Some(arrival) = stream.next_arrival() {
        let Some(best) = best_element(&arrival.unit) else {
            stream.decide(Action::Reject);
            continue;
        };
        let key = (best.weight, best.id);
        if arrival.index < cutoff {
            rule.observe(key);
            stream.decide(Action::Reject);
        } else if rule.consider(key) {
            selected = Some(best);
            stream.decide(Action::Accept(vec![best.id]));
        } else {
            stream.decide(Action::Reject);
        }
    }
    SecretaryOutcome {
        selected,
        log: stream.finish(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::online::stream::ArrivalStream;
    use crate::online::units::elements;

    #[test]
    fn cutoffs() {
        assert_eq!(classical_cutoff(1), 0);
        assert_eq!(classical_cutoff(2), 0);
        assert_eq!(classical_cutoff(3), 1);
        assert_eq!(classical_cutoff(8), 2);
        assert_eq!(classical_cutoff(100), 36);
    }

    #[test]
    fn single_element_is_taken() {
        let out = run_classical_secretary(ArrivalStream::seeded(elements(&[3.5]), 0));
        assert_eq!(out.selected, Some(Element { id: 0, weight: 3.5 }));
        assert_eq!(out.log.accepted(), vec![0]);
    }

    #[test]
    fn trace_with_cutoff_one() {
        // weights in arrival order 2, 1, 3: observe 2, skip 1, take 3
        let out = run_classical_secretary(ArrivalStream::in_order(elements(&[2.0, 1.0, 3.0])));
        assert_eq!(out.selected.map(|e| e.id), Some(2));
        // 3, 1, 2: observe 3, nothing beats it
        let out = run_classical_secretary(ArrivalStream::in_order(elements(&[3.0, 1.0, 2.0])));
        assert_eq!(out.selected, None);
        out.log.validate(3).unwrap();
        assert!(out.log.accepted().is_empty());
    }

    #[test]
    fn single_group_takes_its_max() {
        let group = ElementGroup {
            group: 0,
            elements: elements(&[1.0, 5.0, 2.0]),
        };
        let out = run_grouped_secretary(ArrivalStream::in_order(vec![group]));
        assert_eq!(out.selected.map(|e| e.id), Some(1));
    }
}
