//! Random-order arrival streams with irrevocable, logged decisions.
//!
//! An [`OnlineStream`] hands out one unit at a time. Before the next unit
//! can be revealed the current one must be decided exactly once, and every
//! decision is recorded in a [`DecisionLog`]. There is no accessor for
//! units that have not arrived yet.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Something that arrives online and has a stable id.
pub trait Unit {
    fn unit_id(&self) -> usize;
}

/// A revealed unit together with its position in the arrival order.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrival<U> {
    pub index: usize,
    pub unit: U,
}

/// What the algorithm did with a unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    /// Accept the listed edges (or elements).
    Accept(Vec<usize>),
    Reject,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decision {
    pub arrival_index: usize,
    pub unit_id: usize,
    pub action: Action,
}

/// Ordered record of every decision a run made.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DecisionLog {
    entries: Vec<Decision>,
}

impl DecisionLog {
    pub fn entries(&self) -> &[Decision] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn push(&mut self, decision: Decision) {
        self.entries.push(decision);
    }

    /// Every accepted edge id, in decision order.
    pub fn accepted(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter_map(|d| match &d.action {
                Action::Accept(ids) => Some(ids.iter().copied()),
                Action::Reject => None,
            })
            .flatten()
            .collect()
    }

    /// Checks that the log decides `unit_count` distinct units, one per
    /// arrival index `0..unit_count`, in order.
    pub fn validate(&self, unit_count: usize) -> Result<(), String> {
        if self.entries.len() != unit_count {
            return Err(format!("{} decisions for {unit_count} units", self.entries.len()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for (i, d) in self.entries.iter().enumerate() {
            if d.arrival_index != i {
                return Err(format!("decision {i} made at arrival index {}", d.arrival_index));
            }
            if !seen.insert(d.unit_id) {
                return Err(format!("unit {} decided twice", d.unit_id));
            }
        }
        Ok(())
    }
}

/// The interface every online algorithm consumes.
pub trait OnlineStream {
    type Unit: Unit;

    /// Number of units that will arrive; known in advance.
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Reveals the next unit, or `None` once all have arrived.
    ///
    /// Panics if the previously revealed unit has not been decided.
    fn next_arrival(&mut self) -> Option<Arrival<Self::Unit>>;

    /// Irrevocably decides the most recently revealed unit.
    ///
    /// Panics if there is no undecided unit.
    fn decide(&mut self, action: Action);

    /// Ends the run. Panics unless every unit arrived and was decided.
    fn finish(self) -> DecisionLog;
}

/// The standard in-memory stream.
#[derive(Debug, Clone)]
pub struct ArrivalStream<U> {
    pending: VecDeque<U>,
    total: usize,
    cursor: usize,
    open: Option<usize>,
    log: DecisionLog,
}

impl<U: Unit> ArrivalStream<U> {
    /// Units arrive in exactly the given order.
    pub fn in_order(units: Vec<U>) -> Self {
        Self {
            total: units.len(),
            pending: units.into(),
            cursor: 0,
            open: None,
            log: DecisionLog::default(),
        }
    }

    /// Units arrive in a uniformly random order drawn from `rng`.
    pub fn shuffled<R: Rng + ?Sized>(mut units: Vec<U>, rng: &mut R) -> Self {
        units.shuffle(rng);
        Self::in_order(units)
    }

    /// Uniformly random order as a function of `seed` alone.
    pub fn seeded(units: Vec<U>, seed: u64) -> Self {
        Self::shuffled(units, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Units already revealed.
    pub fn cursor(&self) -> usize {
        self.cursor
    }
}

impl<U: Unit> OnlineStream for ArrivalStream<U> {
    type Unit = U;

    fn len(&self) -> usize {
        self.total
    }

    fn next_arrival(&mut self) -> Option<Arrival<U>> {
        assert!(
            self.open.is_none(),
            "unit at arrival {} must be decided before the next arrival",
            self.cursor - 1
        );
        let unit = self.pending.pop_front()?;
        let index = self.cursor;
        self.cursor += 1;
        self.open = Some(unit.unit_id());
        Some(Arrival { index, unit })
    }

    fn decide(&mut self, action: Action) {
        let unit_id = self.open.take().expect("no undecided unit to decide");
        self.log.push(Decision {
            arrival_index: self.cursor - 1,
            unit_id,
            action,
        });
    }

    fn finish(self) -> DecisionLog {
        assert!(self.open.is_none(), "last unit left undecided");
        assert!(
            self.pending.is_empty(),
            "{} units never arrived",
            self.pending.len()
        );
        self.log
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    struct Id(usize);

    impl Unit for Id {
        fn unit_id(&self) -> usize {
            self.0
        }
    }

    #[test]
    fn logs_each_decision_at_its_arrival() {
        let mut s = ArrivalStream::in_order(vec![Id(4), Id(2), Id(9)]);
        assert_eq!(s.len(), 3);
        while let Some(a) = s.next_arrival() {
            if a.unit.0 == 2 {
                s.decide(Action::Accept(vec![7]));
            } else {
                s.decide(Action::Reject);
            }
        }
        let log = s.finish();
        log.validate(3).unwrap();
        assert_eq!(log.accepted(), vec![7]);
        assert_eq!(log.entries()[1].unit_id, 2);
        assert_eq!(log.entries()[1].arrival_index, 1);
    }

    #[test]
    #[should_panic(expected = "must be decided")]
    fn cannot_skip_a_decision() {
        let mut s = ArrivalStream::in_order(vec![Id(0), Id(1)]);
        s.next_arrival();
        s.next_arrival();
    }

    #[test]
    #[should_panic(expected = "no undecided unit")]
    fn cannot_decide_twice() {
        let mut s = ArrivalStream::in_order(vec![Id(0), Id(1)]);
        s.next_arrival();
        s.decide(Action::Reject);
        s.decide(Action::Reject);
    }

    #[test]
    #[should_panic(expected = "never arrived")]
    fn must_drain() {
        let mut s = ArrivalStream::in_order(vec![Id(0), Id(1)]);
        s.next_arrival();
        s.decide(Action::Reject);
        s.finish();
    }

    #[test]
    fn seeded_order_is_a_permutation() {
        let ids: Vec<Id> = (0..50).map(Id).collect();
        let mut a = ArrivalStream::seeded(ids.clone(), 11);
        let mut b = ArrivalStream::seeded(ids, 11);
        let mut seen = Vec::new();
        while let (Some(x), Some(y)) = (a.next_arrival(), b.next_arrival()) {
            assert_eq!(x, y);
            seen.push(x.unit.0);
            a.decide(Action::Reject);
            b.decide(Action::Reject);
        }
        seen.sort_unstable();
        assert_eq!(seen, (0..50).collect::<Vec<_>>());
    }

    #[test]
    fn validate_catches_bad_logs() {
        let mut log = DecisionLog::default();
        log.push(Decision { arrival_index: 0, unit_id: 1, action: Action::Reject });
        log.push(Decision { arrival_index: 2, unit_id: 2, action: Action::Reject });
        assert!(log.validate(2).is_err());
        assert!(log.validate(3).is_err());
    }
}
