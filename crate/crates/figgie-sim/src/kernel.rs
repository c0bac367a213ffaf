//! Discrete-event kernel: simulation clock, time-ordered event queue and
//! the agent timing model (consideration rates and market latency).
//!
//! Events carry an arbitrary payload and are dequeued in `(time, seq)`
//! order, where `seq` is an insertion counter. The counter makes the
//! order total: simultaneous events come out first-in first-out, so a
//! run is reproducible regardless of how the underlying heap breaks ties.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point on the simulation clock, in abstract time units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct SimTime(pub f64);

impl SimTime {
    pub const ZERO: SimTime = SimTime(0.0);

    /// Panics on NaN or negative input: times enter the kernel only from
    /// nonnegative delays added to the current clock.
    pub fn new(t: f64) -> SimTime {
        assert!(t.is_finite() && t >= 0.0, "invalid simulation time {t}");
        SimTime(t)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn after(self, delay: f64) -> SimTime {
        SimTime::new(self.0 + delay)
    }
}

/// A scheduled occurrence with its dequeue key.
#[derive(Debug, Clone)]
pub struct Event<K> {
    pub time: SimTime,
    /// Insertion counter, unique per queue; breaks ties at equal times.
    pub seq: u64,
    pub kind: K,
}

impl<K> Event<K> {
    fn key(&self) -> (f64, u64) {
        (self.time.0, self.seq)
    }
}

impl<K> PartialEq for Event<K> {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl<K> Eq for Event<K> {}

impl<K> PartialOrd for Event<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> Ord for Event<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Times are finite by construction, so total_cmp agrees with the
        // numeric order; seq is unique and settles exact ties.
        self.time
            .0
            .total_cmp(&other.time.0)
            .then_with(|| self.seq.cmp(&other.seq))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ScheduleError {
    #[error("event time {event:?} is before the current clock {clock:?}")]
    TimeInPast { event: f64, clock: f64 },
}

/// Min-heap of events keyed by `(time, seq)`.
///
/// `peek` is constant-time, `schedule` and `pop` logarithmic. Popping
/// advances the clock; scheduling before the clock is rejected, since a
/// handler can only ever produce follow-up work in its own future.
#[derive(Debug, Clone)]
pub struct EventQueue<K> {
    heap: BinaryHeap<std::cmp::Reverse<Event<K>>>,
    clock: SimTime,
    next_seq: u64,
}

impl<K> Default for EventQueue<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K> EventQueue<K> {
    pub fn new() -> Self {
        EventQueue {
            heap: BinaryHeap::new(),
            clock: SimTime::ZERO,
            next_seq: 0,
        }
    }

    pub fn clock(&self) -> SimTime {
        self.clock
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Enqueue `kind` at `time`, assigning the next insertion counter.
    pub fn schedule(&mut self, time: SimTime, kind: K) -> Result<(), ScheduleError> {
        if time.0 < self.clock.0 {
            return Err(ScheduleError::TimeInPast {
                event: time.0,
                clock: self.clock.0,
            });
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.heap.push(std::cmp::Reverse(Event { time, seq, kind }));
        Ok(())
    }

    /// Remove and return the earliest event, advancing the clock to it.
    pub fn pop(&mut self) -> Option<Event<K>> {
        let ev = self.heap.pop()?.0;
        self.clock = ev.time;
        Some(ev)
    }

    /// Iterate over pending events in no particular order (diagnostics).
    pub fn iter(&self) -> impl Iterator<Item = &Event<K>> {
        self.heap.iter().map(|r| &r.0)
    }
}

/// How often an agent acts and how far it sits from the market.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentTiming {
    /// Mean number of considerations per time unit; must be positive.
    pub consideration_rate: f64,
    /// One-way delay between the agent and the market; nonnegative.
    pub latency: f64,
}

impl Default for AgentTiming {
    fn default() -> Self {
        AgentTiming {
            consideration_rate: 1.0,
            latency: 0.0,
        }
    }
}

/// Exponentially distributed wait until an agent's next consideration,
/// with mean `1 / rate`.
pub fn consideration_delay<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> f64 {
    debug_assert!(rate > 0.0);
    Exp::new(rate).expect("positive consideration rate").sample(rng)
}

/// When an order decided now reaches the book.
///
/// The agent sees the market as of its consideration instant and its
/// order lands a full round trip later, so the arrival is shifted by
/// twice the one-way latency. Played forward this is equivalent to the
/// agent deciding on data one latency old and the order arriving one
/// latency after the decision.
pub fn order_arrival_time(now: SimTime, timing: &AgentTiming) -> SimTime {
    now.after(2.0 * timing.latency)
}

/// Schedule the agent's next wake-up after finishing work at `now`.
pub fn next_consideration_time<R: Rng + ?Sized>(
    now: SimTime,
    timing: &AgentTiming,
    rng: &mut R,
) -> SimTime {
    now.after(consideration_delay(timing.consideration_rate, rng))
}
