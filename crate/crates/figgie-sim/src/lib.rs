//! Agent-based discrete-event simulator of the card game Figgie.
//!
//! Four trading agents exchange cards of four suits on a continuous
//! double-auction market. Each agent periodically wakes up (a
//! *consideration* event), inspects the market, and may submit a limit
//! order; orders arrive at the exchange after a configurable latency and
//! are matched with price-time priority. A game lasts a fixed number of
//! events, after which the hidden goal suit is revealed and the pot is
//! paid out.
//!
//! The crate is organised around the simulation pipeline:
//!
//! - [`kernel`] — the time-ordered event queue and agent timing model.
//! - [`exchange`] — per-suit limit order books, matching, lazy deletion.
//! - [`game`] — Figgie rules: decks, dealing, the event loop, settlement.
//! - [`strategies`] — the four built-in trading strategies.
//! - [`analytics`] — batch statistics: summaries, bootstrap confidence
//!   intervals, return series, autocorrelation.
//! - [`config`] / [`experiment`] — declarative multi-game experiments
//!   with deterministic seeding, result persistence, replay and reports.
//!
//! Everything is deterministic given a master seed: batches re-run to
//! byte-identical results and any single game can be replayed from the
//! seed recorded in its result row.

pub mod analytics;
pub mod config;
pub mod exchange;
pub mod experiment;
pub mod game;
pub mod kernel;
pub mod report;
pub mod rng;
pub mod strategies;
pub mod types;

pub use config::ExperimentConfig;
pub use experiment::{run_experiment, ResultsFile};
pub use game::{run_game, GameConfig, GameResult};
pub use types::{AgentId, OrderId, Side, Suit};
