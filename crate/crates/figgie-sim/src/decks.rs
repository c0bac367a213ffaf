//! The twelve possible Figgie deck compositions.
//!
//! A deck always holds 40 cards: one suit has 12 (the *common* suit), its
//! same-color partner is the *goal* suit with 8 or 10, and the remaining
//! counts fill the multiset `{12, 10, 10, 8}`. Only goal-suit cards pay:
//! 10 per card at settlement, plus a majority bonus of 120 (8-card goal)
//! or 100 (10-card goal) to whoever holds strictly the most of them, so
//! the pot of 200 is always paid out in full.

use crate::types::{Suit, NUM_SUITS};

/// Per-player starting stack.
pub const STARTING_CASH: f64 = 350.0;
/// Contribution each player makes to the pot.
pub const ANTE: f64 = 50.0;
/// Total pot, four antes.
pub const POT: f64 = 200.0;
/// Settlement value of a single goal-suit card.
pub const CARD_PAYOUT: f64 = 10.0;
/// Number of distinct deck compositions.
pub const NUM_DECKS: usize = 12;

/// One of the twelve deck compositions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeckSpec {
    pub index: usize,
    /// Cards per suit, indexed by `Suit`.
    pub counts: [u32; NUM_SUITS],
    /// The 12-card suit.
    pub common: Suit,
    /// The same-color partner of the common suit; the only suit that pays.
    pub goal: Suit,
    /// Goal-suit cards that guarantee the majority bonus.
    pub majority_threshold: u32,
    /// The majority bonus: pot minus the per-card payouts.
    pub majority_payout: f64,
}

impl DeckSpec {
    pub fn goal_count(&self) -> u32 {
        self.counts[self.goal.index()]
    }
}

const fn deck(
    index: usize,
    counts: [u32; 4],
    common: Suit,
    goal: Suit,
    majority_threshold: u32,
    majority_payout: f64,
) -> DeckSpec {
    DeckSpec {
        index,
        counts,
        common,
        goal,
        majority_threshold,
        majority_payout,
    }
}

/// All decks, ordered by common suit, then by which off-goal suit is short.
pub const DECKS: [DeckSpec; NUM_DECKS] = [
    deck(0, [12, 8, 10, 10], Suit::Spades, Suit::Clubs, 5, 120.0),
    deck(1, [12, 10, 8, 10], Suit::Spades, Suit::Clubs, 6, 100.0),
    deck(2, [12, 10, 10, 8], Suit::Spades, Suit::Clubs, 6, 100.0),
    deck(3, [8, 12, 10, 10], Suit::Clubs, Suit::Spades, 5, 120.0),
    deck(4, [10, 12, 8, 10], Suit::Clubs, Suit::Spades, 6, 100.0),
    deck(5, [10, 12, 10, 8], Suit::Clubs, Suit::Spades, 6, 100.0),
    deck(6, [8, 10, 12, 10], Suit::Hearts, Suit::Diamonds, 6, 100.0),
    deck(7, [10, 8, 12, 10], Suit::Hearts, Suit::Diamonds, 6, 100.0),
    deck(8, [10, 10, 12, 8], Suit::Hearts, Suit::Diamonds, 5, 120.0),
    deck(9, [8, 10, 10, 12], Suit::Diamonds, Suit::Hearts, 6, 100.0),
    deck(10, [10, 8, 10, 12], Suit::Diamonds, Suit::Hearts, 6, 100.0),
    deck(11, [10, 10, 8, 12], Suit::Diamonds, Suit::Hearts, 5, 120.0),
];
