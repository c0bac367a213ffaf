//! Small domain types shared across the simulator.

use serde::{Deserialize, Serialize};

/// Index of a player at the table, `0..4`.
pub type AgentId = usize;

/// Number of players in a game.
pub const NUM_AGENTS: usize = 4;

/// Number of suits / tradable assets.
pub const NUM_SUITS: usize = 4;

/// Card suit, doubling as the asset identifier on the exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suit {
    Spades,
    Clubs,
    Hearts,
    Diamonds,
}

pub const ALL_SUITS: [Suit; NUM_SUITS] = [Suit::Spades, Suit::Clubs, Suit::Hearts, Suit::Diamonds];

impl Suit {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Suit {
        ALL_SUITS[i]
    }

    /// The other suit of the same color: spades ↔ clubs, hearts ↔ diamonds.
    pub fn color_partner(self) -> Suit {
        match self {
            Suit::Spades => Suit::Clubs,
            Suit::Clubs => Suit::Spades,
            Suit::Hearts => Suit::Diamonds,
            Suit::Diamonds => Suit::Hearts,
        }
    }
}

impl std::fmt::Display for Suit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Suit::Spades => "spades",
            Suit::Clubs => "clubs",
            Suit::Hearts => "hearts",
            Suit::Diamonds => "diamonds",
        };
        f.write_str(name)
    }
}

/// Which side of the book an order rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Buy,
    Sell,
}

/// Identifier of an order, unique within one game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderId(pub u64);
