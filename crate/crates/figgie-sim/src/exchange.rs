//! Limit order books and the matching engine.
//!
//! One book per suit, bids in a max-heap and asks in a min-heap, with
//! price-time priority (earlier arrival wins inside a price level).
//! Matching runs whenever an order arrives: while the best bid price is
//! at or above the best ask price, cards move from seller to buyer at the
//! *bid* price, volume capped by the seller's inventory at match time.
//! A crossing sell whose owner has run out of cards is voided so the
//! walk can continue down the book.
//!
//! Agents cancel resting orders by marking them deleted; dead orders are
//! physically dropped only when they surface at the top of their heap.

use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::SimTime;
use crate::types::{AgentId, OrderId, Side, Suit, NUM_AGENTS, NUM_SUITS};

/// A limit order. `volume` counts cards; price is in cash units.
#[derive(Debug, Clone, PartialEq)]
pub struct Order {
    pub id: OrderId,
    pub agent: AgentId,
    pub side: Side,
    pub asset: Suit,
    pub price: f64,
    pub volume: u32,
    /// Set when the order reaches the book.
    pub placed_at: SimTime,
}

/// An executed transaction. The price is the matched buy order's price.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trade {
    pub time: SimTime,
    pub asset: Suit,
    pub buyer: AgentId,
    pub seller: AgentId,
    pub price: f64,
    pub volume: u32,
}

#[derive(Debug, Error, PartialEq)]
pub enum ExchangeError {
    #[error("unknown order id {0:?}")]
    UnknownOrder(OrderId),
}

/// Heap entry; `arrival` is the book-insertion counter that implements
/// time priority and survives partial fills.
#[derive(Debug, Clone)]
struct Resting {
    order: Order,
    arrival: u64,
}

/// Max-heap ordering for bids: highest price first, then earliest arrival.
#[derive(Debug, Clone)]
struct BidEntry(Resting);

impl PartialEq for BidEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for BidEntry {}
impl PartialOrd for BidEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for BidEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .order
            .price
            .total_cmp(&other.0.order.price)
            .then_with(|| other.0.arrival.cmp(&self.0.arrival))
    }
}

/// Max-heap ordering for asks: lowest price first, then earliest arrival.
#[derive(Debug, Clone)]
struct AskEntry(Resting);

impl PartialEq for AskEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for AskEntry {}
impl PartialOrd for AskEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for AskEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .0
            .order
            .price
            .total_cmp(&self.0.order.price)
            .then_with(|| other.0.arrival.cmp(&self.0.arrival))
    }
}

#[derive(Debug, Clone, Default)]
struct Book {
    bids: BinaryHeap<BidEntry>,
    asks: BinaryHeap<AskEntry>,
}

/// The four order books plus the order registry used for lazy deletion.
#[derive(Debug, Clone, Default)]
pub struct Exchange {
    books: [Book; NUM_SUITS],
    /// Indexed by `OrderId`; true once the owner cancelled the order.
    deleted: Vec<bool>,
    arrivals: u64,
}

impl Exchange {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register a new order and hand out its id. The order is not in any
    /// book yet — it is in flight until [`add_order`](Self::add_order).
    pub fn create_order(
        &mut self,
        agent: AgentId,
        side: Side,
        asset: Suit,
        price: f64,
        volume: u32,
    ) -> Order {
        debug_assert!(price >= 0.0 && price.is_finite(), "bad order price {price}");
        debug_assert!(volume >= 1);
        let id = OrderId(self.deleted.len() as u64);
        self.deleted.push(false);
        Order {
            id,
            agent,
            side,
            asset,
            price,
            volume,
            placed_at: SimTime::ZERO,
        }
    }

    /// Mark an order dead. Idempotent; matching and the best-price
    /// queries skip it from now on. Unknown ids are a caller bug.
    pub fn mark_deleted(&mut self, id: OrderId) -> Result<(), ExchangeError> {
        let slot = self
            .deleted
            .get_mut(id.0 as usize)
            .ok_or(ExchangeError::UnknownOrder(id))?;
        *slot = true;
        Ok(())
    }

    pub fn is_deleted(&self, id: OrderId) -> bool {
        self.deleted.get(id.0 as usize).copied().unwrap_or(false)
    }

    /// Best non-deleted bid price, sweeping dead orders off the top.
    pub fn best_bid(&mut self, asset: Suit) -> Option<f64> {
        let book = &mut self.books[asset.index()];
        while let Some(entry) = book.bids.peek() {
            if self.deleted[entry.0.order.id.0 as usize] {
                book.bids.pop();
            } else {
                return Some(entry.0.order.price);
            }
        }
        None
    }

    /// Best non-deleted ask price, sweeping dead orders off the top.
    pub fn best_ask(&mut self, asset: Suit) -> Option<f64> {
        let book = &mut self.books[asset.index()];
        while let Some(entry) = book.asks.peek() {
            if self.deleted[entry.0.order.id.0 as usize] {
                book.asks.pop();
            } else {
                return Some(entry.0.order.price);
            }
        }
        None
    }

    /// Insert an arriving order and run matching for its book.
    ///
    /// `hands[agent][suit]` and `cash[agent]` are updated in place as
    /// trades execute; executed trades are returned in order. Buyer cash
    /// is allowed to go negative. An order cancelled while in flight is
    /// dropped without touching the book.
    pub fn add_order(
        &mut self,
        mut order: Order,
        now: SimTime,
        hands: &mut [[u32; NUM_SUITS]; NUM_AGENTS],
        cash: &mut [f64; NUM_AGENTS],
    ) -> Vec<Trade> {
        if self.is_deleted(order.id) {
            return Vec::new();
        }
        order.placed_at = now;
        let asset = order.asset;
        self.insert(order);
        self.match_book(asset, now, hands, cash)
    }

    fn insert(&mut self, order: Order) {
        let arrival = self.arrivals;
        self.arrivals += 1;
        let book = &mut self.books[order.asset.index()];
        let resting = Resting { order, arrival };
        match resting.order.side {
            Side::Buy => book.bids.push(BidEntry(resting)),
            Side::Sell => book.asks.push(AskEntry(resting)),
        }
    }

    fn pop_live_bid(&mut self, asset: Suit) -> Option<Resting> {
        let book = &mut self.books[asset.index()];
        while let Some(BidEntry(entry)) = book.bids.pop() {
            if !self.deleted[entry.order.id.0 as usize] {
                return Some(entry);
            }
        }
        None
    }

    fn pop_live_ask(&mut self, asset: Suit) -> Option<Resting> {
        let book = &mut self.books[asset.index()];
        while let Some(AskEntry(entry)) = book.asks.pop() {
            if !self.deleted[entry.order.id.0 as usize] {
                return Some(entry);
            }
        }
        None
    }

    fn push_back(&mut self, resting: Resting) {
        let book = &mut self.books[resting.order.asset.index()];
        match resting.order.side {
            Side::Buy => book.bids.push(BidEntry(resting)),
            Side::Sell => book.asks.push(AskEntry(resting)),
        }
    }

    fn match_book(
        &mut self,
        asset: Suit,
        now: SimTime,
        hands: &mut [[u32; NUM_SUITS]; NUM_AGENTS],
        cash: &mut [f64; NUM_AGENTS],
    ) -> Vec<Trade> {
        let mut trades = Vec::new();
        loop {
            let Some(mut bid) = self.pop_live_bid(asset) else { break };
            let Some(mut ask) = self.pop_live_ask(asset) else {
                self.push_back(bid);
                break;
            };
            if bid.order.price < ask.order.price {
                self.push_back(bid);
                self.push_back(ask);
                break;
            }
            let seller_inventory = hands[ask.order.agent][asset.index()];
            let volume = bid.order.volume.min(ask.order.volume).min(seller_inventory);
            if volume > 0 {
                let price = bid.order.price;
                hands[ask.order.agent][asset.index()] -= volume;
                hands[bid.order.agent][asset.index()] += volume;
                let amount = volume as f64 * price;
                cash[bid.order.agent] -= amount;
                cash[ask.order.agent] += amount;
                trades.push(Trade {
                    time: now,
                    asset,
                    buyer: bid.order.agent,
                    seller: ask.order.agent,
                    price,
                    volume,
                });
                bid.order.volume -= volume;
                ask.order.volume -= volume;
                if bid.order.volume > 0 {
                    self.push_back(bid);
                }
                if ask.order.volume > 0 {
                    self.push_back(ask);
                }
            } else {
                // The crossing sell cannot be funded with cards: void it
                // and let the bid keep walking the book.
                self.push_back(bid);
            }
        }
        trades
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> ([[u32; 4]; 4], [f64; 4]) {
        ([[5; 4]; 4], [300.0; 4])
    }

    fn add(
        ex: &mut Exchange,
        agent: AgentId,
        side: Side,
        price: f64,
        volume: u32,
        hands: &mut [[u32; 4]; 4],
        cash: &mut [f64; 4],
    ) -> Vec<Trade> {
        let order = ex.create_order(agent, side, Suit::Spades, price, volume);
        ex.add_order(order, SimTime::ZERO, hands, cash)
    }

    #[test]
    fn crossing_orders_trade_at_the_bid_price() {
        let (mut hands, mut cash) = setup();
        let mut ex = Exchange::new();
        assert!(add(&mut ex, 0, Side::Sell, 8.0, 1, &mut hands, &mut cash).is_empty());
        let trades = add(&mut ex, 1, Side::Buy, 10.0, 1, &mut hands, &mut cash);
        assert_eq!(trades.len(), 1);
        let t = &trades[0];
        assert_eq!((t.buyer, t.seller, t.price, t.volume), (1, 0, 10.0, 1));
        assert_eq!(hands[0][0], 4);
        assert_eq!(hands[1][0], 6);
        assert_eq!(cash[0], 310.0);
        assert_eq!(cash[1], 290.0);
    }

    #[test]
    fn uncrossed_orders_rest() {
        let (mut hands, mut cash) = setup();
        let mut ex = Exchange::new();
        assert!(add(&mut ex, 0, Side::Sell, 8.0, 1, &mut hands, &mut cash).is_empty());
        assert!(add(&mut ex, 1, Side::Buy, 5.0, 1, &mut hands, &mut cash).is_empty());
        assert_eq!(ex.best_bid(Suit::Spades), Some(5.0));
        assert_eq!(ex.best_ask(Suit::Spades), Some(8.0));
    }

    #[test]
    fn seller_inventory_caps_the_fill_and_voids_the_residual_ask() {
        let (mut hands, mut cash) = setup();
        hands[0][0] = 2; // seller holds two spades
        let mut ex = Exchange::new();
        assert!(add(&mut ex, 0, Side::Sell, 9.0, 5, &mut hands, &mut cash).is_empty());
        let trades = add(&mut ex, 1, Side::Buy, 10.0, 3, &mut hands, &mut cash);
        assert_eq!(trades.len(), 1);
        assert_eq!(trades[0].volume, 2);
        assert_eq!(trades[0].price, 10.0);
        // the starved ask is gone; the bid's last card rests
        assert_eq!(ex.best_ask(Suit::Spades), None);
        assert_eq!(ex.best_bid(Suit::Spades), Some(10.0));
        assert_eq!(hands[0][0], 0);
        assert_eq!(hands[1][0], 7);
    }

    #[test]
    fn best_prices_skip_and_drop_deleted_orders() {
        let (mut hands, mut cash) = setup();
        let mut ex = Exchange::new();
        let mut ids = Vec::new();
        for p in [3.0, 7.0, 5.0] {
            let o = ex.create_order(0, Side::Buy, Suit::Spades, p, 1);
            ids.push(o.id);
            ex.add_order(o, SimTime::ZERO, &mut hands, &mut cash);
        }
        assert_eq!(ex.best_bid(Suit::Spades), Some(7.0));
        ex.mark_deleted(ids[1]).unwrap();
        assert_eq!(ex.best_bid(Suit::Spades), Some(5.0));
        // idempotent
        ex.mark_deleted(ids[1]).unwrap();
        assert_eq!(ex.best_bid(Suit::Spades), Some(5.0));
        assert_eq!(ex.best_bid(Suit::Hearts), None);
    }

    #[test]
    fn deleted_resting_ask_never_trades() {
        let (mut hands, mut cash) = setup();
        let mut ex = Exchange::new();
        let ask = ex.create_order(0, Side::Sell, Suit::Spades, 8.0, 1);
        let ask_id = ask.id;
        ex.add_order(ask, SimTime::ZERO, &mut hands, &mut cash);
        ex.mark_deleted(ask_id).unwrap();
        let trades = add(&mut ex, 1, Side::Buy, 10.0, 1, &mut hands, &mut cash);
        assert!(trades.is_empty());
        assert_eq!(ex.best_bid(Suit::Spades), Some(10.0));
        assert_eq!(cash, [300.0; 4]);
    }

    #[test]
    fn order_cancelled_in_flight_is_dropped_on_arrival() {
        let (mut hands, mut cash) = setup();
        let mut ex = Exchange::new();
        let order = ex.create_order(0, Side::Buy, Suit::Spades, 4.0, 1);
        ex.mark_deleted(order.id).unwrap();
        let trades = ex.add_order(order, SimTime::ZERO, &mut hands, &mut cash);
        assert!(trades.is_empty());
        assert_eq!(ex.best_bid(Suit::Spades), None);
    }

    #[test]
    fn unknown_order_id_is_an_error() {
        let mut ex = Exchange::new();
        assert_eq!(
            ex.mark_deleted(OrderId(99)),
            Err(ExchangeError::UnknownOrder(OrderId(99)))
        );
    }

    #[test]
    fn equal_prices_fill_in_arrival_order() {
        let (mut hands, mut cash) = setup();
        let mut ex = Exchange::new();
        add(&mut ex, 0, Side::Sell, 5.0, 1, &mut hands, &mut cash);
        add(&mut ex, 1, Side::Sell, 5.0, 1, &mut hands, &mut cash);
        let trades = add(&mut ex, 2, Side::Buy, 5.0, 1, &mut hands, &mut cash);
        assert_eq!(trades.len(), 1);
        assert_eq!(trades[0].seller, 0, "earlier ask at the same price fills first");
    }

    #[test]
    fn multi_level_sweep_preserves_conservation() {
        let (mut hands, mut cash) = setup();
        let mut ex = Exchange::new();
        add(&mut ex, 0, Side::Sell, 4.0, 2, &mut hands, &mut cash);
        add(&mut ex, 2, Side::Sell, 6.0, 1, &mut hands, &mut cash);
        let trades = add(&mut ex, 1, Side::Buy, 7.0, 3, &mut hands, &mut cash);
        assert_eq!(trades.len(), 2);
        assert_eq!(trades[0].volume, 2);
        assert_eq!(trades[1].volume, 1);
        // every trade at the bid price
        assert!(trades.iter().all(|t| t.price == 7.0));
        let total_cash: f64 = cash.iter().sum();
        assert!((total_cash - 1200.0).abs() < 1e-9);
        let spades: u32 = hands.iter().map(|h| h[0]).sum();
        assert_eq!(spades, 20);
    }
}
