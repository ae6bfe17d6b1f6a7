#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mixscope/dist/distribution.hpp"

namespace mixscope::shuffle {

using Card = int;

/// Largest deck for which dense kernels over S_n are built (8! = 40320).
inline constexpr int kMaxDenseDeck = 8;

std::uint64_t factorial(int n);

/// A deck of n >= 2 cards labelled 1..n; index 0 is the top.
class Deck {
 public:
  static Deck identity(int n);
  static Deck from_order(std::vector<Card> order);
  /// Inverse of rank() among decks of size n.
  static Deck unrank(int n, State rank);

  int size() const { return static_cast<int>(order_.size()); }
  std::span<const Card> order() const { return order_; }
  Card at(int index) const { return order_[static_cast<std::size_t>(index)]; }
  Card top() const { return order_.front(); }
  /// 1-based position of `card`.
  int position_of(Card card) const;

  /// Lehmer-code rank in [0, n!).
  State rank() const;
  /// +1 for even permutations, -1 for odd.
  int sign() const;

  friend bool operator==(const Deck&, const Deck&) = default;

 private:
  explicit Deck(std::vector<Card> order) : order_(std::move(order)) {}
  std::vector<Card> order_;
};

nlohmann::json to_json(const Deck& d);
Deck deck_from_json(const nlohmann::json& j);

struct ToTop {
  Card card;
  friend bool operator==(const ToTop&, const ToTop&) = default;
};
struct TopToBottom {
  friend bool operator==(const TopToBottom&, const TopToBottom&) = default;
};
using Move = std::variant<ToTop, TopToBottom>;

Deck apply_move(const Deck& d, const Move& mv);
/// Moves the card at 1-based `position` to the top: the cycle (1 2 ... position).
/// Unlike ToTop, this is a fixed permutation of positions.
Deck move_position_to_top(const Deck& d, int position);
std::string to_string(const Move& mv);

}  // namespace mixscope::shuffle
