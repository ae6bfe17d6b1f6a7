#pragma once

#include <cstdint>
#include <vector>

#include "mixscope/rational.hpp"
#include "mixscope/shuffle/deck.hpp"

namespace mixscope::shuffle {

/// One binary string of length `bits` per card. bit j of card c is the bit
/// that card received in the (j+1)-th single inverse riffle. Sorting uses the
/// last step's bit as most significant, so applying the whole string at once
/// equals applying the steps one after another.
class StringAssignment {
 public:
  StringAssignment(int cards, int bits);
  /// keys[c-1] holds card c's string packed with step j at bit j.
  static StringAssignment from_keys(int bits, std::vector<std::uint64_t> keys);
  /// strings[c-1] is card c's string written first step first, e.g. "01".
  static StringAssignment from_strings(const std::vector<std::string>& strings);

  int cards() const { return static_cast<int>(keys_.size()); }
  int bits() const { return bits_; }
  std::uint64_t key(Card c) const { return keys_[static_cast<std::size_t>(c - 1)]; }
  int bit(Card c, int step) const { return static_cast<int>((key(c) >> step) & 1u); }
  /// The first `steps` bits of every string.
  StringAssignment prefix(int steps) const;
  /// Only the bit of step `step`, as a 1-bit assignment.
  StringAssignment step_slice(int step) const;

 private:
  int bits_;
  std::vector<std::uint64_t> keys_;
};

/// Stable sort of `d` by each card's key (0s rise to the top).
Deck inverse_riffle_apply(const Deck& d, const StringAssignment& a);

struct RiffleOutcome {
  StringAssignment assignment;
  Deck deck;
  Rational weight;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// All 2^(bits*n) assignments from the identity deck, each with weight 2^(-bits*n).
std::vector<RiffleOutcome> enumerate_riffle(int n, int bits, std::uint64_t budget = kDefaultBudget);

}  // namespace mixscope::shuffle
