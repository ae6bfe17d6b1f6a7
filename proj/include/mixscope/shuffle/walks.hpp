#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mixscope/dist/kernel.hpp"
#include "mixscope/shuffle/deck.hpp"

namespace mixscope::shuffle {

enum class Chain { random_to_top, walk1, inverse_riffle };

/// "rtt", "walk1", "riffle".
std::string_view chain_name(Chain c);
Chain parse_chain(std::string_view name);

struct WeightedMove {
  Move move;
  Rational probability;
};

/// One-step move distribution of the move-based chains (rtt, walk1).
std::vector<WeightedMove> move_distribution(Chain c, int n);

/// Dense kernels over S_n indexed by Deck::rank(); 2 <= n <= kMaxDenseDeck.
Kernel random_to_top_kernel(int n);
Kernel walk1_kernel(int n);
/// One inverse riffle: 2^n equally likely bit assignments.
Kernel inverse_riffle_kernel(int n);
Kernel chain_kernel(Chain c, int n);

/// Uniform distribution over S_n (by rank).
Distribution uniform_permutations(int n);
Distribution point_mass_deck(const Deck& d);

}  // namespace mixscope::shuffle
