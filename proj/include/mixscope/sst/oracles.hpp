#pragma once

#include "mixscope/dist/distribution.hpp"

namespace mixscope::sst {

/// Pr(at least k distinct labels among t uniform draws from n).
Rational prob_k_distinct(int n, int k, int t);

/// Pr(n independent uniform t-bit strings are pairwise distinct).
Rational prob_strings_distinct(int n, int t);

/// Number of +-1 sequences of length t whose partial sums stay >= 0.
BigInt count_nonnegative_paths(int t);

/// Exact law of one card's position (1..n) after t steps of Walk 1 (random
/// card to top w.p. 1/2, top card to bottom w.p. 1/2), started at position p0.
Distribution walk1_position_distribution(int n, int t, int p0);

}  // namespace mixscope::sst
