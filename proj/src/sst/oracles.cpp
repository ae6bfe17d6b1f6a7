#include "mixscope/sst/oracles.hpp"

#include <vector>

#include "mixscope/error.hpp"

namespace mixscope::sst {

Rational prob_k_distinct(int n, int k, int t) {
  if (n < 1 || k < 1 || k > n) throw InvalidArgument("prob_k_distinct: need 1 <= k <= n");
  if (t < 0) throw InvalidArgument("prob_k_distinct: negative t");
  // counts[j] = number of draw sequences with exactly j distinct labels.
  std::vector<BigInt> counts(static_cast<std::size_t>(n) + 1, 0);
  counts[0] = 1;
  for (int step = 0; step < t; ++step) {
    std::vector<BigInt> next(counts.size(), 0);
    for (int j = 0; j <= n; ++j) {
      if (counts[static_cast<std::size_t>(j)] == 0) continue;
      next[static_cast<std::size_t>(j)] += counts[static_cast<std::size_t>(j)] * j;
      if (j < n) next[static_cast<std::size_t>(j) + 1] += counts[static_cast<std::size_t>(j)] * (n - j);
    }
    counts = std::move(next);
  }
  BigInt good = 0;
  for (int j = k; j <= n; ++j) good += counts[static_cast<std::size_t>(j)];
  return make_rational(good, pow_int(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)));
}

Rational prob_strings_distinct(int n, int t) {
  if (n < 0 || t < 0) throw InvalidArgument("prob_strings_distinct: negative argument");
  const BigInt strings = pow_int(2, static_cast<std::uint64_t>(t));
  Rational p = 1;
  for (int i = 0; i < n; ++i) {
    if (strings <= i) return 0;
    p *= make_rational(strings - i, strings);
  }
  return p;
}

BigInt count_nonnegative_paths(int t) {
  if (t < 0) throw InvalidArgument("count_nonnegative_paths: negative length");
  std::vector<BigInt> at(static_cast<std::size_t>(t) + 2, 0);  // at[h] = paths ending at height h
  at[0] = 1;
  for (int step = 0; step < t; ++step) {
    std::vector<BigInt> next(at.size(), 0);
    for (std::size_t h = 0; h + 1 < at.size(); ++h) {
      if (at[h] == 0) continue;
      next[h + 1] += at[h];
      if (h > 0) next[h - 1] += at[h];
    }
    at = std::move(next);
  }
  BigInt total = 0;
  for (const auto& x : at) total += x;
  return total;
}

Distribution walk1_position_distribution(int n, int t, int p0) {
  if (n < 2) throw InvalidArgument("walk1_position_distribution: need at least two cards");
  if (p0 < 1 || p0 > n) throw InvalidArgument("walk1_position_distribution: start position out of range");
  if (t < 0) throw InvalidArgument("walk1_position_distribution: negative t");
  // Numerators over (2n)^t; index p-1 holds position p.
  const auto un = static_cast<std::size_t>(n);
  std::vector<BigInt> w(un, 0);
  w[static_cast<std::size_t>(p0 - 1)] = 1;
  for (int step = 0; step < t; ++step) {
    std::vector<BigInt> next(un, 0);
    for (std::size_t i = 0; i < un; ++i) {
      if (w[i] == 0) continue;
      const int p = static_cast<int>(i) + 1;
      next[0] += w[i];                                             // tracked card to top
      if (p < n) next[i + 1] += w[i] * static_cast<long>(n - p);   // a card below it to top
      next[i] += w[i] * static_cast<long>(p - 1);                  // a card above it to top
      next[p == 1 ? un - 1 : i - 1] += w[i] * static_cast<long>(n);  // top to bottom
    }
    w = std::move(next);
  }
  const BigInt den = pow_int(2 * un, static_cast<std::uint64_t>(t));
  std::vector<State> support;
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < un; ++i) {
    support.push_back(static_cast<State>(i) + 1);
    weights.push_back(make_rational(w[i], den));
  }
  return Distribution(std::move(support), std::move(weights));
}

}  // namespace mixscope::sst
