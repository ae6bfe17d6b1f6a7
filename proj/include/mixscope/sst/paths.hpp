#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mixscope/sst/predicate.hpp"

namespace mixscope::sst {

using shuffle::kDefaultBudget;

/// One length-t trajectory with its exact probability.
struct Path {
  shuffle::Deck start;
  std::vector<shuffle::Move> moves;                    // move chains
  std::optional<shuffle::StringAssignment> strings;    // inverse riffle
  shuffle::Deck end;
  Rational weight;
};

/// Depth-first walk over every trajectory of a chain. Probabilities are kept
/// as integer numerators over a common denominator so aggregation is exact
/// and independent of visiting order.
class PathEnumerator {
 public:
  /// Throws CapacityError when branching^t exceeds `budget` or the common
  /// denominator does not fit 63 bits.
  PathEnumerator(shuffle::Chain chain, int t, shuffle::Deck start, std::uint64_t budget = kDefaultBudget);

  shuffle::Chain chain() const { return chain_; }
  int n() const { return start_.size(); }
  int horizon() const { return t_; }
  std::uint64_t branching() const { return branching_; }
  std::uint64_t leaf_count() const { return leaves_; }
  /// Every path's weight is numerator / denominator().
  std::uint64_t denominator() const { return denominator_; }

  /// node(prefix) runs at every depth 0..t of every path (prefixes shared by
  /// several paths are visited once); leaf(prefix, end deck, numerator) runs
  /// once per complete path.
  using NodeFn = std::function<void(const PathPrefix&)>;
  using LeafFn = std::function<void(const PathPrefix&, const shuffle::Deck&, std::uint64_t)>;
  void run(const NodeFn& node, const LeafFn& leaf) const;

 private:
  shuffle::Chain chain_;
  int t_;
  shuffle::Deck start_;
  std::uint64_t branching_ = 0;
  std::uint64_t leaves_ = 0;
  std::uint64_t step_denominator_ = 0;
  std::uint64_t denominator_ = 0;
};

/// Materialises all paths; weights sum to 1.
std::vector<Path> enumerate_paths(shuffle::Chain chain, int n, int t, const shuffle::Deck& start,
                                  std::uint64_t budget = kDefaultBudget);

/// Rebuilds the prefix view of the first `steps` steps of a stored path.
/// `decks` receives the intermediate decks and must outlive the view.
PathPrefix prefix_of(const Path& p, int steps, std::vector<shuffle::Deck>& decks,
                     std::optional<shuffle::StringAssignment>& strings);

}  // namespace mixscope::sst
