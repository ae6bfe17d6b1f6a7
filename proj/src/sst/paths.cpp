#include "mixscope/sst/paths.hpp"

#include <limits>

#include "mixscope/error.hpp"

namespace mixscope::sst {

using shuffle::Chain;
using shuffle::Deck;
using shuffle::Move;
using shuffle::StringAssignment;

namespace {

bool checked_pow(std::uint64_t base, int exponent, std::uint64_t limit, std::uint64_t& out) {
  out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && out > limit / base) return false;
    out *= base;
  }
  return true;
}

}  // namespace

PathEnumerator::PathEnumerator(Chain chain, int t, Deck start, std::uint64_t budget)
    : chain_(chain), t_(t), start_(std::move(start)) {
  if (t < 0) throw InvalidArgument("enumerate_paths: negative horizon");
  const auto n = static_cast<std::uint64_t>(start_.size());
  switch (chain) {
    case Chain::random_to_top:
      branching_ = n;
      step_denominator_ = n;
      break;
    case Chain::walk1:
      branching_ = n + 1;
      step_denominator_ = 2 * n;
      break;
    case Chain::inverse_riffle:
      if (n > 62) throw CapacityError("enumerate_paths: deck too large for exhaustive riffle enumeration");
      branching_ = std::uint64_t{1} << n;
      step_denominator_ = branching_;
      break;
  }
  if (!checked_pow(branching_, t, budget, leaves_)) {
    throw CapacityError("enumerate_paths: " + std::to_string(branching_) + "^" + std::to_string(t) +
                        " paths exceed the enumeration budget of " + std::to_string(budget) +
                        "; use Monte-Carlo mode (--samples)");
  }
  if (!checked_pow(step_denominator_, t, std::uint64_t{1} << 62, denominator_)) {
    throw CapacityError("enumerate_paths: common denominator exceeds 62 bits");
  }
}

void PathEnumerator::run(const NodeFn& node, const LeafFn& leaf) const {
  const int n = start_.size();
  std::vector<Move> moves;
  std::vector<Deck> decks{start_};
  moves.reserve(static_cast<std::size_t>(t_));
  decks.reserve(static_cast<std::size_t>(t_) + 1);

  if (chain_ == Chain::inverse_riffle) {
    std::vector<std::uint64_t> keys(static_cast<std::size_t>(n), 0);
    std::function<void(int)> dfs = [&](int depth) {
      const auto strings = StringAssignment::from_keys(depth, keys);
      const PathPrefix prefix{n, {}, decks, &strings};
      node(prefix);
      if (depth == t_) {
        leaf(prefix, decks.back(), 1);
        return;
      }
      for (std::uint64_t code = 0; code < branching_; ++code) {
        std::vector<std::uint64_t> step_bits(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) {
          const auto bit = (code >> c) & 1u;
          step_bits[static_cast<std::size_t>(c)] = bit;
          keys[static_cast<std::size_t>(c)] |= bit << depth;
        }
        decks.push_back(inverse_riffle_apply(decks.back(), StringAssignment::from_keys(1, std::move(step_bits))));
        dfs(depth + 1);
        decks.pop_back();
        for (auto& k : keys) k &= ~(std::uint64_t{1} << depth);
      }
    };
    dfs(0);
    return;
  }

  const auto options = shuffle::move_distribution(chain_, n);
  // Integer numerators of each move over step_denominator_.
  std::vector<std::uint64_t> numerators;
  for (const auto& wm : options) {
    const Rational scaled = wm.probability * Rational(static_cast<unsigned long>(step_denominator_));
    numerators.push_back(scaled.get_num().get_ui());
  }
  std::function<void(int, std::uint64_t)> dfs = [&](int depth, std::uint64_t numerator) {
    const PathPrefix prefix{n, moves, decks, nullptr};
    node(prefix);
    if (depth == t_) {
      leaf(prefix, decks.back(), numerator);
      return;
    }
    for (std::size_t i = 0; i < options.size(); ++i) {
      moves.push_back(options[i].move);
      decks.push_back(apply_move(decks.back(), options[i].move));
      dfs(depth + 1, numerator * numerators[i]);
      decks.pop_back();
      moves.pop_back();
    }
  };
  dfs(0, 1);
}

std::vector<Path> enumerate_paths(Chain chain, int n, int t, const Deck& start, std::uint64_t budget) {
  if (start.size() != n) throw InvalidArgument("enumerate_paths: start deck has the wrong size");
  PathEnumerator e(chain, t, start, budget);
  const BigInt den(static_cast<unsigned long>(e.denominator()));
  std::vector<Path> out;
  out.reserve(e.leaf_count());
  e.run([](const PathPrefix&) {},
        [&](const PathPrefix& prefix, const Deck& end, std::uint64_t numerator) {
          Path p{start, {prefix.moves.begin(), prefix.moves.end()}, std::nullopt, end,
                 make_rational(BigInt(static_cast<unsigned long>(numerator)), den)};
          if (prefix.strings) p.strings = *prefix.strings;
          out.push_back(std::move(p));
        });
  return out;
}

PathPrefix prefix_of(const Path& p, int steps, std::vector<Deck>& decks, std::optional<StringAssignment>& strings) {
  decks.assign(1, p.start);
  if (p.strings) {
    if (steps > p.strings->bits()) throw InvalidArgument("prefix_of: prefix longer than the path");
    for (int s = 0; s < steps; ++s) decks.push_back(inverse_riffle_apply(decks.back(), p.strings->step_slice(s)));
    strings = p.strings->prefix(steps);
    return PathPrefix{p.start.size(), {}, decks, &*strings};
  }
  if (steps > static_cast<int>(p.moves.size())) throw InvalidArgument("prefix_of: prefix longer than the path");
  for (int s = 0; s < steps; ++s) decks.push_back(apply_move(decks.back(), p.moves[static_cast<std::size_t>(s)]));
  strings.reset();
  return PathPrefix{p.start.size(), std::span<const Move>(p.moves.data(), static_cast<std::size_t>(steps)), decks,
                    nullptr};
}

}  // namespace mixscope::sst
