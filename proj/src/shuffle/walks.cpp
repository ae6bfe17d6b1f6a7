#include "mixscope/shuffle/walks.hpp"

#include "mixscope/error.hpp"
#include "mixscope/shuffle/riffle.hpp"

namespace mixscope::shuffle {

std::string_view chain_name(Chain c) {
  switch (c) {
    case Chain::random_to_top: return "rtt";
    case Chain::walk1: return "walk1";
    case Chain::inverse_riffle: return "riffle";
  }
  return "?";
}

Chain parse_chain(std::string_view name) {
  if (name == "rtt" || name == "random_to_top") return Chain::random_to_top;
  if (name == "walk1") return Chain::walk1;
  if (name == "riffle" || name == "inverse_riffle") return Chain::inverse_riffle;
  throw InvalidArgument("unknown chain '" + std::string(name) + "' (expected rtt, walk1 or riffle)");
}

std::vector<WeightedMove> move_distribution(Chain c, int n) {
  if (n < 2) throw InvalidArgument("move_distribution: need at least two cards");
  std::vector<WeightedMove> out;
  switch (c) {
    case Chain::random_to_top:
      for (Card card = 1; card <= n; ++card) out.push_back({ToTop{card}, make_rational(1, n)});
      break;
    case Chain::walk1:
      for (Card card = 1; card <= n; ++card) out.push_back({ToTop{card}, make_rational(1, 2L * n)});
      out.push_back({TopToBottom{}, make_rational(1, 2)});
      break;
    case Chain::inverse_riffle:
      throw InvalidArgument("move_distribution: the inverse riffle is not a move chain");
  }
  return out;
}

namespace {

void check_dense(int n) {
  if (n < 2) throw InvalidArgument("a deck needs at least two cards");
  if (n > kMaxDenseDeck) {
    throw CapacityError("dense kernels need 2 <= n <= " + std::to_string(kMaxDenseDeck) +
                        "; use sampling mode for larger decks");
  }
}

Kernel move_kernel(Chain c, int n) {
  check_dense(n);
  const auto moves = move_distribution(c, n);
  const auto states = factorial(n);
  std::vector<Kernel::Row> rows(states);
  for (std::uint64_t r = 0; r < states; ++r) {
    const Deck d = Deck::unrank(n, static_cast<State>(r));
    for (const auto& wm : moves) rows[r].push_back({apply_move(d, wm.move).rank(), wm.probability});
  }
  return Kernel(std::move(rows));
}

}  // namespace

Kernel random_to_top_kernel(int n) { return move_kernel(Chain::random_to_top, n); }
Kernel walk1_kernel(int n) { return move_kernel(Chain::walk1, n); }

Kernel inverse_riffle_kernel(int n) {
  check_dense(n);
  // n! * 2^n transitions; 8 cards would need over ten million.
  if (n > kMaxDenseDeck - 1) throw CapacityError("inverse_riffle_kernel: n <= 7 required for a dense kernel");
  const auto states = factorial(n);
  const std::uint64_t assignments = std::uint64_t{1} << n;
  const Rational p = make_rational(1, static_cast<long>(assignments));
  std::vector<Kernel::Row> rows(states);
  for (std::uint64_t r = 0; r < states; ++r) {
    const Deck d = Deck::unrank(n, static_cast<State>(r));
    for (std::uint64_t code = 0; code < assignments; ++code) {
      std::vector<std::uint64_t> keys(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c) keys[static_cast<std::size_t>(c)] = (code >> c) & 1u;
      rows[r].push_back({inverse_riffle_apply(d, StringAssignment::from_keys(1, std::move(keys))).rank(), p});
    }
  }
  return Kernel(std::move(rows));
}

Kernel chain_kernel(Chain c, int n) {
  return c == Chain::inverse_riffle ? inverse_riffle_kernel(n) : move_kernel(c, n);
}

Distribution uniform_permutations(int n) {
  check_dense(n);
  std::vector<State> support(factorial(n));
  for (std::size_t i = 0; i < support.size(); ++i) support[i] = static_cast<State>(i);
  return Distribution::uniform(std::move(support));
}

Distribution point_mass_deck(const Deck& d) {
  check_dense(d.size());
  std::vector<State> support(factorial(d.size()));
  for (std::size_t i = 0; i < support.size(); ++i) support[i] = static_cast<State>(i);
  return Distribution::point_mass(std::move(support), d.rank());
}

}  // namespace mixscope::shuffle
