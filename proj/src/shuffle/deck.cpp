#include "mixscope/shuffle/deck.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "mixscope/error.hpp"

namespace mixscope::shuffle {

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw CapacityError("factorial: n out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Deck Deck::identity(int n) {
  if (n < 2) throw InvalidArgument("deck: need at least two cards");
  std::vector<Card> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  return Deck(std::move(order));
}

Deck Deck::from_order(std::vector<Card> order) {
  const int n = static_cast<int>(order.size());
  if (n < 2) throw InvalidArgument("deck: need at least two cards");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (Card c : order) {
    if (c < 1 || c > n || seen[static_cast<std::size_t>(c)]) {
      throw InvalidArgument("deck: not a permutation of 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(c)] = true;
  }
  return Deck(std::move(order));
}

Deck Deck::unrank(int n, State rank) {
  if (n < 2 || n > 20) throw InvalidArgument("deck: unrank size out of range");
  const auto total = factorial(n);
  if (rank < 0 || static_cast<std::uint64_t>(rank) >= total) throw InvalidArgument("deck: rank out of range");
  std::vector<Card> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<Card> order;
  order.reserve(pool.size());
  auto r = static_cast<std::uint64_t>(rank);
  for (int i = n; i >= 1; --i) {
    const auto f = factorial(i - 1);
    const auto digit = r / f;
    r %= f;
    order.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return Deck(std::move(order));
}

int Deck::position_of(Card card) const {
  auto it = std::find(order_.begin(), order_.end(), card);
  if (it == order_.end()) throw InvalidArgument("deck: unknown card " + std::to_string(card));
  return static_cast<int>(it - order_.begin()) + 1;
}

State Deck::rank() const {
  const int n = size();
  std::uint64_t r = 0;
  std::uint32_t used = 0;  // bit c-1 set once card c has been placed
  for (int i = 0; i < n; ++i) {
    const Card c = order_[static_cast<std::size_t>(i)];
    const std::uint32_t below = (1u << (c - 1)) - 1u;
    const auto smaller_unused = static_cast<std::uint64_t>(c - 1 - std::popcount(used & below));
    r += smaller_unused * factorial(n - 1 - i);
    used |= 1u << (c - 1);
  }
  return static_cast<State>(r);
}

int Deck::sign() const {
  // Parity from cycle count: n - cycles transpositions.
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int cycles = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    ++cycles;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = order_[static_cast<std::size_t>(j)] - 1) {
      seen[static_cast<std::size_t>(j)] = true;
    }
  }
  return (n - cycles) % 2 == 0 ? 1 : -1;
}

nlohmann::json to_json(const Deck& d) { return std::vector<Card>(d.order().begin(), d.order().end()); }

Deck deck_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidArgument("deck json: expected an array of labels");
  return Deck::from_order(j.get<std::vector<Card>>());
}

Deck apply_move(const Deck& d, const Move& mv) {
  std::vector<Card> order(d.order().begin(), d.order().end());
  if (const auto* tt = std::get_if<ToTop>(&mv)) {
    auto it = std::find(order.begin(), order.end(), tt->card);
    if (it == order.end()) throw InvalidArgument("apply_move: unknown card " + std::to_string(tt->card));
    std::rotate(order.begin(), it, it + 1);
  } else {
    std::rotate(order.begin(), order.begin() + 1, order.end());
  }
  return Deck::from_order(std::move(order));
}

Deck move_position_to_top(const Deck& d, int position) {
  if (position < 1 || position > d.size()) throw InvalidArgument("move_position_to_top: position out of range");
  return apply_move(d, ToTop{d.at(position - 1)});
}

std::string to_string(const Move& mv) {
  if (const auto* tt = std::get_if<ToTop>(&mv)) return "to_top(" + std::to_string(tt->card) + ")";
  return "top_to_bottom";
}

}  // namespace mixscope::shuffle
