#include "mixscope/shuffle/statistic.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <set>

#include "mixscope/error.hpp"
#include "mixscope/shuffle/walks.hpp"

namespace mixscope::shuffle {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<int> parse_ints(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto piece = text.substr(0, comma);
    int v = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw InvalidArgument("expected an integer, got '" + std::string(piece) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(const std::vector<Card>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

// Accumulates base-b digits into a State, refusing to overflow.
class DigitPacker {
 public:
  explicit DigitPacker(State base) : base_(base) {}
  void push(State digit) {
    if (digit != 0 && scale_ > std::numeric_limits<State>::max() / digit) overflow();
    const State term = digit * scale_;
    if (value_ > std::numeric_limits<State>::max() - term) overflow();
    value_ += term;
    if (scale_ > std::numeric_limits<State>::max() / base_) {
      scale_ = std::numeric_limits<State>::max();  // any further nonzero digit overflows
    } else {
      scale_ *= base_;
    }
  }
  State value() const { return value_; }

 private:
  [[noreturn]] static void overflow() {
    throw CapacityError("statistic value does not fit a 64-bit code for this deck size");
  }
  State base_;
  State scale_ = 1;
  State value_ = 0;
};

std::vector<State> unpack(State code, State base, int count) {
  std::vector<State> digits;
  for (int i = 0; i < count; ++i) {
    digits.push_back(code % base);
    code /= base;
  }
  return digits;
}

int position_in(std::span<const Card> order, Card c) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == c) return static_cast<int>(i) + 1;
  }
  throw InvalidArgument("statistic: card " + std::to_string(c) + " not in deck");
}

State sign_code(std::span<const Card> order) {
  const auto n = order.size();
  std::vector<bool> seen(n, false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(order[j] - 1)) seen[j] = true;
  }
  return (n - cycles) % 2 == 0 ? kEven : kOdd;
}

void check_card(Card c, int n) {
  if (c < 1 || c > n) throw InvalidArgument("statistic: card " + std::to_string(c) + " outside 1.." + std::to_string(n));
}

void check_card_set(const std::vector<Card>& cards, int n) {
  if (cards.empty()) throw InvalidArgument("statistic: empty card set");
  std::set<Card> distinct(cards.begin(), cards.end());
  if (distinct.size() != cards.size()) throw InvalidArgument("statistic: repeated card in set");
  for (Card c : cards) check_card(c, n);
}

}  // namespace

std::string statistic_name(const StatisticKind& kind) {
  return std::visit(
      overloaded{
          [](const TopCard&) -> std::string { return "top_card"; },
          [](const TopKOrder& s) -> std::string { return "top_k_order:" + std::to_string(s.k); },
          [](const TopKSet& s) -> std::string { return "top_k_set:" + std::to_string(s.k); },
          [](const PositionOf& s) -> std::string { return "position_of:" + std::to_string(s.card); },
          [](const PositionsOf& s) -> std::string { return "positions_of:" + join(s.cards); },
          [](const Parity&) -> std::string { return "parity"; },
          [](const CardAbove& s) -> std::string { return "card_above:" + std::to_string(s.card); },
          [](const CardBelow& s) -> std::string { return "card_below:" + std::to_string(s.card); },
          [](const RelativeOrder& s) -> std::string { return "relative_order:" + join(s.cards); },
          [](const Distance& s) -> std::string {
            return "distance:" + std::to_string(s.first) + "," + std::to_string(s.second);
          },
          [](const BlockSets& s) -> std::string { return "block_sets:" + std::to_string(s.block); },
          [](const ModularHands& s) -> std::string { return "modular_hands:" + std::to_string(s.hands); },
      },
      kind);
}

StatisticKind parse_statistic(std::string_view text) {
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  const std::vector<int> args = colon == std::string_view::npos ? std::vector<int>{} : parse_ints(text.substr(colon + 1));
  auto want = [&](std::size_t count) {
    if (args.size() != count) {
      throw InvalidArgument("statistic '" + name + "' takes " + std::to_string(count) + " parameter(s)");
    }
  };
  auto want_some = [&] {
    if (args.empty()) throw InvalidArgument("statistic '" + name + "' needs a card list");
  };
  if (name == "top_card") { want(0); return TopCard{}; }
  if (name == "top_k_order") { want(1); return TopKOrder{args[0]}; }
  if (name == "top_k_set") { want(1); return TopKSet{args[0]}; }
  if (name == "position_of") { want(1); return PositionOf{args[0]}; }
  if (name == "positions_of") { want_some(); return PositionsOf{args}; }
  if (name == "parity") { want(0); return Parity{}; }
  if (name == "card_above") { want(1); return CardAbove{args[0]}; }
  if (name == "card_below") { want(1); return CardBelow{args[0]}; }
  if (name == "relative_order") { want_some(); return RelativeOrder{args}; }
  if (name == "distance") { want(2); return Distance{args[0], args[1]}; }
  if (name == "block_sets") { want(1); return BlockSets{args[0]}; }
  if (name == "modular_hands") { want(1); return ModularHands{args[0]}; }
  throw InvalidArgument("unknown statistic '" + name + "'");
}

void validate(const StatisticKind& kind, int n) {
  if (n < 2) throw InvalidArgument("statistic: deck needs at least two cards");
  std::visit(overloaded{
                 [](const TopCard&) {},
                 [n](const TopKOrder& s) {
                   if (s.k < 1 || s.k > n) throw InvalidArgument("top_k_order: k must be in 1..n");
                 },
                 [n](const TopKSet& s) {
                   if (s.k < 1 || s.k > n) throw InvalidArgument("top_k_set: k must be in 1..n");
                 },
                 [n](const PositionOf& s) { check_card(s.card, n); },
                 [n](const PositionsOf& s) { check_card_set(s.cards, n); },
                 [](const Parity&) {},
                 [n](const CardAbove& s) { check_card(s.card, n); },
                 [n](const CardBelow& s) { check_card(s.card, n); },
                 [n](const RelativeOrder& s) { check_card_set(s.cards, n); },
                 [n](const Distance& s) {
                   check_card(s.first, n);
                   check_card(s.second, n);
                   if (s.first == s.second) throw InvalidArgument("distance: cards must differ");
                 },
                 [n](const BlockSets& s) {
                   if (s.block < 1 || n % s.block != 0) throw InvalidArgument("block_sets: block size must divide n");
                 },
                 [n](const ModularHands& s) {
                   if (s.hands < 1 || n % s.hands != 0) throw InvalidArgument("modular_hands: hand count must divide n");
                 },
             },
             kind);
}

State evaluate_statistic(const StatisticKind& kind, std::span<const Card> order) {
  const int n = static_cast<int>(order.size());
  const State base = n + 1;
  return std::visit(
      overloaded{
          [&](const TopCard&) -> State { return order[0]; },
          [&](const TopKOrder& s) -> State {
            DigitPacker p(base);
            for (int i = 0; i < s.k; ++i) p.push(order[static_cast<std::size_t>(i)]);
            return p.value();
          },
          [&](const TopKSet& s) -> State {
            if (n > 62) throw CapacityError("top_k_set: deck too large for a bitmask code");
            State mask = 0;
            for (int i = 0; i < s.k; ++i) mask |= State{1} << (order[static_cast<std::size_t>(i)] - 1);
            return mask;
          },
          [&](const PositionOf& s) -> State { return position_in(order, s.card); },
          [&](const PositionsOf& s) -> State {
            DigitPacker p(base);
            for (Card c : s.cards) p.push(position_in(order, c));
            return p.value();
          },
          [&](const Parity&) -> State { return sign_code(order); },
          [&](const CardAbove& s) -> State {
            const int pos = position_in(order, s.card);
            return pos == 1 ? kNoNeighbour : order[static_cast<std::size_t>(pos - 2)];
          },
          [&](const CardBelow& s) -> State {
            const int pos = position_in(order, s.card);
            return pos == n ? kNoNeighbour : order[static_cast<std::size_t>(pos)];
          },
          [&](const RelativeOrder& s) -> State {
            DigitPacker p(base);
            for (Card c : order) {
              if (std::find(s.cards.begin(), s.cards.end(), c) != s.cards.end()) p.push(c);
            }
            return p.value();
          },
          [&](const Distance& s) -> State {
            return std::abs(position_in(order, s.first) - position_in(order, s.second));
          },
          [&](const BlockSets& s) -> State {
            std::vector<State> group(static_cast<std::size_t>(n) + 1);
            for (int i = 0; i < n; ++i) group[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i / s.block;
            DigitPacker p(n / s.block);
            for (int c = 1; c <= n; ++c) p.push(group[static_cast<std::size_t>(c)]);
            return p.value();
          },
          [&](const ModularHands& s) -> State {
            std::vector<State> group(static_cast<std::size_t>(n) + 1);
            for (int i = 0; i < n; ++i) group[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i % s.hands;
            DigitPacker p(s.hands);
            for (int c = 1; c <= n; ++c) p.push(group[static_cast<std::size_t>(c)]);
            return p.value();
          },
      },
      kind);
}

State evaluate_statistic(const StatisticKind& kind, const Deck& d) {
  validate(kind, d.size());
  return evaluate_statistic(kind, d.order());
}

nlohmann::json describe_value(const StatisticKind& kind, int n, State code) {
  using nlohmann::json;
  const State base = n + 1;
  auto tuple = [&](State c) {
    json out = json::array();
    for (; c > 0; c /= base) out.push_back(c % base);
    return out;
  };
  auto groups = [&](State c, State count) {
    std::vector<std::vector<Card>> sets(static_cast<std::size_t>(count));
    auto digits = unpack(c, count, n);
    for (int card = 1; card <= n; ++card) sets[static_cast<std::size_t>(digits[static_cast<std::size_t>(card - 1)])].push_back(card);
    return json(sets);
  };
  return std::visit(
      overloaded{
          [&](const TopCard&) -> json { return code; },
          [&](const TopKOrder&) -> json { return tuple(code); },
          [&](const TopKSet&) -> json {
            json out = json::array();
            for (int c = 1; c <= n; ++c) {
              if ((code >> (c - 1)) & 1) out.push_back(c);
            }
            return out;
          },
          [&](const PositionOf&) -> json { return code; },
          [&](const PositionsOf&) -> json { return tuple(code); },
          [&](const Parity&) -> json { return code == kEven ? "even" : "odd"; },
          [&](const CardAbove&) -> json { return code == kNoNeighbour ? json("none") : json(code); },
          [&](const CardBelow&) -> json { return code == kNoNeighbour ? json("none") : json(code); },
          [&](const RelativeOrder&) -> json { return tuple(code); },
          [&](const Distance&) -> json { return code; },
          [&](const BlockSets& s) -> json { return groups(code, n / s.block); },
          [&](const ModularHands& s) -> json { return groups(code, s.hands); },
      },
      kind);
}

Statistic rank_statistic(const StatisticKind& kind, int n) {
  validate(kind, n);
  return [kind, n](State rank) -> std::optional<State> {
    if (rank < 0 || static_cast<std::uint64_t>(rank) >= factorial(n)) return std::nullopt;
    return evaluate_statistic(kind, Deck::unrank(n, rank).order());
  };
}

Distribution stationary_statistic_distribution(int n, const StatisticKind& kind) {
  if (n < 2 || n > kMaxDenseDeck) {
    throw CapacityError("stationary_statistic_distribution: n must be in 2.." + std::to_string(kMaxDenseDeck));
  }
  validate(kind, n);
  std::map<State, BigInt> counts;
  std::vector<Card> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
  do {
    counts[evaluate_statistic(kind, order)] += 1;
  } while (std::next_permutation(order.begin(), order.end()));
  const BigInt total = BigInt(static_cast<unsigned long>(factorial(n)));
  std::vector<State> support;
  std::vector<Rational> w;
  for (const auto& [v, c] : counts) {
    support.push_back(v);
    w.push_back(make_rational(c, total));
  }
  return Distribution(std::move(support), std::move(w));
}

}  // namespace mixscope::shuffle
