#include "mixscope/sst/predicate.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "mixscope/error.hpp"

namespace mixscope::sst {

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

bool is_riffle_predicate(const PredicateKind& p) {
  return std::holds_alternative<RiffleFirstJStringsDistinct>(p) || std::holds_alternative<RiffleSetStringsDistinct>(p) ||
         std::holds_alternative<RiffleBlocksNonOverlapping>(p);
}

void check_cards(const std::vector<Card>& cards, int n) {
  if (cards.empty()) throw InvalidArgument("predicate: empty card set");
  if (std::set<Card>(cards.begin(), cards.end()).size() != cards.size()) {
    throw InvalidArgument("predicate: repeated card");
  }
  for (Card c : cards) {
    if (c < 1 || c > n) throw InvalidArgument("predicate: card outside 1..n");
  }
}

// Latest step (1-based) at which each card went to the top; 0 if never.
std::vector<int> last_chosen(const PathPrefix& prefix) {
  std::vector<int> last(static_cast<std::size_t>(prefix.n) + 1, 0);
  for (std::size_t s = 0; s < prefix.moves.size(); ++s) {
    if (const auto* tt = std::get_if<shuffle::ToTop>(&prefix.moves[s])) {
      last[static_cast<std::size_t>(tt->card)] = static_cast<int>(s) + 1;
    }
  }
  return last;
}

int distinct_chosen(const std::vector<int>& last) {
  return static_cast<int>(std::count_if(last.begin() + 1, last.end(), [](int s) { return s > 0; }));
}

std::vector<std::uint64_t> sorted_keys(const shuffle::StringAssignment& a) {
  std::vector<std::uint64_t> keys;
  for (Card c = 1; c <= a.cards(); ++c) keys.push_back(a.key(c));
  std::sort(keys.begin(), keys.end());
  return keys;
}

const shuffle::StringAssignment& need_strings(const PathPrefix& prefix) {
  if (!prefix.strings) throw InvalidArgument("riffle predicate evaluated on a move path");
  return *prefix.strings;
}

}  // namespace

std::string predicate_name(const PredicateKind& p) {
  return std::visit(
      overloaded{
          [](const Always&) -> std::string { return "always"; },
          [](const KDistinctChosen& x) -> std::string { return "k_distinct:" + std::to_string(x.k); },
          [](const AllChosen&) -> std::string { return "all_chosen"; },
          [](const CardChosen& x) -> std::string { return "card_chosen:" + std::to_string(x.card); },
          [](const AnyOfChosen& x) -> std::string { return "any_of_chosen:" + join(x.cards); },
          [](const ChosenMoreRecentlyThan& x) -> std::string {
            return "chosen_more_recently:" + std::to_string(x.card) + "," + std::to_string(x.k);
          },
          [](const AnyToTopMove&) -> std::string { return "any_to_top"; },
          [](const RiffleFirstJStringsDistinct& x) -> std::string { return "riffle_first_distinct:" + std::to_string(x.j); },
          [](const RiffleSetStringsDistinct& x) -> std::string { return "riffle_set_distinct:" + join(x.cards); },
          [](const RiffleBlocksNonOverlapping& x) -> std::string {
            return "riffle_blocks_disjoint:" + std::to_string(x.block);
          },
      },
      p);
}

PredicateKind parse_predicate(std::string_view text) {
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  const std::vector<int> args = colon == std::string_view::npos ? std::vector<int>{} : parse_ints(text.substr(colon + 1));
  auto want = [&](std::size_t count) {
    if (args.size() != count) {
      throw InvalidArgument("predicate '" + name + "' takes " + std::to_string(count) + " parameter(s)");
    }
  };
  auto want_some = [&] {
    if (args.empty()) throw InvalidArgument("predicate '" + name + "' needs a card list");
  };
  if (name == "always") { want(0); return Always{}; }
  if (name == "k_distinct") { want(1); return KDistinctChosen{args[0]}; }
  if (name == "all_chosen") { want(0); return AllChosen{}; }
  if (name == "card_chosen") { want(1); return CardChosen{args[0]}; }
  if (name == "any_of_chosen") { want_some(); return AnyOfChosen{args}; }
  if (name == "chosen_more_recently") { want(2); return ChosenMoreRecentlyThan{args[0], args[1]}; }
  if (name == "any_to_top") { want(0); return AnyToTopMove{}; }
  if (name == "riffle_first_distinct") { want(1); return RiffleFirstJStringsDistinct{args[0]}; }
  if (name == "riffle_set_distinct") { want_some(); return RiffleSetStringsDistinct{args}; }
  if (name == "riffle_blocks_disjoint") { want(1); return RiffleBlocksNonOverlapping{args[0]}; }
  throw InvalidArgument("unknown predicate '" + name + "'");
}

void validate(const PredicateKind& p, shuffle::Chain chain, int n) {
  const bool riffle = chain == shuffle::Chain::inverse_riffle;
  if (!std::holds_alternative<Always>(p) && riffle != is_riffle_predicate(p)) {
    throw InvalidArgument("predicate '" + predicate_name(p) + "' does not apply to chain " +
                          std::string(shuffle::chain_name(chain)));
  }
  std::visit(overloaded{
                 [](const Always&) {},
                 [n](const KDistinctChosen& x) {
                   if (x.k < 1 || x.k > n) throw InvalidArgument("k_distinct: k must be in 1..n");
                 },
                 [](const AllChosen&) {},
                 [n](const CardChosen& x) { check_cards({x.card}, n); },
                 [n](const AnyOfChosen& x) { check_cards(x.cards, n); },
                 [n](const ChosenMoreRecentlyThan& x) {
                   check_cards({x.card}, n);
                   if (x.k < 0 || x.k > n - 1) throw InvalidArgument("chosen_more_recently: k must be in 0..n-1");
                 },
                 [](const AnyToTopMove&) {},
                 [n](const RiffleFirstJStringsDistinct& x) {
                   if (x.j < 1 || x.j > n) throw InvalidArgument("riffle_first_distinct: j must be in 1..n");
                 },
                 [n](const RiffleSetStringsDistinct& x) { check_cards(x.cards, n); },
                 [n](const RiffleBlocksNonOverlapping& x) {
                   if (x.block < 1 || n % x.block != 0) throw InvalidArgument("riffle_blocks_disjoint: block must divide n");
                 },
             },
             p);
}

bool evaluate_predicate(const PredicateKind& p, const PathPrefix& prefix) {
  return std::visit(
      overloaded{
          [](const Always&) { return true; },
          [&](const KDistinctChosen& x) { return distinct_chosen(last_chosen(prefix)) >= x.k; },
          [&](const AllChosen&) { return distinct_chosen(last_chosen(prefix)) == prefix.n; },
          [&](const CardChosen& x) { return last_chosen(prefix)[static_cast<std::size_t>(x.card)] > 0; },
          [&](const AnyOfChosen& x) {
            const auto last = last_chosen(prefix);
            return std::any_of(x.cards.begin(), x.cards.end(),
                               [&](Card c) { return last[static_cast<std::size_t>(c)] > 0; });
          },
          [&](const ChosenMoreRecentlyThan& x) {
            const auto last = last_chosen(prefix);
            const int mine = last[static_cast<std::size_t>(x.card)];
            if (mine == 0) return false;
            if (distinct_chosen(last) == prefix.n) return true;
            int older = 0;
            for (Card c = 1; c <= prefix.n; ++c) {
              const int s = last[static_cast<std::size_t>(c)];
              if (c != x.card && s > 0 && s < mine) ++older;
            }
            return older >= x.k;
          },
          [&](const AnyToTopMove&) {
            return std::any_of(prefix.moves.begin(), prefix.moves.end(),
                               [](const shuffle::Move& m) { return std::holds_alternative<shuffle::ToTop>(m); });
          },
          [&](const RiffleFirstJStringsDistinct& x) {
            const auto keys = sorted_keys(need_strings(prefix));
            const std::size_t last = std::min<std::size_t>(static_cast<std::size_t>(x.j), keys.size() - 1);
            for (std::size_t i = 0; i < last; ++i) {
              if (keys[i] == keys[i + 1]) return false;
            }
            return true;
          },
          [&](const RiffleSetStringsDistinct& x) {
            const auto& a = need_strings(prefix);
            std::set<std::uint64_t> seen;
            for (Card c : x.cards) {
              if (!seen.insert(a.key(c)).second) return false;
            }
            return true;
          },
          [&](const RiffleBlocksNonOverlapping& x) {
            const auto keys = sorted_keys(need_strings(prefix));
            for (std::size_t b = static_cast<std::size_t>(x.block); b < keys.size(); b += static_cast<std::size_t>(x.block)) {
              if (keys[b - 1] == keys[b]) return false;
            }
            return true;
          },
      },
      p);
}

}  // namespace mixscope::sst
