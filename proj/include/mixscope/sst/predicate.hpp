#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mixscope/shuffle/riffle.hpp"
#include "mixscope/shuffle/walks.hpp"

namespace mixscope::sst {

using shuffle::Card;

struct Always {};
/// At least k distinct labels have been moved to the top.
struct KDistinctChosen { int k; };
struct AllChosen {};
struct CardChosen { Card card; };
struct AnyOfChosen { std::vector<Card> cards; };
/// `card` has been chosen, and either every card has been chosen or at least
/// k other chosen cards were last chosen before `card` was. Not monotone.
struct ChosenMoreRecentlyThan { Card card; int k; };
/// Some step was a to-top move (as opposed to top-to-bottom).
struct AnyToTopMove {};
/// Each of the j smallest strings differs from every other string.
struct RiffleFirstJStringsDistinct { int j; };
struct RiffleSetStringsDistinct { std::vector<Card> cards; };
/// Reading the sorted strings in blocks of `block`, no string is shared
/// across a block boundary.
struct RiffleBlocksNonOverlapping { int block; };

using PredicateKind =
    std::variant<Always, KDistinctChosen, AllChosen, CardChosen, AnyOfChosen, ChosenMoreRecentlyThan,
                 AnyToTopMove, RiffleFirstJStringsDistinct, RiffleSetStringsDistinct, RiffleBlocksNonOverlapping>;

std::string predicate_name(const PredicateKind& p);
/// "always", "k_distinct:2", "all_chosen", "card_chosen:1", "any_of_chosen:1,2",
/// "chosen_more_recently:1,1", "any_to_top", "riffle_first_distinct:1",
/// "riffle_set_distinct:1,2", "riffle_blocks_disjoint:2".
PredicateKind parse_predicate(std::string_view text);

/// Throws InvalidArgument if the predicate does not make sense for the chain
/// or its parameters do not fit n cards.
void validate(const PredicateKind& p, shuffle::Chain chain, int n);

/// Everything known about a path after its first `steps()` steps. decks[0] is
/// the start, decks[s] the deck after s steps. Riffle paths carry the string
/// prefix instead of moves.
struct PathPrefix {
  int n = 0;
  std::span<const shuffle::Move> moves;
  std::span<const shuffle::Deck> decks;
  const shuffle::StringAssignment* strings = nullptr;

  int steps() const {
    return strings ? strings->bits() : static_cast<int>(moves.size());
  }
};

bool evaluate_predicate(const PredicateKind& p, const PathPrefix& prefix);

}  // namespace mixscope::sst
