#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mixscope/dist/distribution.hpp"
#include "mixscope/shuffle/deck.hpp"

namespace mixscope::shuffle {

struct TopCard {};
struct TopKOrder { int k; };
struct TopKSet { int k; };
struct PositionOf { Card card; };
struct PositionsOf { std::vector<Card> cards; };
struct Parity {};
struct CardAbove { Card card; };
struct CardBelow { Card card; };
/// Labels of `cards` read from top to bottom.
struct RelativeOrder { std::vector<Card> cards; };
/// Linear |pos(first) - pos(second)|.
struct Distance { Card first; Card second; };
/// Sets of cards in consecutive blocks of `block` positions; block | n.
struct BlockSets { int block; };
/// Cards dealt round-robin into `hands` hands (position mod hands); hands | n.
struct ModularHands { int hands; };

using StatisticKind = std::variant<TopCard, TopKOrder, TopKSet, PositionOf, PositionsOf, Parity, CardAbove,
                                   CardBelow, RelativeOrder, Distance, BlockSets, ModularHands>;

/// Value code of CardAbove/CardBelow when the card sits at the deck boundary.
inline constexpr State kNoNeighbour = 0;
inline constexpr State kEven = 0;
inline constexpr State kOdd = 1;

/// Stable snake_case names with colon-separated parameters, e.g.
/// "top_k_order:2", "relative_order:1,2,3", "distance:1,2".
std::string statistic_name(const StatisticKind& kind);
StatisticKind parse_statistic(std::string_view text);

/// Throws InvalidArgument when a parameter does not fit a deck of n cards.
void validate(const StatisticKind& kind, int n);

/// Integer code of the statistic's value; decode with describe_value().
State evaluate_statistic(const StatisticKind& kind, std::span<const Card> order);
State evaluate_statistic(const StatisticKind& kind, const Deck& d);

nlohmann::json describe_value(const StatisticKind& kind, int n, State code);

/// The statistic as a function of Deck::rank() for decks of n cards.
Statistic rank_statistic(const StatisticKind& kind, int n);

/// Pushforward of the uniform distribution on S_n; n <= kMaxDenseDeck.
Distribution stationary_statistic_distribution(int n, const StatisticKind& kind);

}  // namespace mixscope::shuffle
