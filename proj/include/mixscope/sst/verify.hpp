#pragma once

#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "mixscope/shuffle/statistic.hpp"
#include "mixscope/sst/paths.hpp"

namespace mixscope::sst {

struct ConditionalLaw {
  Rational q;                ///< probability the predicate holds at time t
  Distribution conditional;  ///< statistic at time t given the predicate
};

/// Exact conditional law from an exhaustive path list. Values in `image` are
/// kept with zero weight when no satisfying path reaches them. Throws
/// DomainError "predicate never satisfied" when q = 0.
ConditionalLaw conditional_statistic_distribution(std::span<const Path> paths, const PredicateKind& predicate,
                                                  const shuffle::StatisticKind& statistic,
                                                  std::span<const State> image = {});

struct SSTReport {
  shuffle::Chain chain;
  int n = 0;
  int t = 0;
  std::string predicate;
  std::string statistic;
  std::uint64_t paths = 0;

  Rational q;
  Distribution conditional;
  Distribution target;         ///< stationary pushforward
  Distribution unconditional;  ///< law of the statistic at time t
  bool is_strongly_stationary = false;
  std::optional<Rational> sep_bound;  ///< 1 - q, only when certified
  Rational max_pointwise_deviation;
  bool predicate_stable = true;  ///< once true along a path, stays true
  Rational unconditional_separation;
  /// q * conditional(a) <= unconditional(a) for every value a.
  bool premise_holds = true;
};

/// Enumerates every path of length t from `start`, conditions on the
/// predicate and compares with the stationary pushforward exactly.
SSTReport check_strong_stationarity(shuffle::Chain chain, int n, int t, const PredicateKind& predicate,
                                    const shuffle::StatisticKind& statistic,
                                    std::optional<shuffle::Deck> start = std::nullopt,
                                    std::uint64_t budget = kDefaultBudget);

/// Report with rationals as "num/den" strings and statistic values decoded.
nlohmann::json to_json(const SSTReport& r);

/// Statistic distribution serialised with decoded value labels.
nlohmann::json labelled(const Distribution& d, const shuffle::StatisticKind& kind, int n);

}  // namespace mixscope::sst
