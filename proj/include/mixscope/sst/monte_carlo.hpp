#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixscope/shuffle/statistic.hpp"
#include "mixscope/sst/predicate.hpp"

namespace mixscope::sst {

struct Interval {
  double estimate = 0;
  double low = 0;
  double high = 0;
};

/// Wilson score interval at ~95% (z = 1.96).
Interval wilson_interval(std::uint64_t hits, std::uint64_t trials);

struct ValueEstimate {
  State value;
  std::uint64_t count;
  Interval probability;
};

/// Sampled counterpart of SSTReport. Never certifies anything.
struct MonteCarloReport {
  shuffle::Chain chain;
  int n = 0;
  int t = 0;
  std::string predicate;
  std::string statistic;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t satisfied = 0;
  Interval q;
  std::vector<ValueEstimate> conditional;  ///< sorted by value code
  std::optional<Distribution> target;      ///< when n is small enough to enumerate S_n
};

MonteCarloReport sample_strong_stationarity(shuffle::Chain chain, int n, int t, const PredicateKind& predicate,
                                            const shuffle::StatisticKind& statistic, std::uint64_t samples,
                                            std::uint64_t seed);

nlohmann::json to_json(const MonteCarloReport& r);

}  // namespace mixscope::sst
