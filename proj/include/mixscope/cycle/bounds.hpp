#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixscope/cycle/coloring.hpp"
#include "mixscope/cycle/decomposition.hpp"
#include "mixscope/rational.hpp"

namespace mixscope::cycle {

/// Time for the lazy walk to first move distance m = 2k-1 from its start:
/// mean 2m^2, variance (4/3)(m^4 - m^2).
struct GamblerMoments {
  Rational mean;
  Rational variance;
};
GamblerMoments gambler_moments(int k);

/// (8 + 8c/sqrt(3)) k^2; separation is at most 1/c^2 from this time on.
double chebyshev_time(int k, double c);
long chebyshev_steps(int k, double c);

enum class DominanceStatus { holds, violated, precondition_failed, ambiguous };
const char* status_name(DominanceStatus s);

struct NearestMember {
  std::size_t set;
  int distance;
  std::vector<int> vertices;  // every member at that distance
  bool red = false;           // meaningful unless ambiguous
  bool ambiguous = false;
};

struct RedDominanceReport {
  int x0 = 0;
  long horizon = 0;
  std::vector<NearestMember> nearest;
  DominanceStatus status = DominanceStatus::holds;
  std::optional<std::size_t> failing_set;
  // Filled whenever the series was evaluated (precondition met).
  std::optional<Rational> min_margin;  // min over s of Pr(red at s) - 1/2
  std::optional<long> min_margin_at;
  std::optional<long> first_violation;
};

RedDominanceReport check_red_dominance(const Coloring& c, int x0, long horizon,
                                       std::optional<std::vector<AlternatingSet>> sets = std::nullopt);

nlohmann::json to_json(const RedDominanceReport& r);

}  // namespace mixscope::cycle
