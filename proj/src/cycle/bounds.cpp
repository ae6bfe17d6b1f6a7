#include "mixscope/cycle/bounds.hpp"

#include <cmath>
#include <limits>

#include "mixscope/cycle/coverage.hpp"
#include "mixscope/error.hpp"

namespace mixscope::cycle {

GamblerMoments gambler_moments(int k) {
  if (k < 1) throw InvalidArgument("gambler_moments: k must be >= 1");
  const Rational m = 2 * k - 1;
  const Rational m2 = m * m;
  return {2 * m2, Rational(4, 3) * (m2 * m2 - m2)};
}

double chebyshev_time(int k, double c) {
  if (k < 1) throw InvalidArgument("chebyshev_time: k must be >= 1");
  if (!(c > 0) || !std::isfinite(c)) throw InvalidArgument("chebyshev_time: c must be positive");
  return (8.0 + c * 8.0 / std::sqrt(3.0)) * k * k;
}

long chebyshev_steps(int k, double c) { return static_cast<long>(std::ceil(chebyshev_time(k, c))); }

const char* status_name(DominanceStatus s) {
  switch (s) {
    case DominanceStatus::holds: return "holds";
    case DominanceStatus::violated: return "violated";
    case DominanceStatus::precondition_failed: return "precondition_failed";
    case DominanceStatus::ambiguous: return "ambiguous";
  }
  return "unknown";
}

RedDominanceReport check_red_dominance(const Coloring& c, int x0, long horizon,
                                       std::optional<std::vector<AlternatingSet>> sets) {
  if (x0 < 0 || x0 >= c.size()) throw InvalidArgument("check_red_dominance: x0 out of range");
  if (horizon < 0) throw InvalidArgument("check_red_dominance: horizon must be >= 0");
  if (!sets) sets = alternating_decomposition(c).sets;

  RedDominanceReport rep;
  rep.x0 = x0;
  rep.horizon = horizon;
  for (std::size_t s = 0; s < sets->size(); ++s) {
    const auto& members = (*sets)[s].members;
    if (members.empty()) throw InvalidArgument("check_red_dominance: empty set");
    NearestMember nm{s, std::numeric_limits<int>::max(), {}};
    for (int v : members) {
      const int d = c.cyclic_distance(x0, v);
      if (d < nm.distance) {
        nm.distance = d;
        nm.vertices.clear();
      }
      if (d == nm.distance) nm.vertices.push_back(c.wrap(v));
    }
    const bool first_red = c.is_red(nm.vertices.front());
    nm.red = first_red;
    for (int v : nm.vertices) nm.ambiguous = nm.ambiguous || c.is_red(v) != first_red;
    rep.nearest.push_back(std::move(nm));
  }

  for (const auto& nm : rep.nearest) {
    if (nm.ambiguous) {
      rep.status = DominanceStatus::ambiguous;
      rep.failing_set = nm.set;
      return rep;
    }
  }
  for (const auto& nm : rep.nearest) {
    if (!nm.red) {
      rep.status = DominanceStatus::precondition_failed;
      rep.failing_set = nm.set;
      return rep;
    }
  }

  const auto series = red_probability_series(c, x0, horizon);
  const Rational half(1, 2);
  for (long s = 0; s <= horizon; ++s) {
    const Rational margin = series[static_cast<std::size_t>(s)] - half;
    if (!rep.min_margin || margin < *rep.min_margin) {
      rep.min_margin = margin;
      rep.min_margin_at = s;
    }
    if (margin < 0 && !rep.first_violation) rep.first_violation = s;
  }
  rep.status = rep.first_violation ? DominanceStatus::violated : DominanceStatus::holds;
  return rep;
}

nlohmann::json to_json(const RedDominanceReport& r) {
  nlohmann::json nearest = nlohmann::json::array();
  for (const auto& nm : r.nearest) {
    nearest.push_back({{"set", nm.set},
                       {"distance", nm.distance},
                       {"vertices", nm.vertices},
                       {"color", nm.ambiguous ? "ambiguous" : (nm.red ? "red" : "blue")}});
  }
  nlohmann::json j{{"x0", r.x0}, {"horizon", r.horizon}, {"status", status_name(r.status)}, {"nearest", nearest}};
  j["failing_set"] = r.failing_set ? nlohmann::json(*r.failing_set) : nlohmann::json(nullptr);
  j["min_margin"] = r.min_margin ? nlohmann::json(to_string(*r.min_margin)) : nlohmann::json(nullptr);
  j["min_margin_at"] = r.min_margin_at ? nlohmann::json(*r.min_margin_at) : nlohmann::json(nullptr);
  j["first_violation"] = r.first_violation ? nlohmann::json(*r.first_violation) : nlohmann::json(nullptr);
  return j;
}

}  // namespace mixscope::cycle
