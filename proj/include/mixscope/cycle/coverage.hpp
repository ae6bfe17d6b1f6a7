#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mixscope/cycle/coloring.hpp"
#include "mixscope/cycle/decomposition.hpp"
#include "mixscope/dist/distribution.hpp"
#include "mixscope/dist/kernel.hpp"

namespace mixscope::cycle {

inline constexpr State kRed = 0;
inline constexpr State kBlue = 1;

/// Lazy walk on the cycle: 1/4 left, 1/4 right, 1/2 stay.
Kernel lazy_cycle_kernel(int cycle_size);

/// Maps a vertex to kRed / kBlue.
Statistic color_statistic(const Coloring& c);

/// Pr(walk from x0 is on a red vertex at time s), s = 0..horizon.
std::vector<Rational> red_probability_series(const Coloring& c, int x0, long horizon);
/// Separation of the colour law from (1/2, 1/2), s = 0..horizon.
std::vector<Rational> color_separation_series(const Coloring& c, int x0, long horizon);
Rational exact_color_separation(const Coloring& c, int x0, long t);

/// Offsets from the start in half-units; l <= x <= r and l <= 0 <= r.
struct CoverageState {
  int l = 0;
  int r = 0;
  int x = 0;
  friend bool operator==(const CoverageState&, const CoverageState&) = default;
};

/// Which visited half-unit ranges contain a midpoint of every set.
class MidpointCoverage {
 public:
  MidpointCoverage(int cycle_size, int x0, std::span<const AlternatingSet> sets);

  int half_units() const { return modulus_; }
  std::size_t set_count() const { return marks_.size(); }
  bool covers_set(std::size_t set, int l, int r) const;
  bool covers_all(int l, int r) const;

 private:
  int modulus_;
  int origin_;
  std::vector<std::vector<bool>> marks_;  // marks_[set][h]: h is a midpoint of the set
};

/// Pr(T > s), s = 0..horizon, where T is the first time the refined half-step
/// walk has crossed a midpoint of every set. `sets` defaults to
/// alternating_decomposition(c).
std::vector<Rational> coverage_time_tail(const Coloring& c, int x0, long horizon,
                                         std::optional<std::vector<AlternatingSet>> sets = std::nullopt);

/// Pr(fewer than 2k-1 distinct vertices visited by time s), s = 0..horizon.
std::vector<Rational> vertex_count_tail(const Coloring& c, int x0, long horizon);
/// Pr(the walk has not yet been at distance 2k-1 from x0), s = 0..horizon.
std::vector<Rational> displacement_tail(const Coloring& c, int x0, long horizon);

struct EndpointBalance {
  Rational red;   // Pr(set covered by time s, walk on a red member at s)
  Rational blue;  // same for blue members
};

/// Per-time red/blue endpoint mass inside sets[set] restricted to paths that
/// have crossed one of its midpoints.
std::vector<EndpointBalance> coverage_endpoint_balance(const Coloring& c, int x0,
                                                       std::span<const AlternatingSet> sets, std::size_t set,
                                                       long horizon);

/// True when consecutive midpoints of the set are equally spaced around the cycle.
bool evenly_spaced_midpoints(const AlternatingSet& a, int cycle_size);

}  // namespace mixscope::cycle
