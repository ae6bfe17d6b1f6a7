#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixscope/cycle/coloring.hpp"

namespace mixscope::cycle {

/// Vertices whose colours alternate around the cycle, listed in cyclic order.
struct AlternatingSet {
  std::vector<int> members;
  std::size_t size() const { return members.size(); }
  friend bool operator==(const AlternatingSet&, const AlternatingSet&) = default;
};

/// Position in half-units: even values are vertices, odd values edge midpoints.
struct HalfPosition {
  int value;
  friend auto operator<=>(const HalfPosition&, const HalfPosition&) = default;
};

enum class DecompositionSource { formula, repaired };

struct Decomposition {
  int k = 0;
  int start = 0;  // rotation used by the indexing formula
  std::vector<AlternatingSet> sets;
  DecompositionSource source = DecompositionSource::formula;
};

/// Max minus min of the running red-minus-blue count, starting at 0 at vertex 0.
int compute_k(const Coloring& c);

/// Vertex just after the first global minimum of the running red-minus-blue count.
int decomposition_start(const Coloring& c);

/// A_i = {R_i, B_i, R_{k+i}, B_{k+i}, ...} with reds and blues indexed in visit
/// order from decomposition_start().
Decomposition formula_decomposition(const Coloring& c);

/// formula_decomposition(), replaced by a bounded-gap search result when one of
/// its sets has a gap above 2k-1 (this happens around the wrap when k does not
/// divide n).
Decomposition alternating_decomposition(const Coloring& c);

/// Deterministic backtracking search for a partition into at most `max_sets`
/// alternating sets with max_gap <= gap_limit. Sets come back ordered by first member.
std::optional<std::vector<AlternatingSet>> search_decomposition(const Coloring& c, int max_sets, int gap_limit);

/// Members sorted into cyclic order starting from the smallest index.
AlternatingSet canonical(const AlternatingSet& a, int cycle_size);

/// Largest forward distance between consecutive members. For two members the
/// shorter of the two arcs is used.
int max_gap(const AlternatingSet& a, int cycle_size);

/// One midpoint per consecutive pair on the member-free arc; two-member sets get
/// one on each arc. Values are in half-units mod 2*cycle_size, sorted.
std::vector<HalfPosition> midpoints(const AlternatingSet& a, int cycle_size);

/// Empty string when `a` alternates (even size >= 2), else the reason.
std::string alternation_problem(const Coloring& c, const AlternatingSet& a);
/// Empty string when `sets` are alternating, disjoint and cover every vertex.
std::string partition_problem(const Coloring& c, std::span<const AlternatingSet> sets);

nlohmann::json to_json(const AlternatingSet& a, int cycle_size);
nlohmann::json to_json(const Decomposition& d, const Coloring& c);
/// Parses a list of vertex lists, e.g. [[0,2,3,5],[1,4]].
std::vector<AlternatingSet> sets_from_json(const nlohmann::json& j);

}  // namespace mixscope::cycle
