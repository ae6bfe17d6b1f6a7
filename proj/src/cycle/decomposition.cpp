#include "mixscope/cycle/decomposition.hpp"

#include <algorithm>
#include <functional>

#include "mixscope/error.hpp"

namespace mixscope::cycle {

namespace {

int running_step(const Coloring& c, int v) { return c.is_red(v) ? 1 : -1; }

}  // namespace

int compute_k(const Coloring& c) {
  int s = 0, lo = 0, hi = 0;
  for (int v = 0; v < c.size(); ++v) {
    s += running_step(c, v);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

int decomposition_start(const Coloring& c) {
  // Running sums after each vertex; the last one is 0, so a minimum always exists.
  int s = 0, lo = 1, at = 0;
  for (int v = 0; v < c.size(); ++v) {
    s += running_step(c, v);
    if (s < lo) {
      lo = s;
      at = v;
    }
  }
  return c.wrap(at + 1);
}

Decomposition formula_decomposition(const Coloring& c) {
  Decomposition d;
  d.k = compute_k(c);
  d.start = decomposition_start(c);
  std::vector<int> reds, blues;
  for (int j = 0; j < c.size(); ++j) {
    const int v = c.wrap(d.start + j);
    (c.is_red(v) ? reds : blues).push_back(v);
  }
  d.sets.resize(static_cast<std::size_t>(d.k));
  for (int i = 0; i < d.k; ++i) {
    auto& m = d.sets[static_cast<std::size_t>(i)].members;
    for (std::size_t a = static_cast<std::size_t>(i); a < reds.size(); a += static_cast<std::size_t>(d.k)) {
      m.push_back(reds[a]);
      m.push_back(blues[a]);
    }
  }
  return d;
}

Decomposition alternating_decomposition(const Coloring& c) {
  Decomposition d = formula_decomposition(c);
  const int limit = 2 * d.k - 1;
  const bool fine = std::all_of(d.sets.begin(), d.sets.end(),
                                [&](const AlternatingSet& a) { return max_gap(a, c.size()) <= limit; });
  if (fine) return d;
  if (auto repaired = search_decomposition(c, d.k, limit)) {
    d.sets = std::move(*repaired);
    d.source = DecompositionSource::repaired;
  }
  return d;
}

std::optional<std::vector<AlternatingSet>> search_decomposition(const Coloring& c, int max_sets, int gap_limit) {
  const int n = c.size();
  if (max_sets < 1) return std::nullopt;
  std::vector<std::vector<int>> open;
  std::vector<bool> closed;  // two-member sets spanning a long forward arc accept nothing more

  auto complete = [&](std::size_t s) {
    const auto& m = open[s];
    if (m.size() % 2 != 0) return false;
    return max_gap(AlternatingSet{m}, n) <= gap_limit;
  };

  std::function<bool(int)> place = [&](int v) -> bool {
    if (v == n) {
      for (std::size_t s = 0; s < open.size(); ++s) {
        if (!complete(s)) return false;
      }
      return true;
    }
    // Sets left behind for good must already be valid.
    for (std::size_t s = 0; s < open.size(); ++s) {
      const auto& m = open[s];
      if ((closed[s] || (m.size() >= 2 && v - m.back() > gap_limit)) && !complete(s)) return false;
    }
    for (std::size_t s = 0; s < open.size(); ++s) {
      // Index rather than reference: the recursion may grow `open`.
      if (closed[s] || c.at(open[s].back()) == c.at(v)) continue;
      const bool long_hop = v - open[s].back() > gap_limit;
      if (long_hop && open[s].size() != 1) continue;
      open[s].push_back(v);
      closed[s] = long_hop;
      if (place(v + 1)) return true;
      closed[s] = false;
      open[s].pop_back();
    }
    if (static_cast<int>(open.size()) < max_sets) {
      open.push_back({v});
      closed.push_back(false);
      if (place(v + 1)) return true;
      open.pop_back();
      closed.pop_back();
    }
    return false;
  };

  if (!place(0)) return std::nullopt;
  std::vector<AlternatingSet> out;
  for (auto& m : open) out.push_back(AlternatingSet{std::move(m)});
  return out;
}

AlternatingSet canonical(const AlternatingSet& a, int cycle_size) {
  AlternatingSet out = a;
  for (auto& v : out.members) v = ((v % cycle_size) + cycle_size) % cycle_size;
  std::sort(out.members.begin(), out.members.end());
  return out;
}

namespace {

// Forward distances from each member to the next, in canonical order.
std::vector<int> forward_gaps(const AlternatingSet& a, int cycle_size) {
  const auto m = canonical(a, cycle_size).members;
  std::vector<int> gaps;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const int next = j + 1 < m.size() ? m[j + 1] : m[0] + cycle_size;
    gaps.push_back(next - m[j]);
  }
  return gaps;
}

}  // namespace

int max_gap(const AlternatingSet& a, int cycle_size) {
  if (a.members.empty()) throw InvalidArgument("max_gap: empty set");
  const auto gaps = forward_gaps(a, cycle_size);
  if (gaps.size() == 2) return std::min(gaps[0], gaps[1]);
  return *std::max_element(gaps.begin(), gaps.end());
}

std::vector<HalfPosition> midpoints(const AlternatingSet& a, int cycle_size) {
  if (a.members.empty()) throw InvalidArgument("midpoints: empty set");
  const auto m = canonical(a, cycle_size).members;
  const auto gaps = forward_gaps(a, cycle_size);
  const int modulus = 2 * cycle_size;
  std::vector<HalfPosition> out;
  for (std::size_t j = 0; j < m.size(); ++j) out.push_back({(2 * m[j] + gaps[j]) % modulus});
  std::sort(out.begin(), out.end());
  return out;
}

std::string alternation_problem(const Coloring& c, const AlternatingSet& a) {
  if (a.members.size() < 2 || a.members.size() % 2 != 0) {
    return "set of size " + std::to_string(a.members.size()) + " is not even and >= 2";
  }
  const auto m = canonical(a, c.size()).members;
  if (std::adjacent_find(m.begin(), m.end()) != m.end()) return "repeated vertex";
  for (std::size_t j = 0; j < m.size(); ++j) {
    const int next = m[(j + 1) % m.size()];
    if (c.at(m[j]) == c.at(next)) {
      return "vertices " + std::to_string(m[j]) + " and " + std::to_string(next) + " share a colour";
    }
  }
  return {};
}

std::string partition_problem(const Coloring& c, std::span<const AlternatingSet> sets) {
  std::vector<int> owner(static_cast<std::size_t>(c.size()), -1);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (int v : sets[s].members) {
      if (v < 0 || v >= c.size()) return "vertex " + std::to_string(v) + " out of range";
      if (owner[static_cast<std::size_t>(v)] != -1) return "vertex " + std::to_string(v) + " in two sets";
      owner[static_cast<std::size_t>(v)] = static_cast<int>(s);
    }
    if (auto why = alternation_problem(c, sets[s]); !why.empty()) return "set " + std::to_string(s) + ": " + why;
  }
  for (int v = 0; v < c.size(); ++v) {
    if (owner[static_cast<std::size_t>(v)] == -1) return "vertex " + std::to_string(v) + " uncovered";
  }
  return {};
}

nlohmann::json to_json(const AlternatingSet& a, int cycle_size) {
  nlohmann::json mids = nlohmann::json::array();
  for (auto h : midpoints(a, cycle_size)) mids.push_back(h.value);
  return {{"members", a.members}, {"max_gap", max_gap(a, cycle_size)}, {"midpoints_half_units", mids}};
}

nlohmann::json to_json(const Decomposition& d, const Coloring& c) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& a : d.sets) sets.push_back(to_json(a, c.size()));
  return {{"k", d.k},
          {"start", d.start},
          {"source", d.source == DecompositionSource::formula ? "formula" : "repaired"},
          {"gap_limit", 2 * d.k - 1},
          {"sets", sets}};
}

std::vector<AlternatingSet> sets_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidArgument("sets json: expected an array of vertex lists");
  std::vector<AlternatingSet> out;
  for (const auto& e : j) {
    if (!e.is_array()) throw InvalidArgument("sets json: each set must be an array of vertices");
    out.push_back(AlternatingSet{e.get<std::vector<int>>()});
  }
  return out;
}

}  // namespace mixscope::cycle
