#include "mixscope/cycle/coverage.hpp"

#include <algorithm>
#include <unordered_map>

#include "mixscope/error.hpp"

namespace mixscope::cycle {

namespace {

void check_start(const Coloring& c, int x0) {
  if (x0 < 0 || x0 >= c.size()) throw InvalidArgument("x0 must be a vertex in [0, " + std::to_string(c.size()) + ")");
}

void check_horizon(long horizon) {
  if (horizon < 0) throw InvalidArgument("horizon must be >= 0");
}

std::vector<Rational> dense_start(const Coloring& c, int x0) {
  std::vector<Rational> v(static_cast<std::size_t>(c.size()), Rational(0));
  v[static_cast<std::size_t>(x0)] = 1;
  return v;
}

Rational red_mass(const Coloring& c, const std::vector<Rational>& v) {
  Rational p = 0;
  for (int u = 0; u < c.size(); ++u) {
    if (c.is_red(u)) p += v[static_cast<std::size_t>(u)];
  }
  return p;
}

Rational over_power_of_four(const BigInt& count, long s) {
  Rational q(count, pow_int(4, static_cast<unsigned long>(s)));
  q.canonicalize();
  return q;
}

// Visited-range states keyed by (l, r, x); offsets bounded by `bound` in magnitude.
struct RangeKey {
  static std::int64_t pack(int l, int r, int x, int bound) {
    const std::int64_t w = 2 * static_cast<std::int64_t>(bound) + 1;
    return ((static_cast<std::int64_t>(l) + bound) * w + (r + bound)) * w + (x + bound);
  }
  static CoverageState unpack(std::int64_t key, int bound) {
    const std::int64_t w = 2 * static_cast<std::int64_t>(bound) + 1;
    CoverageState st;
    st.x = static_cast<int>(key % w) - bound;
    key /= w;
    st.r = static_cast<int>(key % w) - bound;
    st.l = static_cast<int>(key / w) - bound;
    return st;
  }
};

// Memoised coverage predicate over visited ranges narrower than the cycle.
class CoverageCache {
 public:
  CoverageCache(const MidpointCoverage& cov, std::optional<std::size_t> only)
      : cov_(cov), only_(only), m_(cov.half_units()), memo_(static_cast<std::size_t>((m_ + 1) * (m_ + 1)), -1) {}

  bool operator()(int l, int r) {
    if (r - l + 1 >= m_) return true;
    auto& slot = memo_[static_cast<std::size_t>(-l * (m_ + 1) + r)];
    if (slot < 0) slot = (only_ ? cov_.covers_set(*only_, l, r) : cov_.covers_all(l, r)) ? 1 : 0;
    return slot == 1;
  }

 private:
  const MidpointCoverage& cov_;
  std::optional<std::size_t> only_;
  int m_;
  std::vector<signed char> memo_;
};

}  // namespace

Kernel lazy_cycle_kernel(int cycle_size) {
  if (cycle_size < 3) throw InvalidArgument("lazy_cycle_kernel: need at least 3 vertices");
  const Rational quarter(1, 4), half(1, 2);
  std::vector<Kernel::Row> rows(static_cast<std::size_t>(cycle_size));
  for (int v = 0; v < cycle_size; ++v) {
    rows[static_cast<std::size_t>(v)] = {{(v + cycle_size - 1) % cycle_size, quarter},
                                         {v, half},
                                         {(v + 1) % cycle_size, quarter}};
  }
  return Kernel(std::move(rows));
}

Statistic color_statistic(const Coloring& c) {
  return [c](State v) -> std::optional<State> {
    if (v < 0 || v >= c.size()) return std::nullopt;
    return c.is_red(static_cast<int>(v)) ? kRed : kBlue;
  };
}

std::vector<Rational> red_probability_series(const Coloring& c, int x0, long horizon) {
  check_start(c, x0);
  check_horizon(horizon);
  const auto kernel = lazy_cycle_kernel(c.size());
  auto v = dense_start(c, x0);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(horizon) + 1);
  for (long s = 0; s <= horizon; ++s) {
    if (s > 0) v = kernel.step(v);
    out.push_back(red_mass(c, v));
  }
  return out;
}

std::vector<Rational> color_separation_series(const Coloring& c, int x0, long horizon) {
  std::vector<Rational> out;
  for (const auto& p : red_probability_series(c, x0, horizon)) {
    // Against (1/2, 1/2): max(1 - 2p, 1 - 2(1-p)) = |1 - 2p|.
    Rational d = 1 - 2 * p;
    out.push_back(d < 0 ? Rational(-d) : d);
  }
  return out;
}

Rational exact_color_separation(const Coloring& c, int x0, long t) {
  if (t < 0) throw InvalidArgument("exact_color_separation: negative time");
  return color_separation_series(c, x0, t).back();
}

MidpointCoverage::MidpointCoverage(int cycle_size, int x0, std::span<const AlternatingSet> sets)
    : modulus_(2 * cycle_size), origin_(2 * x0) {
  if (sets.empty()) throw InvalidArgument("coverage: no sets");
  for (const auto& a : sets) {
    std::vector<bool> mark(static_cast<std::size_t>(modulus_), false);
    for (auto h : midpoints(a, cycle_size)) mark[static_cast<std::size_t>(h.value)] = true;
    marks_.push_back(std::move(mark));
  }
}

bool MidpointCoverage::covers_set(std::size_t set, int l, int r) const {
  if (r - l + 1 >= modulus_) return true;
  const auto& mark = marks_.at(set);
  for (int o = l; o <= r; ++o) {
    const int h = ((origin_ + o) % modulus_ + modulus_) % modulus_;
    if (mark[static_cast<std::size_t>(h)]) return true;
  }
  return false;
}

bool MidpointCoverage::covers_all(int l, int r) const {
  for (std::size_t s = 0; s < marks_.size(); ++s) {
    if (!covers_set(s, l, r)) return false;
  }
  return true;
}

std::vector<Rational> coverage_time_tail(const Coloring& c, int x0, long horizon,
                                         std::optional<std::vector<AlternatingSet>> sets) {
  check_start(c, x0);
  check_horizon(horizon);
  if (!sets) sets = alternating_decomposition(c).sets;
  const MidpointCoverage cov(c.size(), x0, *sets);
  CoverageCache covered(cov, std::nullopt);
  const int bound = cov.half_units();

  std::unordered_map<std::int64_t, BigInt> cur, next;
  if (!covered(0, 0)) cur.emplace(RangeKey::pack(0, 0, 0, bound), BigInt(1));

  std::vector<Rational> tail;
  tail.reserve(static_cast<std::size_t>(horizon) + 1);
  tail.push_back(cur.empty() ? Rational(0) : Rational(1));
  for (long s = 1; s <= horizon; ++s) {
    for (int half = 0; half < 2; ++half) {
      next.clear();
      for (const auto& [key, count] : cur) {
        const auto st = RangeKey::unpack(key, bound);
        for (int d : {-1, 1}) {
          const int x = st.x + d;
          const int l = std::min(st.l, x), r = std::max(st.r, x);
          if (covered(l, r)) continue;
          next[RangeKey::pack(l, r, x, bound)] += count;
        }
      }
      cur.swap(next);
    }
    BigInt alive = 0;
    for (const auto& kv : cur) alive += kv.second;
    tail.push_back(over_power_of_four(alive, s));
  }
  return tail;
}

namespace {

// Tail of the first time the lazy walk's visited vertex range satisfies `done`.
template <class Done>
std::vector<Rational> lazy_range_tail(const Coloring& c, int x0, long horizon, Done done) {
  check_start(c, x0);
  check_horizon(horizon);
  const int bound = c.size();
  std::unordered_map<std::int64_t, BigInt> cur, next;
  if (!done(0, 0)) cur.emplace(RangeKey::pack(0, 0, 0, bound), BigInt(1));
  std::vector<Rational> tail{cur.empty() ? Rational(0) : Rational(1)};
  for (long s = 1; s <= horizon; ++s) {
    next.clear();
    for (const auto& [key, count] : cur) {
      const auto st = RangeKey::unpack(key, bound);
      for (auto [d, w] : {std::pair{-1, 1}, std::pair{0, 2}, std::pair{1, 1}}) {
        const int x = st.x + d;
        const int l = std::min(st.l, x), r = std::max(st.r, x);
        if (done(l, r)) continue;
        next[RangeKey::pack(l, r, x, bound)] += count * w;
      }
    }
    cur.swap(next);
    BigInt alive = 0;
    for (const auto& kv : cur) alive += kv.second;
    tail.push_back(over_power_of_four(alive, s));
  }
  return tail;
}

}  // namespace

std::vector<Rational> vertex_count_tail(const Coloring& c, int x0, long horizon) {
  const int n = c.size();
  const int needed = 2 * compute_k(c) - 1;
  return lazy_range_tail(c, x0, horizon, [&](int l, int r) { return std::min(r - l + 1, n) >= needed; });
}

std::vector<Rational> displacement_tail(const Coloring& c, int x0, long horizon) {
  const int needed = 2 * compute_k(c) - 1;
  return lazy_range_tail(c, x0, horizon, [&](int l, int r) { return std::max(-l, r) >= needed; });
}

std::vector<EndpointBalance> coverage_endpoint_balance(const Coloring& c, int x0,
                                                       std::span<const AlternatingSet> sets, std::size_t set,
                                                       long horizon) {
  check_start(c, x0);
  check_horizon(horizon);
  if (set >= sets.size()) throw InvalidArgument("coverage_endpoint_balance: set index out of range");
  const MidpointCoverage cov(c.size(), x0, sets);
  CoverageCache covered(cov, set);
  const int m = cov.half_units();
  const int bound = m;

  std::vector<bool> member(static_cast<std::size_t>(c.size()), false);
  for (int v : sets[set].members) member[static_cast<std::size_t>(c.wrap(v))] = true;

  std::unordered_map<std::int64_t, BigInt> cur, next;
  std::vector<BigInt> done(static_cast<std::size_t>(m), BigInt(0)), done_next;
  if (covered(0, 0)) {
    done[static_cast<std::size_t>(2 * x0)] = 1;
  } else {
    cur.emplace(RangeKey::pack(0, 0, 0, bound), BigInt(1));
  }

  std::vector<EndpointBalance> out;
  auto record = [&](long s) {
    BigInt red = 0, blue = 0;
    for (int v = 0; v < c.size(); ++v) {
      if (!member[static_cast<std::size_t>(v)]) continue;
      (c.is_red(v) ? red : blue) += done[static_cast<std::size_t>(2 * v)];
    }
    out.push_back({over_power_of_four(red, s), over_power_of_four(blue, s)});
  };
  record(0);
  for (long s = 1; s <= horizon; ++s) {
    for (int half = 0; half < 2; ++half) {
      next.clear();
      done_next.assign(static_cast<std::size_t>(m), BigInt(0));
      for (int h = 0; h < m; ++h) {
        const auto& cnt = done[static_cast<std::size_t>(h)];
        if (cnt == 0) continue;
        done_next[static_cast<std::size_t>((h + 1) % m)] += cnt;
        done_next[static_cast<std::size_t>((h + m - 1) % m)] += cnt;
      }
      for (const auto& [key, count] : cur) {
        const auto st = RangeKey::unpack(key, bound);
        for (int d : {-1, 1}) {
          const int x = st.x + d;
          const int l = std::min(st.l, x), r = std::max(st.r, x);
          if (covered(l, r)) {
            done_next[static_cast<std::size_t>(((2 * x0 + x) % m + m) % m)] += count;
          } else {
            next[RangeKey::pack(l, r, x, bound)] += count;
          }
        }
      }
      cur.swap(next);
      done.swap(done_next);
    }
    record(s);
  }
  return out;
}

bool evenly_spaced_midpoints(const AlternatingSet& a, int cycle_size) {
  const auto mids = midpoints(a, cycle_size);
  const int m = 2 * cycle_size;
  const int first = (mids.size() > 1 ? mids[1].value - mids[0].value : m);
  for (std::size_t j = 0; j < mids.size(); ++j) {
    const int next = j + 1 < mids.size() ? mids[j + 1].value : mids[0].value + m;
    if (next - mids[j].value != first) return false;
  }
  return true;
}

}  // namespace mixscope::cycle
