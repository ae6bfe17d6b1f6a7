#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mixscope/cycle/coverage.hpp"
#include "mixscope/dist/distribution.hpp"
#include "mixscope/dist/kernel.hpp"
#include "mixscope/dist/serialize.hpp"
#include "mixscope/shuffle/statistic.hpp"
#include "mixscope/shuffle/walks.hpp"

using namespace mixscope;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

Distribution two_point(const Rational& first) { return Distribution({0, 1}, {first, 1 - first}); }

// Random distribution over {0..m-1} with small-denominator weights.
Distribution random_distribution(std::mt19937_64& rng, int m, bool allow_zero) {
  std::uniform_int_distribution<int> pick(allow_zero ? 0 : 1, 6);
  std::vector<long> raw(static_cast<std::size_t>(m));
  for (auto& x : raw) x = pick(rng);
  if (std::accumulate(raw.begin(), raw.end(), 0L) == 0) raw[0] = 1;
  const long total = std::accumulate(raw.begin(), raw.end(), 0L);
  std::vector<State> support(static_cast<std::size_t>(m));
  std::iota(support.begin(), support.end(), 0);
  std::vector<Rational> w;
  for (long x : raw) w.push_back(q(x, total));
  return Distribution(support, w);
}

}  // namespace

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(q(2, 4)) == "1/2");
  CHECK(to_string(q(3)) == "3/1");
  CHECK(to_string(q(-1, 3)) == "-1/3");
  CHECK(parse_rational("6/8") == q(3, 4));
  CHECK(parse_rational("5") == q(5));
  CHECK(parse_rational("0.125") == q(1, 8));
  CHECK(parse_rational("-2.5") == q(-5, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
}

TEST_CASE("distribution construction enforces its invariants") {
  CHECK_NOTHROW(Distribution({1, 2}, {q(1, 3), q(2, 3)}));
  CHECK_THROWS_AS(Distribution({1, 2}, {q(1, 3), q(1, 3)}), InvalidArgument);
  CHECK_THROWS_AS(Distribution({1, 1}, {q(1, 2), q(1, 2)}), InvalidArgument);
  CHECK_THROWS_AS(Distribution({1, 2}, {q(3, 2), q(-1, 2)}), InvalidArgument);
  CHECK_THROWS_AS(Distribution({1}, {q(1), q(0)}), InvalidArgument);
  CHECK_THROWS_AS(Distribution({}, {}), InvalidArgument);

  CHECK_NOTHROW(FloatDistribution({0, 1, 2}, {0.1, 0.2, 0.7}));
  CHECK_NOTHROW(FloatDistribution({0, 1}, {0.5, 0.5 + 1e-13}));
  CHECK_THROWS_AS(FloatDistribution({0, 1}, {0.5, 0.5 + 1e-9}), InvalidArgument);

  const auto u = Distribution::uniform({4, 5, 6});
  CHECK(u.weight_of(5) == q(1, 3));
  CHECK(u.weight_of(9) == 0);
  const auto pm = Distribution::point_mass({0, 1, 2}, 1);
  CHECK(pm.size() == 3);
  CHECK(pm.weight_of(0) == 0);
  CHECK(pm.contains(0));
  CHECK(pm.mode() == NumericMode::exact);
  CHECK(FloatDistribution::mode() == NumericMode::floating);
}

TEST_CASE("separation distance examples") {
  const auto u4 = Distribution::uniform({0, 1, 2, 3});
  CHECK(separation_distance(u4, u4) == 0);
  CHECK(separation_distance(Distribution::point_mass({0, 1, 2, 3}, 2), u4) == 1);
  CHECK(separation_distance(two_point(q(2, 3)), two_point(q(1, 2))) == q(1, 3));
  // Support of mu smaller than pi's: missing states count as zero mass.
  CHECK(separation_distance(Distribution({0}, {q(1)}), two_point(q(1, 2))) == 1);
}

TEST_CASE("separation distance errors") {
  const auto half = two_point(q(1, 2));
  CHECK_THROWS_WITH_AS(separation_distance(Distribution({7}, {q(1)}), half), "separation_distance: incomparable supports",
                       InvalidArgument);
  CHECK_THROWS_AS(separation_distance(half, Distribution({0, 1}, {q(1), q(0)})), InvalidArgument);
}

TEST_CASE("total variation examples") {
  const auto a = two_point(q(2, 3));
  CHECK(total_variation(a, a) == 0);
  CHECK(total_variation(Distribution({0}, {q(1)}), Distribution({1}, {q(1)})) == 1);
  CHECK(total_variation(a, two_point(q(1, 2))) == q(1, 6));
}

TEST_CASE("push_forward examples") {
  using namespace shuffle;
  const auto s3 = uniform_permutations(3);
  const auto top = push_forward(s3, rank_statistic(TopCard{}, 3));
  CHECK(top == Distribution::uniform({1, 2, 3}));

  const auto id = point_mass_deck(Deck::identity(4));
  const auto par = push_forward(id, rank_statistic(Parity{}, 4));
  CHECK(par.weight_of(kEven) == 1);

  // |pos(1) - pos(2)| over S_4, counted directly.
  std::vector<int> order{1, 2, 3, 4};
  std::vector<long> counts(4, 0);
  do {
    const auto p1 = std::find(order.begin(), order.end(), 1) - order.begin();
    const auto p2 = std::find(order.begin(), order.end(), 2) - order.begin();
    counts[static_cast<std::size_t>(std::abs(p1 - p2))]++;
  } while (std::next_permutation(order.begin(), order.end()));
  const auto dist = push_forward(uniform_permutations(4), rank_statistic(Distance{1, 2}, 4));
  for (State d = 1; d <= 3; ++d) CHECK(dist.weight_of(d) == q(counts[static_cast<std::size_t>(d)], 24));
  CHECK(dist.weight_of(1) == q(1, 2));
  CHECK(dist.weight_of(2) == q(1, 3));
  CHECK(dist.weight_of(3) == q(1, 6));
}

TEST_CASE("push_forward keeps declared image values and rejects undefined states") {
  const auto mu = Distribution({0, 1}, {q(1), q(0)});
  const std::vector<State> image{10, 11, 12};
  const Statistic f = [](State s) -> std::optional<State> { return 10 + s; };
  const auto img = push_forward(mu, f, image);
  CHECK(img.size() == 3);
  CHECK(img.weight_of(12) == 0);
  const Statistic partial = [](State s) -> std::optional<State> {
    if (s == 1) return std::nullopt;
    return s;
  };
  CHECK_THROWS_AS(push_forward(mu, partial), InvalidArgument);
}

TEST_CASE("evolve examples") {
  const auto k = cycle::lazy_cycle_kernel(4);
  const auto start = Distribution::point_mass(k.states(), 0);
  CHECK(evolve(k, start, 0) == start);
  const auto one = evolve(k, start, 1);
  CHECK(one.weight_of(0) == q(1, 2));
  CHECK(one.weight_of(1) == q(1, 4));
  CHECK(one.weight_of(2) == 0);
  CHECK(one.weight_of(3) == q(1, 4));
  CHECK_THROWS_AS(evolve(k, start, -1), InvalidArgument);

  using namespace shuffle;
  const auto rtt = random_to_top_kernel(3);
  const auto law = evolve(rtt, point_mass_deck(Deck::identity(3)), 1);
  CHECK(push_forward(law, rank_statistic(TopCard{}, 3)) == Distribution::uniform({1, 2, 3}));
}

TEST_CASE("kernel validation") {
  using Row = Kernel::Row;
  CHECK_THROWS_AS(Kernel(std::vector<Row>{{{0, q(1, 2)}}}), InvalidArgument);
  CHECK_THROWS_AS(Kernel(std::vector<Row>{{{1, q(1)}}}), InvalidArgument);
  CHECK_THROWS_AS(Kernel(std::vector<Row>{{{0, q(3, 2)}, {0, q(-1, 2)}}}), InvalidArgument);
  const Kernel k(std::vector<Row>{{{0, q(1, 2)}, {1, q(1, 2)}}, {{0, q(1)}}});
  CHECK(is_stationary(k, Distribution({0, 1}, {q(2, 3), q(1, 3)})));
  CHECK_FALSE(is_stationary(k, Distribution::uniform({0, 1})));
  const auto fk = to_float(k);
  CHECK(is_stationary(fk, FloatDistribution({0, 1}, {2.0 / 3, 1.0 / 3})));
}

TEST_CASE("sst_bound") {
  CHECK(sst_bound(q(1)) == 0);
  CHECK(sst_bound(q(0)) == 1);
  CHECK(sst_bound(1 - q(1, 25)) == q(1, 25));
  CHECK_THROWS_AS(sst_bound(q(3, 2)), InvalidArgument);
  CHECK_THROWS_AS(sst_bound(q(-1, 2)), InvalidArgument);
  CHECK(sst_bound(0.25) == doctest::Approx(0.75));
}

TEST_CASE("restrict_to and max_pointwise_deviation") {
  const auto mu = Distribution({1, 2, 3}, {q(1, 2), q(1, 4), q(1, 4)});
  const std::vector<State> keep{2, 3};
  CHECK(restrict_to(mu, keep) == Distribution({2, 3}, {q(1, 2), q(1, 2)}));
  const std::vector<State> none{9};
  CHECK_THROWS_AS(restrict_to(mu, none), DomainError);
  CHECK(max_pointwise_deviation(mu, Distribution::uniform({1, 2, 3})) == q(1, 6));
  CHECK(max_pointwise_deviation(mu, Distribution({4}, {q(1)})) == 1);
}

TEST_CASE("float mode mirrors exact mode") {
  const auto a = two_point(q(2, 3));
  const auto b = two_point(q(1, 2));
  CHECK(separation_distance(to_float(a), to_float(b)) == doctest::Approx(1.0 / 3));
  CHECK(total_variation(to_float(a), to_float(b)) == doctest::Approx(1.0 / 6));
}

TEST_CASE("json round trip") {
  const auto d = Distribution({3, 1}, {q(1, 3), q(2, 3)});
  const auto j = to_json(d);
  CHECK(j["mode"] == "exact");
  CHECK(j["weights"][0] == "1/3");
  CHECK(j["support"][1] == 1);
  CHECK(distribution_from_json(j) == d);
  const auto f = to_json(to_float(d));
  CHECK(f["mode"] == "float");
  CHECK(float_distribution_from_json(f).weight_of(1) == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(distribution_from_json(nlohmann::json{{"support", {1}}, {"weights", {"1/2"}}}), InvalidArgument);
}

TEST_CASE("property: separation dominates total variation") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 1200; ++trial) {
    const int m = 2 + trial % 5;
    const auto mu = random_distribution(rng, m, true);
    const auto pi = random_distribution(rng, m, false);
    const auto sep = separation_distance(mu, pi);
    const auto tv = total_variation(mu, pi);
    REQUIRE(sep >= tv);
    REQUIRE(sep >= 0);
    REQUIRE(sep <= 1);
    // Zero exactly at equality; one exactly when mu misses a state.
    REQUIRE((sep == 0) == (mu == pi));
    const bool misses = std::any_of(mu.weights().begin(), mu.weights().end(), [](const Rational& w) { return w == 0; });
    REQUIRE((sep == 1) == misses);
  }
}

TEST_CASE("property: push_forward is linear") {
  std::mt19937_64 rng(7);
  const Statistic f = [](State s) -> std::optional<State> { return s % 3; };
  for (int trial = 0; trial < 200; ++trial) {
    const auto mu = random_distribution(rng, 6, true);
    const auto nu = random_distribution(rng, 6, true);
    const Rational lambda = q(1 + trial % 7, 8);
    std::vector<State> support{0, 1, 2, 3, 4, 5};
    std::vector<Rational> mix;
    for (State s : support) mix.push_back(lambda * mu.weight_of(s) + (1 - lambda) * nu.weight_of(s));
    const auto lhs = push_forward(Distribution(support, mix), f);
    const auto pm = push_forward(mu, f), pn = push_forward(nu, f);
    for (State v = 0; v < 3; ++v) REQUIRE(lhs.weight_of(v) == lambda * pm.weight_of(v) + (1 - lambda) * pn.weight_of(v));
  }
}

TEST_CASE("property: evolve composes") {
  const auto k = shuffle::walk1_kernel(4);
  const auto mu = shuffle::point_mass_deck(shuffle::Deck::from_order({2, 4, 1, 3}));
  for (int s = 0; s <= 3; ++s) {
    for (int t = 0; t <= 3; ++t) CHECK(evolve(k, mu, s + t) == evolve(k, evolve(k, mu, s), t));
  }
}
