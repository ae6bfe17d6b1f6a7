#include <doctest.h>

#include <map>
#include <set>

#include "mixscope/dist/kernel.hpp"
#include "mixscope/shuffle/riffle.hpp"
#include "mixscope/shuffle/statistic.hpp"
#include "mixscope/shuffle/walks.hpp"
#include "mixscope/sst/monte_carlo.hpp"
#include "mixscope/sst/oracles.hpp"
#include "mixscope/sst/paths.hpp"
#include "mixscope/sst/predicate.hpp"
#include "mixscope/sst/verify.hpp"

using namespace mixscope;
using namespace mixscope::shuffle;
using namespace mixscope::sst;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

Rational inverse_power(long n, long t) { return Rational(1) / Rational(pow_int(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t))); }

// Statistic law at time t by dense evolution from the identity.
Distribution evolved_statistic(Chain chain, int n, int t, const StatisticKind& kind) {
  const auto k = chain_kernel(chain, n);
  const auto law = evolve(k, point_mass_deck(Deck::identity(n)), t);
  const auto target = stationary_statistic_distribution(n, kind);
  return push_forward(law, rank_statistic(kind, n), target.support());
}

// Pr(at least k distinct values among t draws from n), by listing all n^t sequences.
Rational brute_k_distinct(int n, int k, int t) {
  long total = 1;
  for (int i = 0; i < t; ++i) total *= n;
  long hits = 0;
  for (long code = 0; code < total; ++code) {
    std::set<long> seen;
    long c = code;
    for (int i = 0; i < t; ++i) {
      seen.insert(c % n);
      c /= n;
    }
    hits += static_cast<long>(seen.size()) >= k ? 1 : 0;
  }
  return q(hits, total);
}

long brute_nonnegative(int t) {
  long count = 0;
  for (long code = 0; code < (1L << t); ++code) {
    int h = 0;
    bool ok = true;
    for (int i = 0; i < t && ok; ++i) {
      h += (code >> i) & 1 ? 1 : -1;
      ok = h >= 0;
    }
    count += ok ? 1 : 0;
  }
  return count;
}

}  // namespace

TEST_CASE("enumerate_paths examples") {
  const auto rtt = enumerate_paths(Chain::random_to_top, 3, 2, Deck::identity(3));
  CHECK(rtt.size() == 9);
  for (const auto& p : rtt) CHECK(p.weight == q(1, 9));

  const auto w1 = enumerate_paths(Chain::walk1, 3, 2, Deck::identity(3));
  CHECK(w1.size() == 16);
  Rational total = 0;
  for (const auto& p : w1) {
    total += p.weight;
    Rational expected = 1;
    for (const auto& mv : p.moves) expected *= std::holds_alternative<ToTop>(mv) ? q(1, 6) : q(1, 2);
    CHECK(p.weight == expected);
  }
  CHECK(total == 1);

  const auto rif = enumerate_paths(Chain::inverse_riffle, 2, 1, Deck::identity(2));
  CHECK(rif.size() == 4);
  for (const auto& p : rif) {
    CHECK(p.weight == q(1, 4));
    REQUIRE(p.strings.has_value());
    CHECK(p.end == inverse_riffle_apply(p.start, *p.strings));
  }
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(PathEnumerator(Chain::random_to_top, 10, Deck::identity(5), 1000), CapacityError);
  CHECK_NOTHROW(PathEnumerator(Chain::random_to_top, 4, Deck::identity(5), 1000));
  const PathEnumerator e(Chain::walk1, 3, Deck::identity(4));
  CHECK(e.leaf_count() == 125);
  CHECK(e.denominator() == 512);
}

TEST_CASE("conditional law: random-to-top top two cards") {
  const auto paths = enumerate_paths(Chain::random_to_top, 3, 2, Deck::identity(3));
  const auto law = conditional_statistic_distribution(paths, KDistinctChosen{2}, TopKOrder{2});
  CHECK(law.q == q(2, 3));
  CHECK(law.conditional.size() == 6);
  for (auto w : law.conditional.weights()) CHECK(w == q(1, 6));
}

TEST_CASE("conditional law: q for two distinct cards is 1 - 1/n^(t-1)") {
  for (int n = 2; n <= 5; ++n) {
    for (int t = 1; t <= 4; ++t) {
      const auto paths = enumerate_paths(Chain::random_to_top, n, t, Deck::identity(n));
      if (t == 1) {
        CHECK_THROWS_AS(conditional_statistic_distribution(paths, KDistinctChosen{2}, TopCard{}), DomainError);
        continue;
      }
      const auto law = conditional_statistic_distribution(paths, KDistinctChosen{2}, TopCard{});
      CHECK(law.q == 1 - inverse_power(n, t - 1));
    }
  }
}

TEST_CASE("conditional law: walk1 any-to-top counterexample") {
  // Test-local enumeration of the 16 two-step paths with their weights.
  const auto start = Deck::identity(3);
  std::vector<std::pair<Move, Rational>> steps{{ToTop{1}, q(1, 6)}, {ToTop{2}, q(1, 6)}, {ToTop{3}, q(1, 6)},
                                               {TopToBottom{}, q(1, 2)}};
  std::map<Card, Rational> top;
  Rational mass = 0;
  for (const auto& [m1, w1] : steps) {
    for (const auto& [m2, w2] : steps) {
      if (!std::holds_alternative<ToTop>(m1) && !std::holds_alternative<ToTop>(m2)) continue;
      const auto end = apply_move(apply_move(start, m1), m2);
      top[end.top()] += w1 * w2;
      mass += w1 * w2;
    }
  }
  const auto paths = enumerate_paths(Chain::walk1, 3, 2, start);
  const auto law = conditional_statistic_distribution(paths, AnyToTopMove{}, TopCard{});
  CHECK(law.q == mass);
  CHECK(law.q == q(3, 4));
  for (Card c = 1; c <= 3; ++c) CHECK(law.conditional.weight_of(c) == top[c] / mass);
  CHECK(law.conditional.weight_of(1) == q(4, 9));
  CHECK(law.conditional.weight_of(2) == q(1, 3));
  CHECK(law.conditional.weight_of(3) == q(2, 9));
}

TEST_CASE("check_strong_stationarity examples") {
  const auto cert = check_strong_stationarity(Chain::random_to_top, 4, 3, KDistinctChosen{2}, TopKOrder{2});
  CHECK(cert.is_strongly_stationary);
  REQUIRE(cert.sep_bound.has_value());
  CHECK(*cert.sep_bound == q(1, 16));
  CHECK(cert.max_pointwise_deviation == 0);
  CHECK(cert.premise_holds);
  CHECK(cert.predicate_stable);
  CHECK(cert.unconditional_separation <= *cert.sep_bound);

  const auto ref = check_strong_stationarity(Chain::walk1, 3, 2, AnyToTopMove{}, TopCard{});
  CHECK_FALSE(ref.is_strongly_stationary);
  CHECK_FALSE(ref.sep_bound.has_value());
  CHECK(ref.predicate_stable);
  CHECK(ref.max_pointwise_deviation == q(1, 9));

  const auto above = check_strong_stationarity(Chain::random_to_top, 4, 3, CardChosen{1}, CardAbove{1});
  CHECK_FALSE(above.is_strongly_stationary);
  const std::vector<State> others{2, 3, 4};
  CHECK(restrict_to(above.conditional, others) == Distribution::uniform(others));
}

TEST_CASE("check_strong_stationarity: non-stopping condition is flagged unstable") {
  const auto r = check_strong_stationarity(Chain::random_to_top, 3, 3, ChosenMoreRecentlyThan{1, 1}, TopCard{});
  CHECK_FALSE(r.predicate_stable);
}

TEST_CASE("property: certified reports satisfy the premise") {
  for (int n = 3; n <= 5; ++n) {
    for (int t = 2; t <= 4; ++t) {
      const auto r = check_strong_stationarity(Chain::random_to_top, n, t, KDistinctChosen{2}, TopKOrder{2});
      REQUIRE(r.is_strongly_stationary);
      for (State s : r.target.support()) REQUIRE(r.q * r.conditional.weight_of(s) <= r.unconditional.weight_of(s));
      REQUIRE(r.unconditional_separation <= *r.sep_bound);
    }
  }
}

TEST_CASE("property: always-true conditioning equals evolve and push_forward") {
  for (auto chain : {Chain::random_to_top, Chain::walk1, Chain::inverse_riffle}) {
    for (int n = 2; n <= 4; ++n) {
      for (int t = 0; t <= 3; ++t) {
        for (const StatisticKind& kind : std::vector<StatisticKind>{TopCard{}, Parity{}, TopKOrder{n}}) {
          const auto paths = enumerate_paths(chain, n, t, Deck::identity(n));
          const auto target = stationary_statistic_distribution(n, kind);
          const auto law = conditional_statistic_distribution(paths, Always{}, kind, target.support());
          REQUIRE(law.q == 1);
          REQUIRE(law.conditional == evolved_statistic(chain, n, t, kind));
        }
      }
    }
  }
}

TEST_CASE("prob_k_distinct") {
  CHECK(prob_k_distinct(4, 1, 3) == 1);
  CHECK(prob_k_distinct(5, 2, 3) == q(24, 25));
  CHECK(prob_k_distinct(3, 3, 3) == q(6, 27));
  CHECK(prob_k_distinct(3, 3, 2) == 0);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int t = 1; t <= 5; ++t) REQUIRE(prob_k_distinct(n, k, t) == brute_k_distinct(n, k, t));
    }
  }
  // Agrees with the enumerator's q.
  for (int n = 2; n <= 4; ++n) {
    for (int t = 1; t <= 4; ++t) {
      const auto paths = enumerate_paths(Chain::random_to_top, n, t, Deck::identity(n));
      for (int k = 1; k <= std::min(n, t); ++k) {
        REQUIRE(conditional_statistic_distribution(paths, KDistinctChosen{k}, TopCard{}).q == prob_k_distinct(n, k, t));
      }
    }
  }
}

TEST_CASE("prob_strings_distinct") {
  CHECK(prob_strings_distinct(1, 3) == 1);
  CHECK(prob_strings_distinct(2, 1) == q(1, 2));
  CHECK(prob_strings_distinct(3, 2) == q(3, 8));
  CHECK(prob_strings_distinct(5, 2) == 0);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 1; t <= 3; ++t) {
      Rational hits = 0;
      for (const auto& o : enumerate_riffle(n, t)) {
        std::set<std::uint64_t> keys;
        for (Card c = 1; c <= n; ++c) keys.insert(o.assignment.key(c));
        if (static_cast<int>(keys.size()) == n) hits += o.weight;
      }
      REQUIRE(prob_strings_distinct(n, t) == hits);
    }
  }
}

TEST_CASE("count_nonnegative_paths") {
  CHECK(count_nonnegative_paths(0) == 1);
  CHECK(count_nonnegative_paths(4) == 6);
  CHECK(count_nonnegative_paths(10) == 252);
  for (int t = 0; t <= 16; ++t) REQUIRE(count_nonnegative_paths(t) == brute_nonnegative(t));
}

TEST_CASE("walk1_position_distribution") {
  const auto d = walk1_position_distribution(3, 1, 3);
  CHECK(d.weight_of(1) == q(1, 6));
  CHECK(d.weight_of(2) == q(1, 2));
  CHECK(d.weight_of(3) == q(1, 3));
  CHECK_THROWS_AS(walk1_position_distribution(3, 1, 4), InvalidArgument);
  CHECK_THROWS_AS(walk1_position_distribution(3, 1, 0), InvalidArgument);

  // Matches the full-deck evolution for every starting position.
  for (int n = 2; n <= 6; ++n) {
    const auto k = walk1_kernel(n);
    for (int t = 0; t <= 3; ++t) {
      const auto law = evolve(k, point_mass_deck(Deck::identity(n)), t);
      for (Card c = 1; c <= n; ++c) {
        const auto full = push_forward(law, rank_statistic(PositionOf{c}, n));
        const auto single = walk1_position_distribution(n, t, c);
        for (int p = 1; p <= n; ++p) REQUIRE(full.weight_of(p) == single.weight_of(p));
      }
    }
  }
}

TEST_CASE("property: parity separation under random-to-top") {
  for (int n : {2, 4, 6}) CHECK(separation_distance(evolved_statistic(Chain::random_to_top, n, 1, Parity{}),
                                                    stationary_statistic_distribution(n, Parity{})) == 0);
  for (int n : {3, 5, 7}) {
    for (int t = 1; t <= 5; ++t) {
      const auto law = evolved_statistic(Chain::random_to_top, n, t, Parity{});
      REQUIRE(separation_distance(law, stationary_statistic_distribution(n, Parity{})) == inverse_power(n, t));
    }
  }
}

TEST_CASE("riffle conditions") {
  const auto top = check_strong_stationarity(Chain::inverse_riffle, 4, 2, RiffleFirstJStringsDistinct{1}, TopCard{});
  CHECK(top.is_strongly_stationary);
  const auto all = check_strong_stationarity(Chain::inverse_riffle, 4, 2, RiffleSetStringsDistinct{{1, 2, 3, 4}},
                                             TopKOrder{4});
  CHECK(all.is_strongly_stationary);
  CHECK(all.q == prob_strings_distinct(4, 2));
  const auto blocks = check_strong_stationarity(Chain::inverse_riffle, 4, 3, RiffleBlocksNonOverlapping{2},
                                                BlockSets{2});
  CHECK(blocks.is_strongly_stationary);
}

TEST_CASE("predicate names and validation") {
  for (const char* name : {"always", "k_distinct:2", "all_chosen", "card_chosen:1", "any_of_chosen:1,2",
                           "chosen_more_recently:1,1", "any_to_top", "riffle_first_distinct:1",
                           "riffle_set_distinct:1,2", "riffle_blocks_disjoint:2"}) {
    CHECK(predicate_name(parse_predicate(name)) == name);
  }
  CHECK_THROWS_AS(parse_predicate("sometimes"), InvalidArgument);
  CHECK_THROWS_AS(validate(PredicateKind{RiffleFirstJStringsDistinct{1}}, Chain::random_to_top, 4), InvalidArgument);
  CHECK_THROWS_AS(validate(PredicateKind{KDistinctChosen{1}}, Chain::inverse_riffle, 4), InvalidArgument);
  CHECK_THROWS_AS(validate(PredicateKind{KDistinctChosen{5}}, Chain::random_to_top, 4), InvalidArgument);
  CHECK_THROWS_AS(validate(PredicateKind{RiffleBlocksNonOverlapping{3}}, Chain::inverse_riffle, 4), InvalidArgument);
  CHECK_NOTHROW(validate(PredicateKind{Always{}}, Chain::inverse_riffle, 4));
}

TEST_CASE("report json uses rational strings") {
  const auto r = check_strong_stationarity(Chain::random_to_top, 4, 3, KDistinctChosen{2}, TopKOrder{2});
  const auto j = to_json(r);
  CHECK(j["q"] == "15/16");
  CHECK(j["sep_bound"] == "1/16");
  CHECK(j["chain"] == "rtt");
  CHECK(j["conditional"]["values"].size() == 12);
  const auto ref = to_json(check_strong_stationarity(Chain::walk1, 3, 2, AnyToTopMove{}, TopCard{}));
  CHECK(ref["sep_bound"].is_null());
  CHECK(ref["conditional"]["weights"] == nlohmann::json({"4/9", "1/3", "2/9"}));
}

TEST_CASE("monte carlo sampling") {
  const auto a = sample_strong_stationarity(Chain::random_to_top, 4, 3, KDistinctChosen{2}, TopKOrder{2}, 20000, 11);
  const auto b = sample_strong_stationarity(Chain::random_to_top, 4, 3, KDistinctChosen{2}, TopKOrder{2}, 20000, 11);
  CHECK(to_json(a) == to_json(b));
  CHECK(to_json(a)["mode"] == "monte-carlo");
  CHECK(a.q.low <= 15.0 / 16 + 1e-12);
  CHECK(a.q.high >= 15.0 / 16 - 1e-12);
  CHECK(a.conditional.size() == 12);
  int covering = 0;
  for (const auto& v : a.conditional) covering += (v.probability.low <= 1.0 / 12 && 1.0 / 12 <= v.probability.high) ? 1 : 0;
  CHECK(covering >= 10);

  const auto w = wilson_interval(0, 10);
  CHECK(w.low == doctest::Approx(0.0));
  CHECK(w.high > 0.0);
  CHECK_THROWS_AS(wilson_interval(1, 0), InvalidArgument);
  const auto empty = wilson_interval(0, 0);
  CHECK(empty.low == 0.0);
  CHECK(empty.high == 1.0);
}
