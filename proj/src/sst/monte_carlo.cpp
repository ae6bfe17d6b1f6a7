#include "mixscope/sst/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "mixscope/error.hpp"
#include "mixscope/sst/verify.hpp"

namespace mixscope::sst {

using shuffle::Chain;
using shuffle::Deck;
using shuffle::Move;

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials) {
  if (hits > trials) throw InvalidArgument("wilson_interval: more hits than trials");
  if (trials == 0) return {0, 0, 1};
  constexpr double z = 1.96;
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / nn;
  const double denom = 1 + z * z / nn;
  const double centre = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {p, std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

MonteCarloReport sample_strong_stationarity(Chain chain, int n, int t, const PredicateKind& predicate,
                                            const shuffle::StatisticKind& statistic, std::uint64_t samples,
                                            std::uint64_t seed) {
  validate(predicate, chain, n);
  shuffle::validate(statistic, n);
  if (t < 0) throw InvalidArgument("sampling: negative horizon");
  if (samples == 0) throw InvalidArgument("sampling: need at least one sample");
  if (chain == Chain::inverse_riffle && t > 63) throw CapacityError("sampling: riffle strings limited to 63 bits");

  MonteCarloReport r;
  r.chain = chain;
  r.n = n;
  r.t = t;
  r.predicate = predicate_name(predicate);
  r.statistic = shuffle::statistic_name(statistic);
  r.samples = samples;
  r.seed = seed;
  if (n <= shuffle::kMaxDenseDeck) r.target = shuffle::stationary_statistic_distribution(n, statistic);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> card(1, n);
  std::bernoulli_distribution coin(0.5);
  std::map<State, std::uint64_t> counts;
  const Deck start = Deck::identity(n);
  std::vector<Move> moves;
  for (std::uint64_t i = 0; i < samples; ++i) {
    moves.clear();
    std::vector<Card> order(start.order().begin(), start.order().end());
    std::optional<shuffle::StringAssignment> strings;
    if (chain == Chain::inverse_riffle) {
      std::vector<std::uint64_t> keys(static_cast<std::size_t>(n), 0);
      for (int s = 0; s < t; ++s) {
        for (auto& k : keys) k |= static_cast<std::uint64_t>(coin(rng)) << s;
      }
      strings = shuffle::StringAssignment::from_keys(t, keys);
      std::stable_sort(order.begin(), order.end(), [&](Card a, Card b) { return strings->key(a) < strings->key(b); });
    } else {
      for (int s = 0; s < t; ++s) {
        if (chain == Chain::walk1 && coin(rng)) {
          moves.push_back(shuffle::TopToBottom{});
          std::rotate(order.begin(), order.begin() + 1, order.end());
        } else {
          const Card c = card(rng);
          moves.push_back(shuffle::ToTop{c});
          auto it = std::find(order.begin(), order.end(), c);
          std::rotate(order.begin(), it, it + 1);
        }
      }
    }
    const PathPrefix prefix{n, moves, {}, strings ? &*strings : nullptr};
    if (evaluate_predicate(predicate, prefix)) {
      ++r.satisfied;
      ++counts[shuffle::evaluate_statistic(statistic, order)];
    }
  }
  r.q = wilson_interval(r.satisfied, samples);
  for (const auto& [v, c] : counts) r.conditional.push_back({v, c, wilson_interval(c, r.satisfied)});
  return r;
}

nlohmann::json to_json(const MonteCarloReport& r) {
  const auto kind = shuffle::parse_statistic(r.statistic);
  auto interval = [](const Interval& iv) {
    return nlohmann::json{{"estimate", iv.estimate}, {"low", iv.low}, {"high", iv.high}};
  };
  nlohmann::json cond = nlohmann::json::array();
  for (const auto& e : r.conditional) {
    cond.push_back({{"value", shuffle::describe_value(kind, r.n, e.value)},
                    {"code", e.value},
                    {"count", e.count},
                    {"probability", interval(e.probability)}});
  }
  nlohmann::json j = {
      {"chain", shuffle::chain_name(r.chain)},
      {"n", r.n},
      {"t", r.t},
      {"predicate", r.predicate},
      {"statistic", r.statistic},
      {"mode", "monte-carlo"},
      {"samples", r.samples},
      {"seed", r.seed},
      {"satisfied", r.satisfied},
      {"q", interval(r.q)},
      {"conditional", std::move(cond)},
      {"certified", false},
  };
  j["target"] = r.target ? labelled(*r.target, kind, r.n) : nlohmann::json(nullptr);
  return j;
}

}  // namespace mixscope::sst
