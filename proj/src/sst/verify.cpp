#include "mixscope/sst/verify.hpp"

#include <map>
#include <unordered_map>

#include "mixscope/dist/serialize.hpp"
#include "mixscope/error.hpp"

namespace mixscope::sst {

using shuffle::Deck;

namespace {

Distribution normalised(const std::vector<State>& order, const std::unordered_map<State, BigInt>& mass,
                        const BigInt& total) {
  std::vector<Rational> w;
  w.reserve(order.size());
  for (State v : order) {
    auto it = mass.find(v);
    w.push_back(it == mass.end() ? Rational(0) : make_rational(it->second, total));
  }
  return Distribution(order, std::move(w));
}

void add_value(std::vector<State>& order, std::unordered_map<State, BigInt>& mass, State v, const BigInt& amount) {
  auto [it, inserted] = mass.emplace(v, amount);
  if (inserted) {
    order.push_back(v);
  } else {
    it->second += amount;
  }
}

}  // namespace

ConditionalLaw conditional_statistic_distribution(std::span<const Path> paths, const PredicateKind& predicate,
                                                  const shuffle::StatisticKind& statistic, std::span<const State> image) {
  if (paths.empty()) throw InvalidArgument("conditional_statistic_distribution: no paths");
  const int n = paths.front().start.size();
  shuffle::validate(statistic, n);
  // Common denominator of all path weights.
  BigInt den = 1;
  for (const auto& p : paths) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.weight.get_den_mpz_t());

  std::vector<State> order(image.begin(), image.end());
  std::unordered_map<State, BigInt> mass;
  for (State v : order) mass.emplace(v, 0);
  BigInt satisfied = 0;
  BigInt all = 0;
  std::vector<Deck> decks;
  std::optional<shuffle::StringAssignment> strings;
  for (const auto& p : paths) {
    const BigInt numerator = p.weight.get_num() * (den / p.weight.get_den());
    all += numerator;
    const int t = p.strings ? p.strings->bits() : static_cast<int>(p.moves.size());
    const auto prefix = prefix_of(p, t, decks, strings);
    const State v = shuffle::evaluate_statistic(statistic, p.end.order());
    if (evaluate_predicate(predicate, prefix)) {
      satisfied += numerator;
      add_value(order, mass, v, numerator);
    } else {
      add_value(order, mass, v, 0);
    }
  }
  if (all != den) throw InvalidArgument("conditional_statistic_distribution: path weights do not sum to 1");
  if (satisfied == 0) throw DomainError("predicate never satisfied");
  return {make_rational(satisfied, den), normalised(order, mass, satisfied)};
}

SSTReport check_strong_stationarity(shuffle::Chain chain, int n, int t, const PredicateKind& predicate,
                                    const shuffle::StatisticKind& statistic, std::optional<Deck> start,
                                    std::uint64_t budget) {
  validate(predicate, chain, n);
  shuffle::validate(statistic, n);
  const Deck from = start ? *start : Deck::identity(n);
  if (from.size() != n) throw InvalidArgument("check_strong_stationarity: start deck has the wrong size");

  SSTReport r;
  r.chain = chain;
  r.n = n;
  r.t = t;
  r.predicate = predicate_name(predicate);
  r.statistic = shuffle::statistic_name(statistic);
  r.target = shuffle::stationary_statistic_distribution(n, statistic);

  PathEnumerator e(chain, t, from, budget);
  r.paths = e.leaf_count();

  std::vector<State> order(r.target.support().begin(), r.target.support().end());
  std::unordered_map<State, BigInt> cond_mass;
  std::unordered_map<State, BigInt> all_mass;
  for (State v : order) {
    cond_mass.emplace(v, 0);
    all_mass.emplace(v, 0);
  }
  std::vector<State> all_order = order;
  std::uint64_t satisfied = 0;

  // holds[d] = predicate at depth d on the current branch; seen_true[d] = it
  // held at some depth <= d.
  std::vector<char> seen_true(static_cast<std::size_t>(t) + 1, 0);
  bool stable = true;
  bool leaf_holds = false;
  e.run(
      [&](const PathPrefix& prefix) {
        const auto d = static_cast<std::size_t>(prefix.steps());
        const bool now = evaluate_predicate(predicate, prefix);
        const bool before = d > 0 && seen_true[d - 1];
        if (before && !now) stable = false;
        seen_true[d] = before || now;
        leaf_holds = now;
      },
      [&](const PathPrefix&, const Deck& end, std::uint64_t numerator) {
        const State v = shuffle::evaluate_statistic(statistic, end.order());
        const BigInt amount(static_cast<unsigned long>(numerator));
        add_value(all_order, all_mass, v, amount);
        if (leaf_holds) {
          satisfied += numerator;
          add_value(order, cond_mass, v, amount);
        }
      });

  if (order.size() != r.target.size() || all_order.size() != r.target.size()) {
    throw std::logic_error("statistic value outside its stationary image");
  }
  const BigInt den(static_cast<unsigned long>(e.denominator()));
  r.unconditional = normalised(all_order, all_mass, den);
  r.unconditional_separation = separation_distance(r.unconditional, r.target);
  if (satisfied == 0) throw DomainError("predicate never satisfied");
  r.q = make_rational(BigInt(static_cast<unsigned long>(satisfied)), den);
  r.conditional = normalised(order, cond_mass, BigInt(static_cast<unsigned long>(satisfied)));
  r.predicate_stable = stable;
  r.max_pointwise_deviation = max_pointwise_deviation(r.conditional, r.target);
  r.is_strongly_stationary = r.max_pointwise_deviation == 0;
  if (r.is_strongly_stationary) r.sep_bound = sst_bound(r.q);
  for (State v : order) {
    if (r.q * r.conditional.weight_of(v) > r.unconditional.weight_of(v)) r.premise_holds = false;
  }
  return r;
}

nlohmann::json labelled(const Distribution& d, const shuffle::StatisticKind& kind, int n) {
  nlohmann::json j = to_json(d);
  nlohmann::json values = nlohmann::json::array();
  for (State s : d.support()) values.push_back(shuffle::describe_value(kind, n, s));
  j["values"] = std::move(values);
  return j;
}

nlohmann::json to_json(const SSTReport& r) {
  const auto kind = shuffle::parse_statistic(r.statistic);
  nlohmann::json j = {
      {"chain", shuffle::chain_name(r.chain)},
      {"n", r.n},
      {"t", r.t},
      {"predicate", r.predicate},
      {"statistic", r.statistic},
      {"mode", "exact"},
      {"paths", r.paths},
      {"q", to_string(r.q)},
      {"conditional", labelled(r.conditional, kind, r.n)},
      {"target", labelled(r.target, kind, r.n)},
      {"unconditional", labelled(r.unconditional, kind, r.n)},
      {"is_strongly_stationary", r.is_strongly_stationary},
      {"max_pointwise_deviation", to_string(r.max_pointwise_deviation)},
      {"predicate_stable", r.predicate_stable},
      {"unconditional_separation", to_string(r.unconditional_separation)},
      {"premise_holds", r.premise_holds},
  };
  j["sep_bound"] = r.sep_bound ? nlohmann::json(to_string(*r.sep_bound)) : nlohmann::json(nullptr);
  return j;
}

}  // namespace mixscope::sst
