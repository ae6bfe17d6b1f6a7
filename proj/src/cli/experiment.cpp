#include "mixscope/cli/experiment.hpp"

#include <regex>
#include <sstream>

#include "mixscope/cycle/bounds.hpp"
#include "mixscope/cycle/coverage.hpp"
#include "mixscope/cycle/decomposition.hpp"
#include "mixscope/dist/kernel.hpp"
#include "mixscope/dist/serialize.hpp"
#include "mixscope/error.hpp"
#include "mixscope/shuffle/statistic.hpp"
#include "mixscope/shuffle/walks.hpp"
#include "mixscope/sst/monte_carlo.hpp"
#include "mixscope/sst/oracles.hpp"
#include "mixscope/sst/verify.hpp"

namespace mixscope::cli {

using nlohmann::json;

std::string_view kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::stat_mix: return "stat-mix";
    case ExperimentKind::sst_check: return "sst-check";
    case ExperimentKind::cycle: return "cycle";
    case ExperimentKind::decompose: return "decompose";
    case ExperimentKind::counterexample: return "counterexample";
  }
  return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
  for (auto k : {ExperimentKind::stat_mix, ExperimentKind::sst_check, ExperimentKind::cycle,
                 ExperimentKind::decompose, ExperimentKind::counterexample}) {
    if (kind_name(k) == name) return k;
  }
  throw InvalidArgument("unknown experiment '" + std::string(name) + "'");
}

namespace {

constexpr int kMaxCycle = 64;

std::string str(const Rational& q) { return to_string(q); }

shuffle::Deck start_deck(const ExperimentConfig& cfg) {
  if (!cfg.start) return shuffle::Deck::identity(cfg.n);
  json j;
  try {
    j = json::parse(*cfg.start);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("--start: ") + e.what());
  }
  auto d = shuffle::deck_from_json(j);
  if (d.size() != cfg.n) throw InvalidArgument("--start: deck size differs from --n");
  return d;
}

cycle::Coloring coloring_of(const ExperimentConfig& cfg) {
  if (cfg.coloring.empty()) throw InvalidArgument("--coloring is required");
  auto c = cfg.coloring.front() == '[' ? cycle::Coloring::from_json(json::parse(cfg.coloring))
                                       : cycle::Coloring::parse(cfg.coloring);
  if (c.size() > kMaxCycle) throw CapacityError("cycle larger than " + std::to_string(kMaxCycle) + " vertices");
  return c;
}

std::optional<std::vector<cycle::AlternatingSet>> supplied_sets(const ExperimentConfig& cfg,
                                                                const cycle::Coloring& c) {
  if (!cfg.sets) return std::nullopt;
  json j;
  try {
    j = json::parse(*cfg.sets);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("--sets: ") + e.what());
  }
  auto sets = cycle::sets_from_json(j);
  if (auto why = cycle::partition_problem(c, sets); !why.empty()) throw InvalidArgument("--sets: " + why);
  return sets;
}

Report stat_mix(const ExperimentConfig& cfg) {
  if (cfg.monte_carlo) throw InvalidArgument("stat-mix runs in exact mode only");
  const auto chain = shuffle::parse_chain(cfg.chain);
  const auto kind = shuffle::parse_statistic(cfg.statistic);
  shuffle::validate(kind, cfg.n);
  if (cfg.t < 0) throw InvalidArgument("--t must be >= 0");
  const auto kernel = shuffle::chain_kernel(chain, cfg.n);
  const auto start = start_deck(cfg);
  const auto target = shuffle::stationary_statistic_distribution(cfg.n, kind);
  const auto f = shuffle::rank_statistic(kind, cfg.n);

  auto v = dense_weights(kernel, shuffle::point_mass_deck(start));
  json series = json::array();
  Report rep;
  rep.table.push_back({"t", "separation", "total_variation"});
  Distribution law;
  for (int s = 0; s <= cfg.t; ++s) {
    if (s > 0) v = kernel.step(v);
    law = push_forward(Distribution(kernel.states(), v), f, target.support());
    const auto sep = separation_distance(law, target);
    const auto tv = total_variation(law, target);
    series.push_back({{"t", s}, {"separation", str(sep)}, {"total_variation", str(tv)}});
    rep.table.push_back({std::to_string(s), str(sep), str(tv)});
  }
  rep.body["results"] = {{"chain", shuffle::chain_name(chain)},
                         {"statistic", shuffle::statistic_name(kind)},
                         {"start", shuffle::to_json(start)},
                         {"series", series},
                         {"target", sst::labelled(target, kind, cfg.n)},
                         {"final", sst::labelled(law, kind, cfg.n)}};
  return rep;
}

Report sst_check(const ExperimentConfig& cfg) {
  const auto chain = shuffle::parse_chain(cfg.chain);
  const auto kind = shuffle::parse_statistic(cfg.statistic);
  const auto pred = sst::parse_predicate(cfg.predicate);
  Report rep;
  if (cfg.monte_carlo) {
    if (cfg.start) throw InvalidArgument("--start is not supported in monte-carlo mode");
    const auto mc = sst::sample_strong_stationarity(chain, cfg.n, cfg.t, pred, kind, cfg.samples, *cfg.seed);
    rep.body["results"] = sst::to_json(mc);
    rep.body["results"]["certified"] = false;
    rep.table.push_back({"value", "label", "count", "estimate", "low", "high"});
    for (const auto& e : mc.conditional) {
      rep.table.push_back({std::to_string(e.value), shuffle::describe_value(kind, cfg.n, e.value).dump(),
                           std::to_string(e.count), std::to_string(e.probability.estimate),
                           std::to_string(e.probability.low), std::to_string(e.probability.high)});
    }
    return rep;
  }
  const auto r = sst::check_strong_stationarity(chain, cfg.n, cfg.t, pred, kind,
                                                cfg.start ? std::optional(start_deck(cfg)) : std::nullopt,
                                                cfg.budget);
  rep.body["results"] = sst::to_json(r);
  rep.body["results"]["certified"] = r.is_strongly_stationary;
  rep.table.push_back({"value", "label", "conditional", "target", "unconditional"});
  for (State s : r.target.support()) {
    rep.table.push_back({std::to_string(s), shuffle::describe_value(kind, cfg.n, s).dump(),
                         str(r.conditional.weight_of(s)), str(r.target.weight_of(s)),
                         str(r.unconditional.weight_of(s))});
  }
  return rep;
}

json chebyshev_checks(const cycle::Coloring& c, int x0, int k) {
  json out = json::array();
  for (double cc : {1.5, 2.0, 3.0}) {
    const long steps = cycle::chebyshev_steps(k, cc);
    const auto sep = cycle::exact_color_separation(c, x0, steps);
    const Rational guarantee = Rational(1) / (Rational(cc) * Rational(cc));
    out.push_back({{"c", cc},
                   {"time", cycle::chebyshev_time(k, cc)},
                   {"steps", steps},
                   {"separation", str(sep)},
                   {"guarantee", str(guarantee)},
                   {"holds", sep <= guarantee}});
  }
  return out;
}

Report cycle_report(const ExperimentConfig& cfg) {
  if (cfg.monte_carlo) throw InvalidArgument("cycle runs in exact mode only");
  const auto c = coloring_of(cfg);
  if (cfg.x0 < 0 || cfg.x0 >= c.size()) throw InvalidArgument("--x0 must be a vertex of the cycle");
  if (cfg.horizon < 0) throw InvalidArgument("--horizon must be >= 0");
  if (cfg.horizon > 100'000) throw CapacityError("--horizon above 100000");
  const auto d = cycle::alternating_decomposition(c);
  const auto sets = supplied_sets(cfg, c).value_or(d.sets);

  const auto sep = cycle::color_separation_series(c, cfg.x0, cfg.horizon);
  const auto cov = cycle::coverage_time_tail(c, cfg.x0, cfg.horizon, sets);
  const auto disp = cycle::displacement_tail(c, cfg.x0, cfg.horizon);
  const auto vcount = cycle::vertex_count_tail(c, cfg.x0, cfg.horizon);

  Report rep;
  rep.table.push_back({"t", "separation", "coverage_tail", "displacement_tail", "vertex_count_tail", "bound_ok"});
  json series = json::array();
  std::optional<long> first_violation;
  for (long s = 0; s <= cfg.horizon; ++s) {
    const auto i = static_cast<std::size_t>(s);
    const bool ok = sep[i] <= cov[i];
    if (!ok && !first_violation) first_violation = s;
    series.push_back({{"t", s},
                      {"separation", str(sep[i])},
                      {"coverage_tail", str(cov[i])},
                      {"displacement_tail", str(disp[i])},
                      {"vertex_count_tail", str(vcount[i])},
                      {"bound_ok", ok}});
    rep.table.push_back({std::to_string(s), str(sep[i]), str(cov[i]), str(disp[i]), str(vcount[i]),
                         ok ? "true" : "false"});
  }
  json set_json = json::array();
  for (const auto& a : sets) {
    auto j = cycle::to_json(a, c.size());
    j["evenly_spaced_midpoints"] = cycle::evenly_spaced_midpoints(a, c.size());
    set_json.push_back(j);
  }
  const auto moments = cycle::gambler_moments(d.k);
  rep.body["results"] = {
      {"coloring", c.to_string()},
      {"x0", cfg.x0},
      {"horizon", cfg.horizon},
      {"k", d.k},
      {"sets_source", cfg.sets ? "supplied" : (d.source == cycle::DecompositionSource::formula ? "formula" : "repaired")},
      {"sets", set_json},
      {"series", series},
      {"coverage_bound_holds", !first_violation},
      {"coverage_first_violation", first_violation ? json(*first_violation) : json(nullptr)},
      {"gambler_moments", {{"mean", str(moments.mean)}, {"variance", str(moments.variance)}}},
      {"chebyshev", chebyshev_checks(c, cfg.x0, d.k)},
      {"red_dominance", cycle::to_json(cycle::check_red_dominance(c, cfg.x0, cfg.horizon, sets))},
  };
  return rep;
}

Report decompose(const ExperimentConfig& cfg) {
  const auto c = coloring_of(cfg);
  const auto formula = cycle::formula_decomposition(c);
  const auto d = cycle::alternating_decomposition(c);
  const int limit = 2 * d.k - 1;

  auto describe = [&](const std::vector<cycle::AlternatingSet>& sets) {
    json sj = json::array();
    bool gaps_ok = true;
    for (const auto& a : sets) {
      auto j = cycle::to_json(a, c.size());
      j["evenly_spaced_midpoints"] = cycle::evenly_spaced_midpoints(a, c.size());
      gaps_ok = gaps_ok && cycle::max_gap(a, c.size()) <= limit;
      sj.push_back(j);
    }
    const auto why = cycle::partition_problem(c, sets);
    return json{{"sets", sj},
                {"set_count", sets.size()},
                {"partition_ok", why.empty()},
                {"partition_problem", why},
                {"gaps_within_limit", gaps_ok}};
  };

  Report rep;
  rep.body["results"] = {{"coloring", c.to_string()},
                         {"k", d.k},
                         {"start", d.start},
                         {"gap_limit", limit},
                         {"source", d.source == cycle::DecompositionSource::formula ? "formula" : "repaired"},
                         {"decomposition", describe(d.sets)},
                         {"formula", describe(formula.sets)}};
  if (auto sets = supplied_sets(cfg, c)) rep.body["results"]["supplied"] = describe(*sets);

  rep.table.push_back({"set", "member", "color"});
  for (std::size_t s = 0; s < d.sets.size(); ++s) {
    for (int v : d.sets[s].members) {
      rep.table.push_back({std::to_string(s), std::to_string(v), c.is_red(v) ? "R" : "B"});
    }
  }
  return rep;
}

// q written over a chosen denominator when that is exact, reduced otherwise.
std::string over(const Rational& q, const BigInt& den) {
  Rational scaled = q * den;
  if (scaled.get_den() != 1) return str(q);
  return scaled.get_num().get_str() + "/" + den.get_str();
}

Report counterexample(const ExperimentConfig& cfg) {
  const int n = cfg.n == 0 ? 52 : cfg.n;
  const int t = cfg.t;
  if (n < 2) throw InvalidArgument("--n must be >= 2");
  if (t < 0 || t > 60) throw InvalidArgument("--t must lie in [0, 60]");
  const BigInt two_t = pow_int(2, static_cast<unsigned long>(t));

  const auto bottom = sst::walk1_position_distribution(n, t, n);
  const Rational p_bottom_on_top = bottom.weight_of(1);
  const Rational lower = 1 - Rational(n) * p_bottom_on_top;
  const BigInt ballot = sst::count_nonnegative_paths(t);
  const Rational ballot_share = make_rational(ballot, two_t);
  // Estimate from the ballot argument: (2^t - ballot) / (2^t n).
  const Rational ballot_estimate = (1 - ballot_share) / n;

  // Exact top-card separation from one position DP per starting card.
  Rational top_sep = 0;
  int worst_card = 1;
  for (int card = 1; card <= n; ++card) {
    const Rational gap = 1 - Rational(n) * sst::walk1_position_distribution(n, t, card).weight_of(1);
    if (gap > top_sep) {
      top_sep = gap;
      worst_card = card;
    }
  }
  const Rational naive = Rational(1, 1) / Rational(two_t);

  Report rep;
  rep.body["results"] = {
      {"chain", "walk1"},
      {"n", n},
      {"t", t},
      {"prob_bottom_card_on_top", over(p_bottom_on_top, two_t * n)},
      {"prob_bottom_card_on_top_reduced", str(p_bottom_on_top)},
      {"separation_lower_bound", over(lower, two_t)},
      {"separation_lower_bound_reduced", str(lower)},
      {"nonnegative_paths", ballot.get_str()},
      {"ballot_estimate", over(ballot_estimate, two_t * n)},
      {"ballot_estimate_exact", ballot_estimate == p_bottom_on_top},
      {"ballot_share", over(ballot_share, two_t)},
      {"lower_bound_at_least_ballot_share", lower >= ballot_share},
      {"top_card_separation", str(top_sep)},
      {"top_card_separation_worst_card", worst_card},
      {"naive_bound", over(naive, two_t)},
      {"naive_bound_refuted", top_sep > naive},
  };
  rep.table = {{"quantity", "value"},
               {"prob_bottom_card_on_top", over(p_bottom_on_top, two_t * n)},
               {"separation_lower_bound", over(lower, two_t)},
               {"nonnegative_paths", ballot.get_str()},
               {"ballot_estimate", over(ballot_estimate, two_t * n)},
               {"ballot_share", over(ballot_share, two_t)},
               {"top_card_separation", str(top_sep)},
               {"naive_bound", over(naive, two_t)}};
  return rep;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.monte_carlo) {
    if (!cfg.seed) throw InvalidArgument("monte-carlo mode requires --seed");
    if (cfg.samples == 0) throw InvalidArgument("monte-carlo mode requires --samples > 0");
  }
  if (cfg.budget == 0) throw InvalidArgument("budget must be positive");
}

json config_json(const ExperimentConfig& cfg) {
  json j{{"experiment", kind_name(cfg.kind)},
         {"mode", cfg.monte_carlo ? "monte-carlo" : "exact"},
         {"format", cfg.format == OutputFormat::json ? "json" : "csv"},
         {"budget", cfg.budget}};
  switch (cfg.kind) {
    case ExperimentKind::stat_mix:
    case ExperimentKind::sst_check:
      j["chain"] = cfg.chain;
      j["n"] = cfg.n;
      j["t"] = cfg.t;
      j["statistic"] = cfg.statistic;
      if (cfg.kind == ExperimentKind::sst_check) j["predicate"] = cfg.predicate;
      j["start"] = cfg.start ? json::parse(*cfg.start) : json(nullptr);
      break;
    case ExperimentKind::cycle:
      j["coloring"] = cfg.coloring;
      j["x0"] = cfg.x0;
      j["horizon"] = cfg.horizon;
      j["sets"] = cfg.sets ? json::parse(*cfg.sets) : json(nullptr);
      break;
    case ExperimentKind::decompose:
      j["coloring"] = cfg.coloring;
      j["sets"] = cfg.sets ? json::parse(*cfg.sets) : json(nullptr);
      break;
    case ExperimentKind::counterexample:
      j["n"] = cfg.n == 0 ? 52 : cfg.n;
      j["t"] = cfg.t;
      break;
  }
  if (cfg.monte_carlo) {
    j["samples"] = cfg.samples;
    j["seed"] = *cfg.seed;
  }
  return j;
}

Report run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  Report rep;
  switch (cfg.kind) {
    case ExperimentKind::stat_mix: rep = stat_mix(cfg); break;
    case ExperimentKind::sst_check: rep = sst_check(cfg); break;
    case ExperimentKind::cycle: rep = cycle_report(cfg); break;
    case ExperimentKind::decompose: rep = decompose(cfg); break;
    case ExperimentKind::counterexample: rep = counterexample(cfg); break;
  }
  rep.body["version"] = kArtifactVersion;
  rep.body["config"] = config_json(cfg);
  if (cfg.float_values) {
    rep.body = float_view(rep.body);
    for (auto& row : rep.table) {
      for (auto& cell : row) {
        const auto f = float_view(json(cell));
        if (f.is_number()) cell = f.dump();
      }
    }
  }
  return rep;
}

json float_view(const json& j) {
  static const std::regex rational(R"(-?[0-9]+/[0-9]+)");
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (std::regex_match(s, rational)) return to_double(parse_rational(s));
    return j;
  }
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = float_view(*it);
    return out;
  }
  return j;
}

std::string render_csv(const CsvTable& table) {
  std::ostringstream os;
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      const auto& cell = row[i];
      if (cell.find_first_of(",\"\n") != std::string::npos) {
        os << '"';
        for (char ch : cell) os << (ch == '"' ? "\"\"" : std::string(1, ch));
        os << '"';
      } else {
        os << cell;
      }
    }
    os << '\n';
  }
  return os.str();
}

std::string render(const Report& report, OutputFormat format) {
  if (format == OutputFormat::csv) return render_csv(report.table);
  return report.body.dump(2) + "\n";
}

}  // namespace mixscope::cli
