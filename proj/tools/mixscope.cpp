// mixscope: exact mixing and strong-stationary-time experiments.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixscope/cli/experiment.hpp"
#include "mixscope/error.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 2, kCapacity = 3, kInternal = 4 };

int fail(int code, const std::string& kind, const std::string& message) {
  nlohmann::json err{{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << err.dump() << '\n';
  return code;
}

// Write to a sibling temporary file, then rename over the target.
void write_atomically(const std::filesystem::path& target, const std::string& text) {
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << text;
    os.flush();
    if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, target);
}

std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("MIXSCOPE_BUDGET");
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used != std::string(raw).size() || v == 0) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw mixscope::InvalidArgument(std::string("MIXSCOPE_BUDGET is not a positive integer: ") + raw);
  }
}

}  // namespace

int main(int argc, char** argv) {
  using mixscope::cli::ExperimentConfig;
  using mixscope::cli::ExperimentKind;

  CLI::App app{"Exact separation-distance and strong-stationary-time experiments", "mixscope"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", mixscope::cli::kArtifactVersion);

  ExperimentConfig cfg;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  bool exact = false;
  bool timing = false;

  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out, "Write the report to this file instead of stdout");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for monte-carlo sampling");
  app.add_option("--samples", cfg.samples, "Monte-carlo sample count (switches to sampling mode)");
  app.add_flag("--exact", exact, "Exact enumeration (the default)");
  app.add_flag("--float", cfg.float_values, "Print rationals as doubles");
  app.add_flag("--timing", timing, "Add wall-clock duration to the report");

  auto* stat_mix = app.add_subcommand("stat-mix", "Separation and total variation of a statistic over time");
  auto* sst_check = app.add_subcommand("sst-check", "Check a path condition as a strong stationary time");
  auto* cycle = app.add_subcommand("cycle", "Colour mixing of the lazy walk on a two-coloured cycle");
  auto* decompose = app.add_subcommand("decompose", "Alternating-set decomposition of a coloured cycle");
  auto* counter = app.add_subcommand("counterexample", "Top-card counterexample for Walk 1");

  for (auto* sub : {stat_mix, sst_check}) {
    sub->add_option("--chain", cfg.chain, "rtt | walk1 | riffle")->check(CLI::IsMember({"rtt", "walk1", "riffle"}));
    sub->add_option("--n", cfg.n, "Deck size")->required();
    sub->add_option("--t", cfg.t, "Number of steps")->required();
    sub->add_option("--statistic", cfg.statistic, "Statistic, e.g. top_card, top_k_order:2, parity");
    sub->add_option("--start", cfg.start, "Starting deck as a JSON array (default identity)");
  }
  sst_check->add_option("--predicate", cfg.predicate, "Path condition, e.g. k_distinct:2, any_to_top");
  for (auto* sub : {cycle, decompose}) {
    sub->add_option("--coloring", cfg.coloring, "Colouring such as RRBRBB or a JSON array")->required();
    sub->add_option("--sets", cfg.sets, "Alternating sets as JSON, e.g. [[0,2,3,5],[1,4]]");
  }
  cycle->add_option("--x0", cfg.x0, "Starting vertex");
  cycle->add_option("--horizon", cfg.horizon, "Largest time reported");
  counter->add_option("--n", cfg.n, "Deck size (default 52)");
  counter->add_option("--t", cfg.t, "Number of steps")->default_val(10);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kUsage, "usage", e.what());
  }

  try {
    if (stat_mix->parsed()) cfg.kind = ExperimentKind::stat_mix;
    if (sst_check->parsed()) cfg.kind = ExperimentKind::sst_check;
    if (cycle->parsed()) cfg.kind = ExperimentKind::cycle;
    if (decompose->parsed()) cfg.kind = ExperimentKind::decompose;
    if (counter->parsed()) cfg.kind = ExperimentKind::counterexample;
    cfg.format = format == "csv" ? mixscope::cli::OutputFormat::csv : mixscope::cli::OutputFormat::json;
    cfg.monte_carlo = cfg.samples > 0;
    if (exact && cfg.monte_carlo) throw mixscope::InvalidArgument("--exact and --samples are mutually exclusive");
    if (seed_opt->count() > 0) cfg.seed = seed;
    cfg.budget = budget_from_env(cfg.budget);

    const auto started = std::chrono::steady_clock::now();
    auto report = mixscope::cli::run_experiment(cfg);
    if (timing) {
      const std::chrono::duration<double> took = std::chrono::steady_clock::now() - started;
      report.body["wall_clock_seconds"] = took.count();
    }
    const auto text = mixscope::cli::render(report, cfg.format);
    if (out.empty()) {
      std::cout << text;
    } else {
      write_atomically(out, text);
    }
    return kOk;
  } catch (const mixscope::InvalidArgument& e) {
    return fail(kUsage, "usage", e.what());
  } catch (const mixscope::DomainError& e) {
    return fail(kUsage, "domain", e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(kUsage, "usage", e.what());
  } catch (const mixscope::CapacityError& e) {
    return fail(kCapacity, "capacity", e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, "internal", e.what());
  }
}
