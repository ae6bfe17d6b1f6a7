#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mixscope::cli {

inline constexpr const char* kArtifactVersion = "mixscope 0.1.0";

enum class ExperimentKind { stat_mix, sst_check, cycle, decompose, counterexample };
enum class OutputFormat { json, csv };

std::string_view kind_name(ExperimentKind k);
ExperimentKind parse_kind(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::stat_mix;
  // Card chains.
  std::string chain = "rtt";
  int n = 0;
  int t = 0;
  std::string statistic = "top_card";
  std::string predicate = "always";
  std::optional<std::string> start;  // deck as a JSON array, default identity
  // Cycle.
  std::string coloring;
  int x0 = 0;
  long horizon = 200;
  std::optional<std::string> sets;  // JSON list of vertex lists overriding the decomposition
  // Mode.
  bool monte_carlo = false;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 10'000'000;
  // Output.
  OutputFormat format = OutputFormat::json;
  bool float_values = false;
};

using CsvTable = std::vector<std::vector<std::string>>;  // first row is the header

struct Report {
  nlohmann::json body;  // config echo, version and results
  CsvTable table;
};

/// Throws InvalidArgument for a bad configuration and CapacityError when the
/// request exceeds an enumeration budget.
void validate(const ExperimentConfig& config);
Report run_experiment(const ExperimentConfig& config);

nlohmann::json config_json(const ExperimentConfig& config);

/// Replaces every "num/den" string by its double value.
nlohmann::json float_view(const nlohmann::json& j);

std::string render_csv(const CsvTable& table);
std::string render(const Report& report, OutputFormat format);

}  // namespace mixscope::cli
