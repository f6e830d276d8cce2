#pragma once

// The simulate / analyze / report commands behind the command-line tool.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clickcorr/criteria.hpp"
#include "clickcorr/io.hpp"
#include "clickcorr/model.hpp"
#include "clickcorr/simulator.hpp"

namespace clickcorr {

/// Process exit codes.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumerical = 3,
};

/// Maps a library exception onto the exit code of the command-line tool.
int exit_code_for(const std::exception& e);

struct SimulateOptions {
  StateSpec state = CoherentState{};
  DetectorConfig detector_a{8, 1.0, 0.0};
  DetectorConfig detector_b{8, 1.0, 0.0};
  std::uint64_t shots = 1000000;
  /// Drawn from system entropy when absent; the seed used is recorded.
  std::optional<std::uint64_t> seed;
  /// Shot-by-shot detector Monte Carlo instead of multinomial sampling of the exact distribution.
  bool physical = false;
  std::filesystem::path counts_out;
  /// Defaults: <counts stem>.exact.csv and <counts>.meta.json next to the counts file.
  std::optional<std::filesystem::path> exact_out;
  std::optional<std::filesystem::path> meta_out;
  unsigned threads = 0;
};

struct SimulateResult {
  CountMatrix counts;
  JointClickDistribution exact;
  nlohmann::json metadata;
  std::filesystem::path counts_path;
  std::filesystem::path exact_path;
  std::filesystem::path meta_path;
};

SimulateResult run_simulate(const SimulateOptions& opts);

std::filesystem::path default_exact_path(const std::filesystem::path& counts);
std::filesystem::path default_meta_path(const std::filesystem::path& counts);

struct AnalyzeOptions {
  std::filesystem::path counts_in;
  /// Simulation sidecar whose contents become the report's `parameters`.
  /// When absent, <counts>.meta.json is used if it exists.
  std::optional<std::filesystem::path> meta_in;
  std::optional<std::filesystem::path> report_out;
  std::optional<std::filesystem::path> plot_out;
  int replicates = 1000;
  std::optional<std::uint64_t> seed;
  double threshold = kDefaultSignificance;
  /// Defaults to the counts file stem.
  std::optional<std::string> label;
  unsigned threads = 0;
};

struct AnalyzeResult {
  CriteriaReport report;
  nlohmann::json json;
};

AnalyzeResult run_analyze(const AnalyzeOptions& opts);

struct ReportOptions {
  std::vector<std::filesystem::path> reports;
  TableFormat format = TableFormat::Text;
};

std::string run_report(const ReportOptions& opts);

}  // namespace clickcorr
