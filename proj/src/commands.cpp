#include "clickcorr/commands.hpp"

#include <fstream>

#include "clickcorr/random.hpp"
#include "clickcorr/uncertainty.hpp"

namespace clickcorr {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::ofstream open_for_writing(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

std::ifstream open_for_reading(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  return in;
}

json detector_json(const DetectorConfig& cfg) {
  return {{"bins", cfg.bins()},
          {"efficiency", cfg.efficiency()},
          {"dark_click", cfg.dark_click()},
          {"dark_rate", DetectorConfig::dark_rate_from_click_probability(cfg.dark_click())}};
}

json state_json(const StateSpec& spec) {
  return std::visit(
      [&spec](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        json j = {{"description", describe(spec)}};
        if constexpr (std::is_same_v<T, CoherentState>) {
          j["kind"] = "coherent";
          j["mean_a"] = s.mean_a;
          j["mean_b"] = s.mean_b;
        } else if constexpr (std::is_same_v<T, TwoModeSqueezedVacuum>) {
          j["kind"] = "tmsv";
          j["lambda"] = s.lambda;
          j["lambda2"] = s.lambda * s.lambda;
        } else if constexpr (std::is_same_v<T, SplitPhoton>) {
          j["kind"] = "split-photon";
          j["t"] = s.t;
          j["t2"] = s.t * s.t;
        } else {
          j["kind"] = "custom";
          j["max_a"] = s.distribution.max_a();
          j["max_b"] = s.distribution.max_b();
        }
        return j;
      },
      spec);
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvalidParameter*>(&e)) return kExitUsage;
  if (dynamic_cast<const DataError*>(&e)) return kExitData;
  // UndefinedStatistic, NumericalError and anything unexpected.
  return kExitNumerical;
}

fs::path default_exact_path(const fs::path& counts) {
  auto p = counts;
  p.replace_extension();
  p += ".exact.csv";
  return p;
}

fs::path default_meta_path(const fs::path& counts) {
  auto p = counts;
  p += ".meta.json";
  return p;
}

SimulateResult run_simulate(const SimulateOptions& opts) {
  if (opts.counts_out.empty()) throw InvalidParameter("an output path for the counts is required");
  if (opts.shots == 0) throw InvalidParameter("shots must be >= 1");
  const std::uint64_t seed = opts.seed.value_or(entropy_seed());

  const auto photons = build_photon_distribution(opts.state);
  auto exact = joint_click_distribution(photons, opts.detector_a, opts.detector_b);
  auto counts = opts.physical
                    ? sample_counts_physical(photons, opts.detector_a, opts.detector_b, opts.shots, seed,
                                             opts.threads)
                    : sample_counts(exact, opts.shots, seed, opts.threads);

  SimulateResult result{std::move(counts), std::move(exact), json::object(), opts.counts_out,
                        opts.exact_out.value_or(default_exact_path(opts.counts_out)),
                        opts.meta_out.value_or(default_meta_path(opts.counts_out))};
  result.metadata = {{"state", state_json(opts.state)},
                     {"detector_a", detector_json(opts.detector_a)},
                     {"detector_b", detector_json(opts.detector_b)},
                     {"shots", opts.shots},
                     {"seed", seed},
                     {"sampler", opts.physical ? "physical" : "multinomial"},
                     {"photon_truncation", {{"max_a", photons.max_a()}, {"max_b", photons.max_b()}}},
                     {"counts_file", result.counts_path.filename().string()},
                     {"exact_file", result.exact_path.filename().string()}};

  {
    auto out = open_for_writing(result.counts_path);
    write_counts_csv(out, result.counts);
  }
  {
    auto out = open_for_writing(result.exact_path);
    write_distribution_csv(out, result.exact);
  }
  {
    auto out = open_for_writing(result.meta_path);
    out << result.metadata.dump(2) << '\n';
  }
  return result;
}

AnalyzeResult run_analyze(const AnalyzeOptions& opts) {
  if (opts.counts_in.empty()) throw InvalidParameter("analyze requires an input counts file");
  auto in = open_for_reading(opts.counts_in);
  const auto counts = read_counts_csv(in);
  if (counts.total() == 0) throw DataError("empty dataset");

  json parameters = json::object();
  const auto meta_path = opts.meta_in.value_or(default_meta_path(opts.counts_in));
  if (opts.meta_in || fs::exists(meta_path)) {
    auto meta = open_for_reading(meta_path);
    try {
      parameters = json::parse(meta);
    } catch (const json::exception& e) {
      throw DataError("malformed metadata '" + meta_path.string() + "': " + e.what());
    }
  }

  BootstrapConfig boot;
  boot.replicates = opts.replicates;
  boot.seed = opts.seed.value_or(entropy_seed());
  boot.threads = opts.threads;

  AnalyzeResult result{analyze_counts(counts, boot, opts.threshold), json()};
  const std::string label = opts.label.value_or(opts.counts_in.stem().string());
  result.json = report_to_json(result.report, label, parameters);

  if (opts.report_out) {
    auto out = open_for_writing(*opts.report_out);
    out << result.json.dump(2) << '\n';
  }
  if (opts.plot_out) {
    auto out = open_for_writing(*opts.plot_out);
    write_plot_data(out, result.report);
  }
  return result;
}

std::string run_report(const ReportOptions& opts) {
  if (opts.reports.empty()) throw DataError("no reports given");
  std::vector<ReportRow> rows;
  for (const auto& path : opts.reports) {
    auto in = open_for_reading(path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw DataError("malformed report '" + path.string() + "': " + e.what());
    }
    rows.push_back(report_row_from_json(j));
  }
  return render_table(rows, opts.format);
}

}  // namespace clickcorr
