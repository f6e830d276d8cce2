// clickcorr: simulate two-mode click-counting data, test it for nonclassical
// correlations, and tabulate the verdicts of several datasets.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clickcorr/commands.hpp"

namespace {

using namespace clickcorr;

struct DetectorFlags {
  int bins = 8;
  double eta = 1.0;
  double nu = 0.0;
  std::optional<int> bins_a, bins_b;
  std::optional<double> eta_a, eta_b, nu_a, nu_b;

  DetectorConfig arm_a() const { return {bins_a.value_or(bins), eta_a.value_or(eta), nu_a.value_or(nu)}; }
  DetectorConfig arm_b() const { return {bins_b.value_or(bins), eta_b.value_or(eta), nu_b.value_or(nu)}; }
};

struct StateFlags {
  std::string kind = "coherent";
  std::optional<double> lambda, lambda2, t, t2;
  double mean_a = 0.0;
  double mean_b = 0.0;
  std::string photon_csv;

  StateSpec build() const {
    if (kind == "coherent") return CoherentState{mean_a, mean_b};
    if (kind == "tmsv") {
      if (lambda2) return TwoModeSqueezedVacuum::from_lambda_squared(*lambda2);
      if (lambda) return TwoModeSqueezedVacuum{*lambda};
      throw InvalidParameter("tmsv needs --lambda2 or --lambda");
    }
    if (kind == "split-photon") {
      if (t2) return SplitPhoton::from_t_squared(*t2);
      if (t) return SplitPhoton{*t};
      throw InvalidParameter("split-photon needs --t2 or --t");
    }
    if (photon_csv.empty()) throw InvalidParameter("custom state needs --photon-distribution");
    std::ifstream in(photon_csv);
    if (!in) throw DataError("cannot read '" + photon_csv + "'");
    return CustomState{read_photon_distribution_csv(in, photon_csv)};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Click-counting correlation simulator and nonclassicality analyzer"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Simulate a joint click-counting dataset");
  StateFlags state;
  DetectorFlags det;
  SimulateOptions sim_opts;
  std::uint64_t sim_seed = 0;
  std::string counts_out, exact_out, meta_out;
  sim->add_option("--state", state.kind, "State family")
      ->check(CLI::IsMember({"coherent", "tmsv", "split-photon", "custom"}))
      ->required();
  sim->add_option("--lambda2", state.lambda2, "TMSV squeezing parameter lambda^2");
  sim->add_option("--lambda", state.lambda, "TMSV squeezing parameter lambda");
  sim->add_option("--t2", state.t2, "Split-photon weight t^2 of mode A");
  sim->add_option("--t", state.t, "Split-photon amplitude t");
  sim->add_option("--mean-a", state.mean_a, "Coherent mean photon number of mode A");
  sim->add_option("--mean-b", state.mean_b, "Coherent mean photon number of mode B");
  sim->add_option("--photon-distribution", state.photon_csv, "CSV matrix p(n_A,n_B) for --state custom");
  sim->add_option("--bins", det.bins, "Bins per click counter (both arms)");
  sim->add_option("--eta", det.eta, "Detection efficiency (both arms)");
  sim->add_option("--nu", det.nu, "Per-bin dark-click probability (both arms)");
  sim->add_option("--bins-a", det.bins_a);
  sim->add_option("--bins-b", det.bins_b);
  sim->add_option("--eta-a", det.eta_a);
  sim->add_option("--eta-b", det.eta_b);
  sim->add_option("--nu-a", det.nu_a);
  sim->add_option("--nu-b", det.nu_b);
  sim->add_option("--shots", sim_opts.shots, "Number of shots")->check(CLI::PositiveNumber);
  auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "Random seed (default: system entropy)");
  sim->add_flag("--physical", sim_opts.physical, "Shot-by-shot detector Monte Carlo");
  sim->add_option("--out,-o", counts_out, "Counts CSV to write")->required();
  sim->add_option("--exact-out", exact_out, "Exact distribution CSV (default <out>.exact.csv)");
  sim->add_option("--meta-out", meta_out, "Metadata JSON (default <out>.meta.json)");
  sim->add_option("--threads", sim_opts.threads, "Worker threads (0 = all cores)");

  // analyze
  auto* ana = app.add_subcommand("analyze", "Test a counts file for nonclassical correlations");
  AnalyzeOptions ana_opts;
  std::string counts_in, meta_in, report_out, plot_out, label;
  std::uint64_t ana_seed = 0;
  ana->add_option("counts", counts_in, "Counts CSV")->required();
  ana->add_option("--meta", meta_in, "Simulation metadata JSON (default <counts>.meta.json if present)");
  ana->add_option("--out,-o", report_out, "Report JSON to write (default: stdout)");
  ana->add_option("--plot-data", plot_out, "CSV of criterion,value,bound,stderr");
  ana->add_option("--replicates", ana_opts.replicates, "Bootstrap replicates")->check(CLI::Range(2, 1000000));
  auto* ana_seed_opt = ana->add_option("--seed", ana_seed, "Bootstrap seed (default: system entropy)");
  ana->add_option("--threshold", ana_opts.threshold, "Significance threshold in standard errors")
      ->check(CLI::NonNegativeNumber);
  ana->add_option("--label", label, "Dataset name in the report");
  ana->add_option("--threads", ana_opts.threads, "Worker threads (0 = all cores)");

  // report
  auto* rep = app.add_subcommand("report", "Tabulate verdicts of several reports");
  std::vector<std::string> report_files;
  std::string format = "text";
  std::string table_out;
  rep->add_option("reports", report_files, "Report JSON files")->required();
  rep->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));
  rep->add_option("--out,-o", table_out, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (sim->parsed()) {
      sim_opts.state = state.build();
      sim_opts.detector_a = det.arm_a();
      sim_opts.detector_b = det.arm_b();
      if (*sim_seed_opt) sim_opts.seed = sim_seed;
      sim_opts.counts_out = counts_out;
      if (!exact_out.empty()) sim_opts.exact_out = exact_out;
      if (!meta_out.empty()) sim_opts.meta_out = meta_out;
      const auto r = run_simulate(sim_opts);
      std::cout << r.metadata.dump(2) << '\n';
    } else if (ana->parsed()) {
      ana_opts.counts_in = counts_in;
      if (!meta_in.empty()) ana_opts.meta_in = meta_in;
      if (!report_out.empty()) ana_opts.report_out = report_out;
      if (!plot_out.empty()) ana_opts.plot_out = plot_out;
      if (*ana_seed_opt) ana_opts.seed = ana_seed;
      if (!label.empty()) ana_opts.label = label;
      const auto r = run_analyze(ana_opts);
      if (report_out.empty()) std::cout << r.json.dump(2) << '\n';
    } else if (rep->parsed()) {
      ReportOptions opts;
      opts.reports.assign(report_files.begin(), report_files.end());
      opts.format = format == "csv" ? TableFormat::Csv : TableFormat::Text;
      const auto table = run_report(opts);
      if (table_out.empty()) {
        std::cout << table;
      } else {
        std::ofstream out(table_out);
        if (!out) throw DataError("cannot write '" + table_out + "'");
        out << table;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "clickcorr: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitSuccess;
}
