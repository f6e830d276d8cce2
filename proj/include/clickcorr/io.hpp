#pragma once

// File formats.
//
// Counts CSV: a header line `# bins_a=<N_A> bins_b=<N_B>` followed by N_A + 1
// rows of N_B + 1 comma-separated non-negative integers; row = a, column = b.
// Distribution CSV uses the same layout with real entries.
//
// Report JSON: one flat object. Every statistic is `{value, stderr, defined,
// drop_fraction}`, every test `{violated, significance_sigmas, ...}`, plus
// provenance (`seed`, `shots`, `parameters`) and `schema_version`.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clickcorr/criteria.hpp"
#include "clickcorr/model.hpp"

namespace clickcorr {

inline constexpr int kReportSchemaVersion = 1;

void write_counts_csv(std::ostream& out, const CountMatrix& counts);
CountMatrix read_counts_csv(std::istream& in);

void write_distribution_csv(std::ostream& out, const JointClickDistribution& jcd);
/// Entries are renormalized exactly.
JointClickDistribution read_distribution_csv(std::istream& in);

/// Plain matrix p(n_A, n_B) without header; lines starting with '#' are skipped.
JointPhotonDistribution read_photon_distribution_csv(std::istream& in, std::string label);

nlohmann::json report_to_json(const CriteriaReport& report, const std::string& label,
                              const nlohmann::json& parameters);

/// Rows `criterion,value,bound,stderr` for κ, γ, 𝔑 and both Q parameters.
void write_plot_data(std::ostream& out, const CriteriaReport& report);

/// The columns of the comparison table, read back from a report JSON.
struct ReportRow {
  std::string label;
  std::optional<double> summed_click_mean;
  double summed_click_mean_stderr = 0.0;
  VerdictState kappa_test = VerdictState::Undetermined;
  VerdictState pearson_test = VerdictState::Undetermined;
  VerdictState higher_order_test = VerdictState::Undetermined;
  std::optional<double> frak_n;
  double frak_n_stderr = 0.0;
};

/// Throws DataError on a schema-version mismatch or missing fields.
ReportRow report_row_from_json(const nlohmann::json& report);

enum class TableFormat { Text, Csv };

/// One row per report; throws DataError for an empty list.
std::string render_table(const std::vector<ReportRow>& rows, TableFormat format);

/// "0.03614(1±0.20%)" style value with relative error.
std::string format_relative(double value, double std_error);

}  // namespace clickcorr
