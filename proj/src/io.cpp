#include "clickcorr/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

namespace clickcorr {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::pair<int, int> read_header(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) break;
  }
  static const std::regex header(R"(^\s*#\s*bins_a\s*=\s*(\d+)\s+bins_b\s*=\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(line, m, header)) {
    throw DataError("malformed CSV: expected header '# bins_a=<N_A> bins_b=<N_B>'");
  }
  const int na = std::stoi(m[1].str());
  const int nb = std::stoi(m[2].str());
  if (na < 2 || nb < 2 || na > kMaxBins || nb > kMaxBins) {
    throw DataError("malformed CSV: bins must lie in [2, " + std::to_string(kMaxBins) + "]");
  }
  return {na, nb};
}

/// Data rows after the header; trailing blank lines are ignored.
std::vector<std::vector<std::string>> read_rows(std::istream& in, int expected_rows, int expected_cols) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') continue;
    auto fields = split_fields(t);
    if (static_cast<int>(fields.size()) != expected_cols) {
      throw DataError("dimension mismatch at line " + std::to_string(line_no) + ": expected " +
                      std::to_string(expected_cols) + " columns, found " + std::to_string(fields.size()));
    }
    rows.push_back(std::move(fields));
  }
  if (static_cast<int>(rows.size()) != expected_rows) {
    throw DataError("dimension mismatch: expected " + std::to_string(expected_rows) + " rows, found " +
                    std::to_string(rows.size()));
  }
  return rows;
}

std::uint64_t parse_count(const std::string& field) {
  std::uint64_t value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw DataError("malformed CSV: '" + field + "' is not a non-negative integer count");
  }
  return value;
}

double parse_real(const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw DataError("malformed CSV: '" + field + "' is not a number");
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json estimate_json(const Estimate& e) {
  return {{"value", optional_number(e.value)},
          {"stderr", e.std_error},
          {"defined", e.defined()},
          {"drop_fraction", e.drop_fraction}};
}

std::string_view state_name(VerdictState s) {
  switch (s) {
    case VerdictState::Violated:
      return "violated";
    case VerdictState::NotViolated:
      return "not_violated";
    case VerdictState::Undetermined:
      break;
  }
  return "undetermined";
}

json verdict_json(const Verdict& v) {
  json violated = nullptr;
  if (v.state != VerdictState::Undetermined) violated = v.violated();
  json j = {{"violated", violated},
            {"state", state_name(v.state)},
            {"significance_sigmas", optional_number(v.significance_sigmas)},
            {"margin", optional_number(v.margin)},
            {"margin_stderr", v.margin_std_error}};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

VerdictState state_from_json(const json& v) {
  const auto& violated = v.at("violated");
  if (violated.is_null()) return VerdictState::Undetermined;
  return violated.get<bool>() ? VerdictState::Violated : VerdictState::NotViolated;
}

std::string format_number(double v) {
  char buf[64];
  if (v != 0.0 && (std::abs(v) < 1e-3 || std::abs(v) >= 1e5)) {
    std::snprintf(buf, sizeof buf, "%.3g", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.4g", v);
  }
  return buf;
}

std::size_t display_width(std::string_view s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++w;
  return w;
}

std::string pad(std::string s, std::size_t width) {
  const auto w = display_width(s);
  if (w < width) s.append(width - w, ' ');
  return s;
}

std::string csv_state(VerdictState s) { return std::string(state_name(s)); }

}  // namespace

void write_counts_csv(std::ostream& out, const CountMatrix& counts) {
  out << "# bins_a=" << counts.bins_a() << " bins_b=" << counts.bins_b() << '\n';
  for (int a = 0; a <= counts.bins_a(); ++a) {
    for (int b = 0; b <= counts.bins_b(); ++b) {
      if (b > 0) out << ',';
      out << counts(a, b);
    }
    out << '\n';
  }
}

CountMatrix read_counts_csv(std::istream& in) {
  const auto [na, nb] = read_header(in);
  const auto rows = read_rows(in, na + 1, nb + 1);
  Matrix<std::uint64_t> counts(na + 1, nb + 1);
  for (int a = 0; a <= na; ++a)
    for (int b = 0; b <= nb; ++b) counts(a, b) = parse_count(rows[a][b]);
  return CountMatrix(std::move(counts));
}

void write_distribution_csv(std::ostream& out, const JointClickDistribution& jcd) {
  out << "# bins_a=" << jcd.bins_a() << " bins_b=" << jcd.bins_b() << '\n';
  char buf[40];
  for (int a = 0; a <= jcd.bins_a(); ++a) {
    for (int b = 0; b <= jcd.bins_b(); ++b) {
      if (b > 0) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", jcd(a, b));
      out << buf;
    }
    out << '\n';
  }
}

JointClickDistribution read_distribution_csv(std::istream& in) {
  const auto [na, nb] = read_header(in);
  const auto rows = read_rows(in, na + 1, nb + 1);
  Matrix<double> probs(na + 1, nb + 1);
  for (int a = 0; a <= na; ++a)
    for (int b = 0; b <= nb; ++b) probs(a, b) = parse_real(rows[a][b]);
  return JointClickDistribution::renormalized(std::move(probs));
}

JointPhotonDistribution read_photon_distribution_csv(std::istream& in, std::string label) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<double> row;
    for (const auto& f : split_fields(t)) row.push_back(parse_real(f));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError("photon distribution rows differ in length");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("photon distribution file is empty");
  Matrix<double> probs(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) probs(i, j) = rows[i][j];
  try {
    return JointPhotonDistribution(std::move(probs), std::move(label));
  } catch (const InvalidParameter& e) {
    throw DataError(e.what());
  }
}

json report_to_json(const CriteriaReport& report, const std::string& label, const json& parameters) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["label"] = label;
  j["bins_a"] = report.bins_a;
  j["bins_b"] = report.bins_b;
  j["shots"] = report.shots;
  j["seed"] = report.bootstrap_seed ? json(*report.bootstrap_seed) : json(nullptr);
  j["bootstrap_replicates"] = report.bootstrap_replicates;
  j["significance_threshold"] = report.significance_threshold;
  j["parameters"] = parameters.is_null() ? json::object() : parameters;
  for (std::size_t i = 0; i < kStatisticCount; ++i) {
    j[std::string(statistic_name(static_cast<Statistic>(i)))] = estimate_json(report.statistics[i]);
  }
  j["kappa_test"] = verdict_json(report.kappa_test);
  j["pearson_test"] = verdict_json(report.pearson_test);
  j["higher_order_test"] = verdict_json(report.higher_order_test);
  json conditions = json::array();
  for (const auto& c : report.conditions) {
    conditions.push_back({{"a", c.condition},
                          {"probability", c.probability},
                          {"shots", c.shots ? json(*c.shots) : json(nullptr)},
                          {"min_eigenvalue", optional_number(c.min_eigenvalue)},
                          {"moments_in_unit_range", c.moments_in_unit_range}});
  }
  j["conditions"] = std::move(conditions);
  j["warnings"] = report.warnings;
  return j;
}

void write_plot_data(std::ostream& out, const CriteriaReport& report) {
  auto field = [](const std::optional<double>& v) {
    if (!v) return std::string();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return std::string(buf);
  };
  auto row = [&](std::string_view name, Statistic value, std::optional<double> bound) {
    const auto& e = report[value];
    out << name << ',' << field(e.value) << ',' << field(bound) << ','
        << field(e.error_defined ? std::optional<double>(e.std_error) : std::nullopt) << '\n';
  };
  out << "criterion,value,bound,stderr\n";
  row("kappa", Statistic::Kappa, report[Statistic::KappaClMax].value);
  row("gamma", Statistic::Gamma, report[Statistic::GammaClMax].value);
  row("frak_n", Statistic::FrakN, 0.0);
  row("q_a", Statistic::QA, 0.0);
  row("q_b", Statistic::QB, 0.0);
}

ReportRow report_row_from_json(const json& report) {
  try {
    const int version = report.at("schema_version").get<int>();
    if (version != kReportSchemaVersion) {
      throw DataError("schema-version mismatch: expected " + std::to_string(kReportSchemaVersion) +
                      ", found " + std::to_string(version));
    }
    ReportRow row;
    row.label = report.value("label", std::string("unnamed"));
    const auto& mean = report.at("summed_click_mean");
    if (!mean.at("value").is_null()) row.summed_click_mean = mean.at("value").get<double>();
    row.summed_click_mean_stderr = mean.at("stderr").get<double>();
    row.kappa_test = state_from_json(report.at("kappa_test"));
    row.pearson_test = state_from_json(report.at("pearson_test"));
    row.higher_order_test = state_from_json(report.at("higher_order_test"));
    const auto& frak = report.at("frak_n");
    if (!frak.at("value").is_null()) row.frak_n = frak.at("value").get<double>();
    row.frak_n_stderr = frak.at("stderr").get<double>();
    return row;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

std::string format_relative(double value, double std_error) {
  std::string s = format_number(value);
  if (value == 0.0) return s + "(±" + format_number(std_error) + ")";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2g", 100.0 * std_error / std::abs(value));
  return s + "(1±" + buf + "%)";
}

std::string render_table(const std::vector<ReportRow>& rows, TableFormat format) {
  if (rows.empty()) throw DataError("no reports given");
  std::ostringstream out;
  if (format == TableFormat::Csv) {
    out << "state,summed_click_mean,summed_click_mean_stderr,kappa_test,pearson_test,"
           "higher_order_test,frak_n,frak_n_stderr\n";
    for (const auto& r : rows) {
      auto num = [](const std::optional<double>& v) {
        if (!v) return std::string();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", *v);
        return std::string(buf);
      };
      out << r.label << ',' << num(r.summed_click_mean) << ',' << num(r.summed_click_mean_stderr) << ','
          << csv_state(r.kappa_test) << ',' << csv_state(r.pearson_test) << ','
          << csv_state(r.higher_order_test) << ',' << num(r.frak_n) << ',' << num(r.frak_n_stderr)
          << '\n';
    }
    return out.str();
  }

  const std::vector<std::string> header = {"State", "E(a+b)", "kappa>kappa_cl", "|gamma|>gamma_cl",
                                           "N<0", "N"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({r.label,
                     r.summed_click_mean ? format_relative(*r.summed_click_mean, r.summed_click_mean_stderr)
                                         : "undefined",
                     std::string(verdict_symbol(r.kappa_test)), std::string(verdict_symbol(r.pearson_test)),
                     std::string(verdict_symbol(r.higher_order_test)),
                     r.frak_n ? format_relative(*r.frak_n, r.frak_n_stderr) : "undefined"});
  }
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = display_width(header[c]);
    for (const auto& row : cells) widths[c] = std::max(widths[c], display_width(row[c]));
  }
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c + 1 < row.size() ? pad(row[c], widths[c] + 2) : row[c]);
    }
    out << '\n';
  };
  emit(header);
  std::size_t total = 0;
  for (auto w : widths) total += w + 2;
  out << std::string(total - 2, '-') << '\n';
  for (const auto& row : cells) emit(row);
  return out.str();
}

}  // namespace clickcorr
