// Copyright 2026 The Sharpmark Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHARPMARK_EVAL_HPP_
#define SHARPMARK_EVAL_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sharpmark/image_io.hpp"
#include "sharpmark/parallel.hpp"
#include "sharpmark/sharpness.hpp"
#include "sharpmark/stats.hpp"

namespace sharpmark {

/// One scored manifest row.
struct EvalRecord {
  std::string image_path;  // path string as written in the manifest
  double subjective = 0.0;
  double objective = 0.0;
  std::string group;
};

struct CorrelationReport {
  int n = 0;
  double srocc = 0.0;
  double krocc = 0.0;
  double plcc = 0.0;
  double rmse = 0.0;
  LogisticParams logistic;
};

/// evaluate_manifest output: the report plus everything needed for the
/// per-image CSV and partial-failure diagnostics.
struct ManifestEvaluation {
  CorrelationReport report;
  std::vector<EvalRecord> records;  // manifest order, failures removed
  std::vector<double> fitted;       // logistic(objective), aligned with records
  std::vector<std::string> skipped;  // "path: reason" per unreadable image
  bool fit_converged = true;
};

/// Formats with 6 significant digits, trailing zeros kept ("1" ->
/// "1.00000"), but no dangling decimal point ("123456." -> "123456").
inline std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.6g", v);
  std::string s(buf);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

inline double parse_real(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(context + ": bad numeric field '" + s + "'");
  }
}

inline std::string chomp(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace detail

/// Raw manifest row before scoring.
struct ManifestRow {
  std::string path;
  double subjective = 0.0;
  std::string group;
};

/// Parses a `path,subjective,group` manifest. Structural problems (missing
/// header, wrong field count, unparseable numbers) throw; missing image files
/// are not checked here.
inline std::vector<ManifestRow> parse_manifest(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line) || detail::chomp(line) != "path,subjective,group") {
    throw std::runtime_error(name + ": manifest must start with header 'path,subjective,group'");
  }
  std::vector<ManifestRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::chomp(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = detail::split_csv_line(line);
    const std::string where = name + ":" + std::to_string(lineno);
    if (fields.size() != 3) {
      throw std::runtime_error(where + ": expected 3 fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw std::runtime_error(where + ": empty path");
    rows.push_back({fields[0], detail::parse_real(fields[1], where), fields[2]});
  }
  return rows;
}

inline std::vector<ManifestRow> parse_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw std::runtime_error(manifest.string() + ": cannot open manifest");
  return parse_manifest(in, manifest.string());
}

/// Scores every manifest row with the configured metric, fits the logistic,
/// and assembles the correlation report. Unreadable images are skipped and
/// listed; fewer than 5 scored rows is an error.
inline ManifestEvaluation evaluate_manifest(const std::filesystem::path& manifest,
                                            const SharpnessConfig& cfg) {
  cfg.validate();
  const std::vector<ManifestRow> rows = parse_manifest(manifest);
  const std::filesystem::path base = manifest.has_parent_path()
                                         ? manifest.parent_path()
                                         : std::filesystem::path(".");

  struct Slot {
    double score = 0.0;
    std::string error;  // nonempty = row skipped
  };
  std::vector<Slot> slots(rows.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const std::filesystem::path p = std::filesystem::path(rows[i].path).is_absolute()
                                        ? std::filesystem::path(rows[i].path)
                                        : base / rows[i].path;
    try {
      slots[i].score = score_and_maps(load_image(p), cfg).score;
    } catch (const std::exception& e) {
      slots[i].error = e.what();
    }
  });

  ManifestEvaluation out;
  std::vector<double> objective, subjective;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!slots[i].error.empty()) {
      out.skipped.push_back(rows[i].path + ": " + slots[i].error);
      continue;
    }
    out.records.push_back({rows[i].path, rows[i].subjective, slots[i].score, rows[i].group});
    objective.push_back(slots[i].score);
    subjective.push_back(rows[i].subjective);
  }
  if (out.records.size() < 5) {
    throw std::runtime_error(manifest.string() + ": only " +
                             std::to_string(out.records.size()) +
                             " of " + std::to_string(rows.size()) +
                             " rows usable; need at least 5");
  }

  const LogisticFit fit = fit_logistic5(objective, subjective);
  out.fit_converged = fit.converged;
  out.fitted.reserve(objective.size());
  for (double x : objective) out.fitted.push_back(logistic5(fit.params, x));

  out.report.n = static_cast<int>(out.records.size());
  out.report.srocc = srocc(objective, subjective);
  out.report.krocc = krocc(objective, subjective);
  out.report.plcc = plcc(out.fitted, subjective);
  out.report.rmse = rmse(out.fitted, subjective);
  out.report.logistic = fit.params;
  return out;
}

/// Direct and weighted per-statistic means over several reports.
struct AggregateRow {
  double srocc = 0.0;
  double krocc = 0.0;
  double plcc = 0.0;
  double rmse = 0.0;
};

struct AggregateSummary {
  AggregateRow direct;
  AggregateRow weighted;
};

inline AggregateSummary aggregate_reports(
    const std::vector<std::pair<CorrelationReport, double>>& reports) {
  if (reports.empty()) {
    throw std::invalid_argument("aggregate_reports: need at least one report");
  }
  AggregateSummary out;
  double wsum = 0.0;
  const double count = static_cast<double>(reports.size());
  for (const auto& [rep, weight] : reports) {
    if (!(weight > 0.0)) {
      throw std::invalid_argument("aggregate_reports: weights must be positive");
    }
    out.direct.srocc += rep.srocc / count;
    out.direct.krocc += rep.krocc / count;
    out.direct.plcc += rep.plcc / count;
    out.direct.rmse += rep.rmse / count;
    out.weighted.srocc += rep.srocc * weight;
    out.weighted.krocc += rep.krocc * weight;
    out.weighted.plcc += rep.plcc * weight;
    out.weighted.rmse += rep.rmse * weight;
    wsum += weight;
  }
  out.weighted.srocc /= wsum;
  out.weighted.krocc /= wsum;
  out.weighted.plcc /= wsum;
  out.weighted.rmse /= wsum;
  return out;
}

inline const char* report_csv_header() { return "n,srocc,krocc,plcc,rmse,b1,b2,b3,b4,b5"; }

inline void write_report_row(std::ostream& os, const CorrelationReport& r) {
  os << r.n << ',' << format_sig6(r.srocc) << ',' << format_sig6(r.krocc) << ','
     << format_sig6(r.plcc) << ',' << format_sig6(r.rmse) << ','
     << format_sig6(r.logistic.b1) << ',' << format_sig6(r.logistic.b2) << ','
     << format_sig6(r.logistic.b3) << ',' << format_sig6(r.logistic.b4) << ','
     << format_sig6(r.logistic.b5) << '\n';
}

inline void write_report_csv(std::ostream& os, const std::vector<CorrelationReport>& reports) {
  os << report_csv_header() << '\n';
  for (const CorrelationReport& r : reports) write_report_row(os, r);
}

inline void write_per_image_csv(std::ostream& os, const ManifestEvaluation& ev) {
  os << "path,objective,subjective,fitted\n";
  for (std::size_t i = 0; i < ev.records.size(); ++i) {
    const EvalRecord& rec = ev.records[i];
    os << rec.image_path << ',' << format_sig6(rec.objective) << ','
       << format_sig6(rec.subjective) << ',' << format_sig6(ev.fitted[i]) << '\n';
  }
}

/// Reads back a CSV produced by write_report_csv.
inline std::vector<CorrelationReport> parse_report_csv(std::istream& is,
                                                       const std::string& name) {
  std::string line;
  if (!std::getline(is, line) || detail::chomp(line) != report_csv_header()) {
    throw std::runtime_error(name + ": missing report header '" + report_csv_header() + "'");
  }
  std::vector<CorrelationReport> reports;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    line = detail::chomp(line);
    if (line.empty()) continue;
    const std::vector<std::string> f = detail::split_csv_line(line);
    const std::string where = name + ":" + std::to_string(lineno);
    if (f.size() != 10) {
      throw std::runtime_error(where + ": expected 10 fields, got " + std::to_string(f.size()));
    }
    CorrelationReport r;
    const double n_val = detail::parse_real(f[0], where);
    r.n = static_cast<int>(n_val);
    if (r.n < 1 || static_cast<double>(r.n) != n_val) {
      throw std::runtime_error(where + ": bad sample count '" + f[0] + "'");
    }
    r.srocc = detail::parse_real(f[1], where);
    r.krocc = detail::parse_real(f[2], where);
    r.plcc = detail::parse_real(f[3], where);
    r.rmse = detail::parse_real(f[4], where);
    r.logistic.b1 = detail::parse_real(f[5], where);
    r.logistic.b2 = detail::parse_real(f[6], where);
    r.logistic.b3 = detail::parse_real(f[7], where);
    r.logistic.b4 = detail::parse_real(f[8], where);
    r.logistic.b5 = detail::parse_real(f[9], where);
    reports.push_back(r);
  }
  return reports;
}

inline void write_aggregate_csv(std::ostream& os, const AggregateSummary& s) {
  os << "kind,srocc,krocc,plcc,rmse\n";
  os << "direct," << format_sig6(s.direct.srocc) << ',' << format_sig6(s.direct.krocc) << ','
     << format_sig6(s.direct.plcc) << ',' << format_sig6(s.direct.rmse) << '\n';
  os << "weighted," << format_sig6(s.weighted.srocc) << ',' << format_sig6(s.weighted.krocc)
     << ',' << format_sig6(s.weighted.plcc) << ',' << format_sig6(s.weighted.rmse) << '\n';
}

}  // namespace sharpmark

#endif  // SHARPMARK_EVAL_HPP_
