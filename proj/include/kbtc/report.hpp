#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kbtc/error.hpp"
#include "kbtc/experiment.hpp"

namespace kbtc {

// report.csv: `enrichment,micro,macro,micro_improvement_pct,macro_improvement_pct`,
// one row per configuration, F values to 6 decimals, improvements to 2,
// empty improvement cells for rows without a baseline.
// folds.csv: `fold,micro,macro`, one row per fold, 9 decimals.
// Both: comma separated, '.' decimal point, LF line endings.

inline constexpr std::string_view kReportHeader =
    "enrichment,micro,macro,micro_improvement_pct,macro_improvement_pct";
inline constexpr std::string_view kFoldsHeader = "fold,micro,macro";

struct ReportRow {
  std::string enrichment;
  double micro = 0.0;
  double macro = 0.0;
  std::optional<double> micro_improvement;
  std::optional<double> macro_improvement;
};

namespace detail {

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  // never print a negative zero
  if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

inline double parse_number(const std::string& cell, const std::string& where) {
  try {
    std::size_t used = 0;
    double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kReportFormat, where + ": not a number: '" + cell + "'");
  }
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write to '" + path.string() + "' failed");
}

}  // namespace detail

inline ReportRow to_row(const EvalReport& report) {
  return ReportRow{report.name, report.micro_f, report.macro_f, report.improvement_micro,
                   report.improvement_macro};
}

inline std::string format_report_csv(const std::vector<ReportRow>& rows) {
  std::string out(kReportHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.enrichment;
    out += ',' + detail::fixed(r.micro, 6);
    out += ',' + detail::fixed(r.macro, 6);
    out += ',';
    if (r.micro_improvement) out += detail::fixed(*r.micro_improvement, 2);
    out += ',';
    if (r.macro_improvement) out += detail::fixed(*r.macro_improvement, 2);
    out += '\n';
  }
  return out;
}

inline std::string format_folds_csv(const EvalReport& report) {
  std::string out(kFoldsHeader);
  out += '\n';
  for (std::size_t f = 0; f < report.fold_micro_f.size(); ++f) {
    out += std::to_string(f) + ',' + detail::fixed(report.fold_micro_f[f], 9) + ',' +
           detail::fixed(report.fold_macro_f[f], 9) + '\n';
  }
  return out;
}

inline std::vector<ReportRow> read_report_csv(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  if (lines.empty() || lines.front() != kReportHeader) {
    throw Error(ErrorCode::kReportFormat, path.string() + ": missing report header");
  }
  std::vector<ReportRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = path.string() + ":" + std::to_string(i + 1);
    auto cells = detail::split_csv_line(lines[i]);
    if (cells.size() != 5) throw Error(ErrorCode::kReportFormat, where + ": expected 5 columns");
    ReportRow r;
    r.enrichment = cells[0];
    r.micro = detail::parse_number(cells[1], where);
    r.macro = detail::parse_number(cells[2], where);
    if (!cells[3].empty()) r.micro_improvement = detail::parse_number(cells[3], where);
    if (!cells[4].empty()) r.macro_improvement = detail::parse_number(cells[4], where);
    rows.push_back(std::move(r));
  }
  return rows;
}

struct FoldScores {
  std::vector<double> micro;
  std::vector<double> macro;
};

inline FoldScores read_folds_csv(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  if (lines.empty() || lines.front() != kFoldsHeader) {
    throw Error(ErrorCode::kReportFormat, path.string() + ": missing folds header");
  }
  FoldScores scores;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = path.string() + ":" + std::to_string(i + 1);
    auto cells = detail::split_csv_line(lines[i]);
    if (cells.size() != 3) throw Error(ErrorCode::kReportFormat, where + ": expected 3 columns");
    scores.micro.push_back(detail::parse_number(cells[1], where));
    scores.macro.push_back(detail::parse_number(cells[2], where));
  }
  return scores;
}

}  // namespace kbtc
