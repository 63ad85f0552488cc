// kbtc: command-line front end for knowledge-base enriched text
// categorization experiments.
//
//   kbtc run --config exp.conf [--baseline report.csv] [--out DIR] [--seed N]
//   kbtc matrix --config exp.conf [--out DIR] [--seed N]
//   kbtc compare folds_a.csv folds_b.csv
//   kbtc build-kb-check --kb kb.tsv [--config exp.conf]
//
// Any failure exits with status 1 and a single `error: CODE: message` line
// on stderr.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kbtc/config.hpp"
#include "kbtc/error.hpp"
#include "kbtc/kb_index.hpp"
#include "kbtc/report.hpp"
#include "kbtc/session.hpp"
#include "kbtc/ttest.hpp"

namespace fs = std::filesystem;

namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

[[noreturn]] void fail(std::string_view code, const std::string& message) {
  std::cerr << "error: " << code << ": " << one_line(message) << std::endl;
  std::exit(1);
}

std::string format_stat(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string ttest_line(std::string_view label, const kbtc::TTestResult& r) {
  return std::string(label) + ',' + format_stat(r.t) + ',' + std::to_string(r.df) + ',' + format_stat(r.p) + ',' +
         (r.zero_variance ? "true" : "false") + '\n';
}

kbtc::ExperimentConfig load(const std::string& config_path, std::optional<std::uint64_t> seed) {
  auto cfg = kbtc::load_config(config_path);
  if (seed) cfg.seed = *seed;
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
  return cfg;
}

void report_decode_warnings(const kbtc::Session& session) {
  if (session.decode_replacements() > 0) {
    std::cerr << "warning: replaced " << session.decode_replacements()
              << " ill-formed UTF-8 sequence(s) while loading the corpus\n";
  }
}

void ensure_out_dir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw kbtc::Error(kbtc::ErrorCode::kIoError, "cannot create '" + out.string() + "': " + ec.message());
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& baseline_path, const fs::path& out,
            std::optional<std::uint64_t> seed) {
  const auto cfg = load(config_path, seed);
  std::optional<kbtc::ReportRow> baseline;
  if (baseline_path) {
    const auto rows = kbtc::read_report_csv(*baseline_path);
    if (rows.empty()) throw kbtc::Error(kbtc::ErrorCode::kReportFormat, *baseline_path + ": no rows");
    auto it = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.enrichment == "baseline"; });
    baseline = it != rows.end() ? *it : rows.front();
  }

  const kbtc::Session session(cfg);
  report_decode_warnings(session);
  auto report = session.run(cfg.approach);
  if (baseline) kbtc::attach_baseline(report, baseline->micro, baseline->macro, baseline->enrichment);

  ensure_out_dir(out);
  kbtc::detail::write_text(out / "report.csv", kbtc::format_report_csv({kbtc::to_row(report)}));
  kbtc::detail::write_text(out / "folds.csv", kbtc::format_folds_csv(report));
  std::cout << report.name << ": micro-F " << kbtc::detail::fixed(report.micro_f, 4) << ", macro-F "
            << kbtc::detail::fixed(report.macro_f, 4) << " over " << report.fold_micro_f.size() << " folds -> "
            << (out / "report.csv").string() << '\n';
  return 0;
}

int cmd_matrix(const std::string& config_path, const fs::path& out, std::optional<std::uint64_t> seed) {
  const auto cfg = load(config_path, seed);
  if (std::find(cfg.approaches.begin(), cfg.approaches.end(), std::nullopt) == cfg.approaches.end()) {
    throw kbtc::Error(kbtc::ErrorCode::kMatrixNoBaseline, "the 'approaches' list must include baseline");
  }

  const kbtc::Session session(cfg);
  report_decode_warnings(session);
  std::vector<kbtc::EvalReport> reports;
  for (const auto& approach : cfg.approaches) reports.push_back(session.run(approach));
  const auto& base = *std::find_if(reports.begin(), reports.end(), [](const auto& r) { return r.name == "baseline"; });

  std::vector<kbtc::ReportRow> rows;
  std::string ttests = "approach,metric,t,df,p,zero_variance\n";
  for (auto& r : reports) {
    if (r.name != "baseline") {
      kbtc::attach_baseline(r, base);
      ttests += r.name + ',' + ttest_line("micro", kbtc::paired_t_test(r.fold_micro_f, base.fold_micro_f));
      ttests += r.name + ',' + ttest_line("macro", kbtc::paired_t_test(r.fold_macro_f, base.fold_macro_f));
    }
    rows.push_back(kbtc::to_row(r));
  }

  ensure_out_dir(out);
  kbtc::detail::write_text(out / "report.csv", kbtc::format_report_csv(rows));
  kbtc::detail::write_text(out / "ttest.csv", ttests);
  for (const auto& r : reports) {
    kbtc::detail::write_text(out / ("folds_" + r.name + ".csv"), kbtc::format_folds_csv(r));
  }
  std::cout << kbtc::format_report_csv(rows);
  return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path) {
  const auto a = kbtc::read_folds_csv(a_path);
  const auto b = kbtc::read_folds_csv(b_path);
  if (a.micro.size() != b.micro.size()) {
    throw kbtc::Error(kbtc::ErrorCode::kFoldCountMismatch,
                      a_path + " has " + std::to_string(a.micro.size()) + " folds, " + b_path + " has " +
                          std::to_string(b.micro.size()));
  }
  std::cout << "metric,t,df,p,zero_variance\n"
            << ttest_line("micro", kbtc::paired_t_test(a.micro, b.micro))
            << ttest_line("macro", kbtc::paired_t_test(a.macro, b.macro));
  return 0;
}

int cmd_build_kb_check(const std::string& kb_path, const std::optional<std::string>& config_path) {
  kbtc::StopList stoplist = kbtc::StopList::english();
  if (config_path) {
    const auto cfg = kbtc::load_config(*config_path);
    if (cfg.stopwords) stoplist = kbtc::StopList::from_file(*cfg.stopwords);
  }
  const kbtc::KbIndex index(kbtc::load_kb(kb_path), stoplist);
  const auto s = index.stats();
  std::cout << "articles " << s.articles << '\n'
            << "terms " << s.terms << '\n'
            << "postings " << s.postings << '\n'
            << "tokens " << s.tokens << '\n'
            << "unreachable_articles " << s.unreachable_articles << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text categorization with knowledge-base enrichment"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> baseline_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Cross-validate one configuration");
  run->add_option("--config", config_path, "Experiment config file")->required();
  run->add_option("--baseline", baseline_path, "Baseline report.csv for improvement columns");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--seed", seed, "Override the config seed");

  auto* matrix = app.add_subcommand("matrix", "Run baseline and A1-A5 rows listed in 'approaches'");
  matrix->add_option("--config", config_path, "Experiment config file")->required();
  matrix->add_option("--out", out_dir, "Output directory");
  matrix->add_option("--seed", seed, "Override the config seed");

  std::string folds_a, folds_b;
  auto* compare = app.add_subcommand("compare", "Paired t-test between two folds.csv files");
  compare->add_option("folds_a", folds_a, "First folds.csv")->required();
  compare->add_option("folds_b", folds_b, "Second folds.csv")->required();

  std::string kb_path;
  std::optional<std::string> kb_config;
  auto* kb_check = app.add_subcommand("build-kb-check", "Validate a KB file and print index statistics");
  kb_check->add_option("--kb", kb_path, "KB file")->required();
  kb_check->add_option("--config", kb_config, "Config supplying the stop list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("USAGE", e.what());
  }

  try {
    if (*run) return cmd_run(config_path, baseline_path, out_dir, seed);
    if (*matrix) return cmd_matrix(config_path, out_dir, seed);
    if (*compare) return cmd_compare(folds_a, folds_b);
    if (*kb_check) return cmd_build_kb_check(kb_path, kb_config);
  } catch (const kbtc::Error& e) {
    fail(e.code_name(), e.what());
  } catch (const std::exception& e) {
    fail("INTERNAL", e.what());
  }
  return 1;
}
