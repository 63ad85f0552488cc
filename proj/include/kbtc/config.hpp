#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kbtc/enrichment.hpp"
#include "kbtc/error.hpp"
#include "kbtc/experiment.hpp"
#include "kbtc/representation.hpp"

namespace kbtc {

// Experiment description read from a flat `key = value` file. '#' starts a
// comment line; keys are dotted (`svm.C`). Relative paths are resolved
// against the directory holding the config file.
struct ExperimentConfig {
  std::filesystem::path corpus;
  std::optional<std::filesystem::path> kb;
  Representation representation = Representation::kT1;
  std::optional<Approach> approach;  // nullopt = baseline
  // Matrix runs; a nullopt entry stands for the baseline.
  std::vector<std::optional<Approach>> approaches;
  ClassifierKind classifier = ClassifierKind::kNaiveBayes;
  std::size_t k_folds = 10;
  std::uint64_t seed = 7;
  double nb_alpha = 1.0;
  double svm_c = 1.0;
  double svm_tol = 1e-3;
  std::size_t svm_max_epochs = 1000;
  double filter_tau = kDefaultFilterTau;
  bool stem_enrichment = true;
  std::size_t min_df = 1;
  bool strip_headers = false;
  std::size_t threads = 0;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> nouns;
  std::optional<std::filesystem::path> gazetteer;
  std::optional<std::filesystem::path> entity_map;
  std::vector<std::string> warnings;

  ExperimentSettings settings_for(std::optional<Approach> which) const {
    ExperimentSettings s;
    s.representation = representation;
    if (which) s.approach = make_approach(*which, filter_tau);
    s.classifier = classifier;
    s.k_folds = k_folds;
    s.seed = seed;
    s.nb_alpha = nb_alpha;
    s.svm.C = svm_c;
    s.svm.tol = svm_tol;
    s.svm.max_epochs = svm_max_epochs;
    s.svm.seed = seed;
    s.min_df = min_df;
    s.max_threads = threads;
    return s;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] inline void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw Error(ErrorCode::kConfigInvalid, "config key '" + key + "': expected " + expected + ", got '" + value + "'");
}

inline double parse_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) bad_value(key, value, "a number");
  return v;
}

inline std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "a non-negative integer");
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "true or false");
}

inline std::optional<Approach> parse_approach_or_baseline(const std::string& key, const std::string& value) {
  if (value == "baseline") return std::nullopt;
  auto a = parse_approach(value);
  if (!a) bad_value(key, value, "baseline or A1..A5");
  return a;
}

}  // namespace detail

inline std::string approach_label(const std::optional<Approach>& a) {
  return a ? std::string(approach_name(*a)) : std::string("baseline");
}

inline ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {}) {
  ExperimentConfig cfg;
  std::map<std::string, std::string> values;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfigInvalid, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = detail::trim(std::string_view(trimmed).substr(0, eq));
    std::string value = detail::trim(std::string_view(trimmed).substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::kConfigInvalid, "config line " + std::to_string(line_no) + ": empty key");
    if (!values.emplace(key, value).second) {
      throw Error(ErrorCode::kConfigInvalid, "config key '" + key + "' given twice");
    }
  }

  auto path = [&](const std::string& v) {
    std::filesystem::path p(v);
    return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
  };

  bool have_corpus = false;
  for (const auto& [key, value] : values) {
    if (key == "corpus") {
      cfg.corpus = path(value);
      have_corpus = true;
    } else if (key == "kb") {
      if (!value.empty()) cfg.kb = path(value);
    } else if (key == "representation") {
      auto r = parse_representation(value);
      if (!r) detail::bad_value(key, value, "T1, T2, T3 or T4");
      cfg.representation = *r;
    } else if (key == "approach") {
      cfg.approach = detail::parse_approach_or_baseline(key, value);
    } else if (key == "approaches") {
      std::vector<std::string> seen;
      std::size_t start = 0;
      while (start <= value.size()) {
        auto comma = value.find(',', start);
        std::string item = detail::trim(std::string_view(value).substr(
            start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) {
          auto parsed = detail::parse_approach_or_baseline(key, item);
          if (std::find(seen.begin(), seen.end(), item) != seen.end()) {
            cfg.warnings.push_back("approach '" + item + "' listed more than once; keeping the first");
          } else {
            seen.push_back(item);
            cfg.approaches.push_back(parsed);
          }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else if (key == "classifier") {
      auto c = parse_classifier(value);
      if (!c) detail::bad_value(key, value, "nb or svm");
      cfg.classifier = *c;
    } else if (key == "k_folds") {
      cfg.k_folds = detail::parse_unsigned(key, value);
    } else if (key == "seed") {
      cfg.seed = detail::parse_unsigned(key, value);
    } else if (key == "nb.alpha") {
      cfg.nb_alpha = detail::parse_double(key, value);
    } else if (key == "svm.C") {
      cfg.svm_c = detail::parse_double(key, value);
    } else if (key == "svm.tol") {
      cfg.svm_tol = detail::parse_double(key, value);
    } else if (key == "svm.max_epochs") {
      cfg.svm_max_epochs = detail::parse_unsigned(key, value);
    } else if (key == "filter_tau") {
      cfg.filter_tau = detail::parse_double(key, value);
    } else if (key == "stem_enrichment") {
      cfg.stem_enrichment = detail::parse_bool(key, value);
    } else if (key == "min_df") {
      cfg.min_df = detail::parse_unsigned(key, value);
    } else if (key == "strip_headers") {
      cfg.strip_headers = detail::parse_bool(key, value);
    } else if (key == "threads") {
      cfg.threads = detail::parse_unsigned(key, value);
    } else if (key == "stopwords") {
      cfg.stopwords = path(value);
    } else if (key == "nouns") {
      cfg.nouns = path(value);
    } else if (key == "gazetteer") {
      cfg.gazetteer = path(value);
    } else if (key == "entity_map") {
      cfg.entity_map = path(value);
    } else {
      throw Error(ErrorCode::kConfigInvalid, "unknown config key '" + key + "'");
    }
  }

  if (!have_corpus) throw Error(ErrorCode::kConfigInvalid, "config needs a 'corpus' path");
  if (!(cfg.nb_alpha > 0.0)) throw Error(ErrorCode::kConfigInvalid, "nb.alpha must be > 0");
  if (!(cfg.svm_c > 0.0)) throw Error(ErrorCode::kConfigInvalid, "svm.C must be > 0");
  if (!(cfg.svm_tol > 0.0)) throw Error(ErrorCode::kConfigInvalid, "svm.tol must be > 0");
  if (cfg.svm_max_epochs == 0) throw Error(ErrorCode::kConfigInvalid, "svm.max_epochs must be >= 1");
  if (!(cfg.filter_tau > 0.0 && cfg.filter_tau <= 1.0)) {
    throw Error(ErrorCode::kConfigInvalid, "filter_tau must lie in (0, 1]");
  }
  if (cfg.k_folds < 2) throw Error(ErrorCode::kConfigInvalid, "k_folds must be >= 2");
  if (cfg.min_df < 1) throw Error(ErrorCode::kConfigInvalid, "min_df must be >= 1");

  const bool needs_kb = cfg.approach.has_value() ||
                        std::any_of(cfg.approaches.begin(), cfg.approaches.end(), [](const auto& a) { return a.has_value(); });
  if (needs_kb && !cfg.kb) {
    throw Error(ErrorCode::kConfigKbRequired, "enrichment approaches need a 'kb' path");
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "config file '" + path.string() + "' not found");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

}  // namespace kbtc
