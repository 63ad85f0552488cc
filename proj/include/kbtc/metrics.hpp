#pragma once

#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "kbtc/error.hpp"

namespace kbtc {

struct ClassCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

struct FScores {
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_f = 0.0;
  double macro_f = 0.0;
  std::vector<ClassScores> per_class;
};

// Single-label multiclass counts: a wrong prediction is a false positive for
// the predicted class and a false negative for the true class.
inline std::vector<ClassCounts> confusion_counts(std::span<const std::size_t> predictions,
                                                 std::span<const std::size_t> truth, std::size_t num_classes) {
  if (predictions.size() != truth.size()) {
    throw Error(ErrorCode::kLengthMismatch, "predictions and truth differ in length");
  }
  std::vector<ClassCounts> counts(num_classes);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predictions[i] >= num_classes || truth[i] >= num_classes) {
      throw Error(ErrorCode::kInvalidArgument, "label out of range");
    }
    if (predictions[i] == truth[i]) {
      ++counts[truth[i]].tp;
    } else {
      ++counts[predictions[i]].fp;
      ++counts[truth[i]].fn;
    }
  }
  return counts;
}

namespace detail {

inline double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

inline ClassScores scores_from(double tp, double fp, double fn) {
  ClassScores s;
  s.precision = safe_ratio(tp, tp + fp);
  s.recall = safe_ratio(tp, tp + fn);
  s.f = safe_ratio(2.0 * s.precision * s.recall, s.precision + s.recall);
  return s;
}

}  // namespace detail

// Empty denominators give 0. Macro-F averages per-class F; micro pools the
// counts first.
inline FScores micro_macro_f(std::span<const ClassCounts> counts) {
  FScores out;
  double tp = 0, fp = 0, fn = 0;
  for (const auto& c : counts) {
    out.per_class.push_back(detail::scores_from(c.tp, c.fp, c.fn));
    out.macro_f += out.per_class.back().f;
    tp += c.tp;
    fp += c.fp;
    fn += c.fn;
  }
  if (!counts.empty()) out.macro_f /= static_cast<double>(counts.size());
  const auto pooled = detail::scores_from(tp, fp, fn);
  out.micro_precision = pooled.precision;
  out.micro_recall = pooled.recall;
  out.micro_f = pooled.f;
  return out;
}

// 100 * (value - baseline) / baseline.
inline double percent_improvement(double value, double baseline) {
  if (!(baseline > 0.0)) throw Error(ErrorCode::kZeroBaseline, "baseline must be positive");
  return 100.0 * (value - baseline) / baseline;
}

// Two decimals with explicit sign, e.g. "+5.88" or "-12.49".
inline std::string format_percent(double percent) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.2f", percent);
  std::string s(buf);
  if (s == "-0.00") s = "+0.00";
  return s;
}

}  // namespace kbtc
