#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kbtc/error.hpp"
#include "kbtc/features.hpp"

namespace kbtc {

struct Prediction {
  std::size_t label;
  std::vector<double> scores;  // per class
};

// Multinomial Naive Bayes with additive (Laplace) smoothing, in log space.
class NbModel {
 public:
  std::size_t num_classes() const noexcept { return log_prior_.size(); }
  std::size_t vocab_size() const noexcept { return vocab_size_; }
  double alpha() const noexcept { return alpha_; }
  double log_prior(std::size_t c) const { return log_prior_.at(c); }
  double log_likelihood(std::size_t c, TermId t) const { return log_likelihood_.at(c * vocab_size_ + t); }
  double class_token_total(std::size_t c) const { return class_totals_.at(c); }

  // score_c = log_prior_c + sum_t tf_t * log_likelihood_{c,t}; ties go to
  // the lowest class index.
  Prediction predict(const SparseVector& counts) const {
    Prediction p{0, std::vector<double>(num_classes())};
    for (std::size_t c = 0; c < num_classes(); ++c) {
      double s = log_prior_[c];
      const double* row = log_likelihood_.data() + c * vocab_size_;
      for (const auto& e : counts) s += e.weight * row[e.id];
      p.scores[c] = s;
      if (s > p.scores[p.label]) p.label = c;
    }
    return p;
  }

  static NbModel train(std::span<const SparseVector> vectors, std::span<const std::size_t> labels,
                       std::size_t num_classes, std::size_t vocab_size, double alpha = 1.0) {
    if (vectors.size() != labels.size()) {
      throw Error(ErrorCode::kLengthMismatch, "vectors and labels differ in length");
    }
    if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
    if (num_classes == 0 || vocab_size == 0) {
      throw Error(ErrorCode::kInvalidArgument, "need at least one class and one term");
    }

    NbModel m;
    m.alpha_ = alpha;
    m.vocab_size_ = vocab_size;
    std::vector<std::size_t> docs_per_class(num_classes, 0);
    std::vector<double> counts(num_classes * vocab_size, 0.0);
    m.class_totals_.assign(num_classes, 0.0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const std::size_t c = labels[i];
      if (c >= num_classes) throw Error(ErrorCode::kInvalidArgument, "label out of range");
      ++docs_per_class[c];
      for (const auto& e : vectors[i]) {
        if (e.id >= vocab_size) throw Error(ErrorCode::kInvalidArgument, "term id out of range");
        counts[c * vocab_size + e.id] += e.weight;
        m.class_totals_[c] += e.weight;
      }
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
      if (docs_per_class[c] == 0) {
        throw Error(ErrorCode::kEmptyClass, "class " + std::to_string(c) + " has no training documents");
      }
    }

    const double n = static_cast<double>(vectors.size());
    m.log_prior_.resize(num_classes);
    m.log_likelihood_.resize(num_classes * vocab_size);
    for (std::size_t c = 0; c < num_classes; ++c) {
      m.log_prior_[c] = std::log(static_cast<double>(docs_per_class[c]) / n);
      const double log_denominator = std::log(m.class_totals_[c] + alpha * static_cast<double>(vocab_size));
      for (std::size_t t = 0; t < vocab_size; ++t) {
        m.log_likelihood_[c * vocab_size + t] = std::log(counts[c * vocab_size + t] + alpha) - log_denominator;
      }
    }
    return m;
  }

 private:
  std::vector<double> log_prior_;
  std::vector<double> log_likelihood_;  // row-major [class][term]
  std::vector<double> class_totals_;
  std::size_t vocab_size_ = 0;
  double alpha_ = 1.0;
};

inline NbModel train_nb(std::span<const SparseVector> vectors, std::span<const std::size_t> labels,
                        std::size_t num_classes, std::size_t vocab_size, double alpha = 1.0) {
  return NbModel::train(vectors, labels, num_classes, vocab_size, alpha);
}

inline Prediction predict_nb(const NbModel& model, const SparseVector& counts) {
  return model.predict(counts);
}

}  // namespace kbtc
