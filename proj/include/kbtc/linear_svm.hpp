#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "kbtc/error.hpp"
#include "kbtc/features.hpp"
#include "kbtc/naive_bayes.hpp"
#include "kbtc/parallel.hpp"
#include "kbtc/random.hpp"

namespace kbtc {

struct SvmOptions {
  double C = 1.0;
  double tol = 1e-3;
  std::size_t max_epochs = 1000;
  std::uint64_t seed = 1;
  // Keep dual variables and the per-epoch dual objective on the result.
  bool keep_trace = false;
};

// Linear soft-margin machine without bias: sign(w . x).
struct BinarySvm {
  std::vector<double> weights;
  double C = 1.0;
  double tol = 1e-3;
  std::size_t epochs = 0;
  bool converged = false;
  double final_violation = 0.0;
  // Filled only with SvmOptions::keep_trace.
  std::vector<double> alpha;
  std::vector<double> dual_objective;

  double decision(const SparseVector& x) const { return dot(x, weights); }
};

// Dual coordinate descent for the L1-loss (hinge) linear SVM
//   min_w  1/2 |w|^2 + C sum_i max(0, 1 - y_i w.x_i)
// through its dual  max_a  sum_i a_i - 1/2 |sum_i a_i y_i x_i|^2, 0 <= a_i <= C.
// Each epoch visits the coordinates in a fresh seeded permutation; training
// stops once the largest projected-gradient magnitude drops below tol.
inline BinarySvm train_binary_svm(std::span<const SparseVector> vectors, std::span<const int> y,
                                  std::size_t dimension, const SvmOptions& options = {}) {
  if (vectors.size() != y.size()) throw Error(ErrorCode::kLengthMismatch, "vectors and labels differ in length");
  if (!(options.C > 0.0)) throw Error(ErrorCode::kInvalidArgument, "C must be positive");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  bool has_pos = false, has_neg = false;
  for (int label : y) {
    if (label == 1) {
      has_pos = true;
    } else if (label == -1) {
      has_neg = true;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "binary labels must be +1 or -1");
    }
  }
  if (!has_pos || !has_neg) throw Error(ErrorCode::kDegenerateLabels, "binary SVM needs both label signs");

  const std::size_t n = vectors.size();
  const double C = options.C;
  BinarySvm svm;
  svm.C = C;
  svm.tol = options.tol;
  svm.weights.assign(dimension, 0.0);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : vectors[i]) {
      if (e.id >= dimension) throw Error(ErrorCode::kInvalidArgument, "term id out of range");
    }
    diag[i] = squared_norm(vectors[i]);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(options.seed);
  auto& w = svm.weights;
  [[maybe_unused]] double previous_dual = 0.0;

  for (std::size_t epoch = 0; epoch < options.max_epochs; ++epoch) {
    fisher_yates_shuffle(std::span<std::size_t>(order), rng);
    double max_violation = 0.0;
    for (std::size_t i : order) {
      const double yi = y[i];
      const double g = yi * dot(vectors[i], w) - 1.0;
      double pg = g;
      if (alpha[i] <= 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] >= C) {
        pg = std::max(g, 0.0);
      }
      max_violation = std::max(max_violation, std::abs(pg));
      if (pg == 0.0) continue;

      const double old = alpha[i];
      // A zero example only enters the dual through its linear term.
      const double updated = diag[i] > 0.0 ? std::clamp(old - g / diag[i], 0.0, C) : C;
      alpha[i] = updated;
      const double delta = (updated - old) * yi;
      if (delta != 0.0) {
        for (const auto& e : vectors[i]) w[e.id] += delta * e.weight;
      }
      assert(alpha[i] >= 0.0 && alpha[i] <= C);
    }
    svm.epochs = epoch + 1;
    svm.final_violation = max_violation;

#ifndef NDEBUG
    const double dual = std::accumulate(alpha.begin(), alpha.end(), 0.0) -
                        0.5 * std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
    assert(dual >= previous_dual - 1e-9 * std::max(1.0, std::abs(dual)));
    previous_dual = dual;
#endif
    if (options.keep_trace) {
      svm.dual_objective.push_back(std::accumulate(alpha.begin(), alpha.end(), 0.0) -
                                   0.5 * std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    }
    if (max_violation < options.tol) {
      svm.converged = true;
      break;
    }
  }
  if (options.keep_trace) svm.alpha = std::move(alpha);
  return svm;
}

// One binary machine per class (class c against the rest).
struct SvmModel {
  std::vector<BinarySvm> machines;

  std::size_t num_classes() const noexcept { return machines.size(); }

  // argmax_c w_c . x; ties go to the lowest class index.
  Prediction predict(const SparseVector& x) const {
    Prediction p{0, std::vector<double>(machines.size())};
    for (std::size_t c = 0; c < machines.size(); ++c) {
      p.scores[c] = machines[c].decision(x);
      if (p.scores[c] > p.scores[p.label]) p.label = c;
    }
    return p;
  }
};

inline SvmModel train_ovr(std::span<const SparseVector> vectors, std::span<const std::size_t> labels,
                          std::size_t num_classes, std::size_t dimension, const SvmOptions& options = {},
                          std::size_t max_threads = 0) {
  if (vectors.size() != labels.size()) throw Error(ErrorCode::kLengthMismatch, "vectors and labels differ in length");
  std::vector<std::size_t> per_class(num_classes, 0);
  for (std::size_t label : labels) {
    if (label >= num_classes) throw Error(ErrorCode::kInvalidArgument, "label out of range");
    ++per_class[label];
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (per_class[c] == 0) {
      throw Error(ErrorCode::kEmptyClass, "class " + std::to_string(c) + " has no training documents");
    }
  }

  SvmModel model;
  model.machines.resize(num_classes);
  parallel_for(
      num_classes,
      [&](std::size_t c) {
        std::vector<int> y(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == c ? 1 : -1;
        SvmOptions machine_options = options;
        machine_options.seed = options.seed + c;
        model.machines[c] = train_binary_svm(vectors, y, dimension, machine_options);
      },
      max_threads);
  return model;
}

inline Prediction predict_svm(const SvmModel& model, const SparseVector& x) { return model.predict(x); }

}  // namespace kbtc
