#pragma once

#include <cstdint>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <vector>

#include "kbtc/corpus.hpp"
#include "kbtc/enrichment.hpp"
#include "kbtc/error.hpp"
#include "kbtc/features.hpp"
#include "kbtc/folds.hpp"
#include "kbtc/kb_index.hpp"
#include "kbtc/linear_svm.hpp"
#include "kbtc/metrics.hpp"
#include "kbtc/naive_bayes.hpp"
#include "kbtc/parallel.hpp"
#include "kbtc/representation.hpp"

namespace kbtc {

enum class ClassifierKind { kNaiveBayes, kSvm };

constexpr std::string_view classifier_name(ClassifierKind k) {
  return k == ClassifierKind::kNaiveBayes ? "nb" : "svm";
}

inline std::optional<ClassifierKind> parse_classifier(std::string_view name) {
  if (name == "nb") return ClassifierKind::kNaiveBayes;
  if (name == "svm") return ClassifierKind::kSvm;
  return std::nullopt;
}

struct ExperimentSettings {
  Representation representation = Representation::kT1;
  std::optional<ApproachConfig> approach;  // nullopt = baseline
  ClassifierKind classifier = ClassifierKind::kNaiveBayes;
  std::size_t k_folds = 10;
  std::uint64_t seed = 7;
  double nb_alpha = 1.0;
  SvmOptions svm;
  std::size_t min_df = 1;
  std::size_t max_threads = 0;  // 0 = hardware concurrency

  std::string label() const {
    return approach ? std::string(approach_name(approach->name)) : std::string("baseline");
  }
};

struct EvalReport {
  std::string name;  // "baseline", "A1", ...
  std::vector<std::string> categories;
  std::vector<double> fold_micro_f;
  std::vector<double> fold_macro_f;
  double micro_f = 0.0;  // mean over folds
  double macro_f = 0.0;
  std::vector<ClassScores> per_class;  // mean over folds
  std::optional<double> improvement_micro;
  std::optional<double> improvement_macro;
  std::string baseline_name;
};

// Fills the improvement fields of `report` relative to `baseline`.
inline void attach_baseline(EvalReport& report, double baseline_micro, double baseline_macro,
                            std::string baseline_name = "baseline") {
  report.improvement_micro = percent_improvement(report.micro_f, baseline_micro);
  report.improvement_macro = percent_improvement(report.macro_f, baseline_macro);
  report.baseline_name = std::move(baseline_name);
}

inline void attach_baseline(EvalReport& report, const EvalReport& baseline) {
  attach_baseline(report, baseline.micro_f, baseline.macro_f, baseline.name);
}

// Representation and (optional) enrichment of every document. Enrichment
// uses no labels, so it is computed once for all folds.
inline std::vector<TokenList> prepare_token_streams(const LabeledCorpus& corpus, const ExperimentSettings& settings,
                                                    const TextPipeline& pipeline, const KbIndex* index,
                                                    const EnrichmentOptions& enrichment) {
  if (settings.approach && index == nullptr) {
    throw Error(ErrorCode::kConfigKbRequired, "approach " + settings.label() + " requires a knowledge base");
  }
  std::vector<TokenList> streams(corpus.size());
  parallel_for(
      corpus.size(),
      [&](std::size_t i) {
        TokenList tokens = apply_representation(corpus.documents()[i], settings.representation, pipeline);
        if (settings.approach) tokens = apply_approach(tokens, *settings.approach, *index, enrichment);
        streams[i] = std::move(tokens);
      },
      settings.max_threads);
  return streams;
}

struct FoldOutcome {
  FScores scores;
  std::vector<std::size_t> predictions;
};

inline FoldOutcome evaluate_fold(const std::vector<TokenList>& streams, std::span<const std::size_t> labels,
                                 std::size_t num_classes, std::span<const std::size_t> train,
                                 std::span<const std::size_t> test, const ExperimentSettings& settings,
                                 std::size_t svm_threads) {
  const auto train_streams = train | std::views::transform([&](std::size_t i) -> const TokenList& { return streams[i]; });
  const Vocabulary vocab = Vocabulary::build(train_streams, settings.min_df);
  const bool nb = settings.classifier == ClassifierKind::kNaiveBayes;
  auto vectorize = [&](const TokenList& t) { return nb ? vectorize_count(t, vocab) : vectorize_tfidf(t, vocab); };

  std::vector<SparseVector> train_x;
  std::vector<std::size_t> train_y;
  train_x.reserve(train.size());
  train_y.reserve(train.size());
  for (std::size_t i : train) {
    train_x.push_back(vectorize(streams[i]));
    train_y.push_back(labels[i]);
  }

  FoldOutcome out;
  std::vector<std::size_t> truth;
  truth.reserve(test.size());
  if (nb) {
    const NbModel model = train_nb(train_x, train_y, num_classes, vocab.size(), settings.nb_alpha);
    for (std::size_t i : test) {
      out.predictions.push_back(model.predict(vectorize(streams[i])).label);
      truth.push_back(labels[i]);
    }
  } else {
    const SvmModel model = train_ovr(train_x, train_y, num_classes, vocab.size(), settings.svm, svm_threads);
    for (std::size_t i : test) {
      out.predictions.push_back(model.predict(vectorize(streams[i])).label);
      truth.push_back(labels[i]);
    }
  }
  out.scores = micro_macro_f(confusion_counts(out.predictions, truth, num_classes));
  return out;
}

// Stratified k-fold cross-validation. Every fold builds its own vocabulary
// from its training portion. A failing fold fails the whole experiment.
inline EvalReport run_experiment(const LabeledCorpus& corpus, const ExperimentSettings& settings,
                                 const TextPipeline& pipeline, const KbIndex* index = nullptr,
                                 const EnrichmentOptions& enrichment = {}) {
  const auto streams = prepare_token_streams(corpus, settings, pipeline, index, enrichment);
  const FoldPlan plan = stratified_folds(corpus.labels(), settings.k_folds, settings.seed);
  const std::size_t num_classes = corpus.num_classes();

  std::vector<FScores> fold_scores(plan.size());
  parallel_for(
      plan.size(),
      [&](std::size_t f) {
        const auto train = plan.training_indices(f, corpus.size());
        fold_scores[f] =
            evaluate_fold(streams, corpus.labels(), num_classes, train, plan.folds[f], settings, 1).scores;
      },
      settings.max_threads);

  EvalReport report;
  report.name = settings.label();
  report.categories = corpus.categories();
  report.per_class.assign(num_classes, ClassScores{});
  const double k = static_cast<double>(plan.size());
  for (const auto& s : fold_scores) {
    report.fold_micro_f.push_back(s.micro_f);
    report.fold_macro_f.push_back(s.macro_f);
    report.micro_f += s.micro_f / k;
    report.macro_f += s.macro_f / k;
    for (std::size_t c = 0; c < num_classes; ++c) {
      report.per_class[c].precision += s.per_class[c].precision / k;
      report.per_class[c].recall += s.per_class[c].recall / k;
      report.per_class[c].f += s.per_class[c].f / k;
    }
  }
  return report;
}

}  // namespace kbtc
