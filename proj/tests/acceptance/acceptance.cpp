// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Criterion 6 needs a local copy of the 20 Newsgroups
// corpus (one directory per newsgroup):
//
//   acceptance [--20ng DIR] [--strip-headers]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "kbtc/config.hpp"
#include "kbtc/folds.hpp"
#include "kbtc/linear_svm.hpp"
#include "kbtc/metrics.hpp"
#include "kbtc/naive_bayes.hpp"
#include "kbtc/porter_stemmer.hpp"
#include "kbtc/report.hpp"
#include "kbtc/session.hpp"
#include "kbtc/ttest.hpp"
#include "oracles.hpp"

namespace {

using namespace kbtc;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// Collects failed checks; the first few are kept for the report line.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 3) failures_.push_back(what);
    ++failed_;
  }
  std::size_t checks() const { return checks_; }
  Outcome outcome(const std::string& summary) const {
    if (failed_ == 0) return {Status::kPass, summary + fmt(" [%zu checks]", checks_)};
    std::string detail = fmt("%zu of %zu checks failed:", failed_, checks_);
    for (const auto& f : failures_) detail += " " + f + ";";
    return {Status::kFail, detail};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

// --- 1 -------------------------------------------------------------------

Outcome improvement_arithmetic() {
  struct Row {
    double value, baseline, expected;
  };
  // SVM rows: baseline 0.868 / 0.865
  const std::vector<Row> rows = {
      {0.919, 0.868, 5.88},   {0.920, 0.865, 6.36},   {0.770, 0.868, -11.29}, {0.757, 0.865, -12.49},
      {0.784, 0.868, -9.68},  {0.768, 0.865, -11.21}, {0.843, 0.868, -2.88},  {0.830, 0.865, -4.05},
      {0.851, 0.868, -1.96},  {0.839, 0.865, -3.01},
      // NB best against NB baseline
      {0.881, 0.693, 27.12},  {0.877, 0.681, 28.78},
  };
  Checker check;
  for (const auto& r : rows) {
    const double got = percent_improvement(r.value, r.baseline);
    check.expect(std::abs(got - r.expected) <= 0.01 + 1e-9,
                 fmt("(%.3f, %.3f) -> %s, expected %+.2f", r.value, r.baseline, format_percent(got).c_str(), r.expected));
  }
  // the 27.12 entry is also quoted as 27.13 (rounding of 27.128)
  check.expect(format_percent(percent_improvement(0.881, 0.693)) == "+27.13", "rounded 0.881/0.693");
  return check.outcome("12 published improvements reproduced within 0.01");
}

// --- 2 -------------------------------------------------------------------

Outcome classifier_oracles() {
  Checker check;
  std::mt19937 rng(20240601);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = oracle::random_nb_instance(rng);
    std::vector<SparseVector> x;
    for (const auto& d : r.docs) x.push_back(oracle::to_counts(d));
    const auto model = train_nb(x, r.labels, r.classes, r.terms, 1.0);
    const auto pred = predict_nb(model, oracle::to_counts(r.test));
    const auto probs = oracle::nb_probabilities(r, 1.0L);
    std::size_t best = 0;
    for (std::size_t c = 1; c < probs.size(); ++c) {
      if (probs[c] > probs[best]) best = c;
    }
    // an exact tie in long double may resolve either way in double
    const bool agree = pred.label == best || std::abs(probs[pred.label] / probs[best] - 1.0L) < 1e-12L;
    check.expect(agree, fmt("NB instance %d predicted %zu, oracle %zu", trial, pred.label, best));
  }

  std::mt19937_64 rng64(20240602);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracle::random_separable(rng64, 2 + trial % 19);
    SvmOptions options;
    options.C = 100.0;
    options.tol = 1e-6;
    options.max_epochs = 100000;
    const auto svm = train_binary_svm(p.x, p.y, 2, options);
    const auto w = oracle::svm_dual_qp(p, 2, options.C);
    const double rel = std::hypot(svm.weights[0] - w[0], svm.weights[1] - w[1]) / std::hypot(w[0], w[1]);
    worst = std::max(worst, rel);
    check.expect(rel <= 1e-2, fmt("SVM instance %d relative error %.2e", trial, rel));
  }
  return check.outcome(fmt("NB matches the long-double oracle on 100 instances; SVM worst relative error %.1e on 20",
                           worst));
}

// --- 3 -------------------------------------------------------------------

Outcome metric_oracles() {
  Checker check;
  std::mt19937_64 rng(20240603);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t classes = 1 + rng() % 8;
    const std::size_t n = 1 + rng() % 200;
    std::vector<std::size_t> pred(n), truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = rng() % classes;
      pred[i] = rng() % 2 ? truth[i] : rng() % classes;
    }
    const auto f = micro_macro_f(confusion_counts(pred, truth, classes));
    const auto o = oracle::f_scores(pred, truth, classes);
    check.expect(std::abs(f.micro_f - o.micro) < 1e-12 && std::abs(f.macro_f - o.macro) < 1e-12,
                 fmt("F scores differ on list %d", trial));
  }
  double worst = 0.0;
  for (double df : {4.0, 9.0, 19.0}) {
    const boost::math::students_t dist(df);
    for (double t : {0.5, 1.0, 2.262, 3.0}) {
      const double expected = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
      const double got = student_t_two_tailed_p(t, df);
      worst = std::max(worst, std::abs(got - expected));
      check.expect(std::abs(got - expected) <= 5e-4, fmt("p(t=%.3f, df=%.0f) = %.6f vs %.6f", t, df, got, expected));
    }
  }
  check.expect(std::abs(student_t_two_tailed_p(2.262, 9) - 0.05) <= 5e-4, "df=9 critical value");
  return check.outcome(fmt("200 random F recomputations agree; 12 p-values within %.1e", worst));
}

// --- 4 -------------------------------------------------------------------

// Observed once on the shipped synthetic data (seed 7, 10 folds) and pinned.
constexpr double kPinnedBaselineMacroF = 0.618653;
constexpr double kPinnedA4MacroF = 0.979798;
constexpr double kPinnedTolerance = 5e-7;

Outcome enrichment_directionality() {
  Checker check;
  const auto config = load_config(KBTC_DATA_DIR "/synthetic/a4_nb.conf");
  check.expect(config.classifier == ClassifierKind::kNaiveBayes && config.seed == 7 && config.k_folds == 10,
               "config is NB, seed 7, 10 folds");
  const Session session(config);
  check.expect(session.corpus().size() == 200 && session.corpus().num_classes() == 4, "corpus is 4 x 50");
  check.expect(session.index() && session.index()->size() >= 40, "KB has >= 40 articles");
  const auto base = session.run(std::nullopt);
  const auto a4 = session.run(Approach::kA4);
  const double margin = a4.macro_f - base.macro_f;
  check.expect(margin >= 0.05, fmt("A4 macro-F %.6f vs baseline %.6f", a4.macro_f, base.macro_f));
  check.expect(std::abs(base.macro_f - kPinnedBaselineMacroF) <= kPinnedTolerance,
               fmt("baseline macro-F %.9f drifted from pinned %.6f", base.macro_f, kPinnedBaselineMacroF));
  check.expect(std::abs(a4.macro_f - kPinnedA4MacroF) <= kPinnedTolerance,
               fmt("A4 macro-F %.9f drifted from pinned %.6f", a4.macro_f, kPinnedA4MacroF));
  return check.outcome(fmt("NB macro-F baseline %.4f -> A4 %.4f (+%.2f points, %s%%)", base.macro_f, a4.macro_f,
                           100.0 * margin, format_percent(percent_improvement(a4.macro_f, base.macro_f)).c_str()));
}

// --- 5 -------------------------------------------------------------------

Outcome invariant_suite() {
  Checker check;

  // stemmer vectors
  std::ifstream vectors(KBTC_TEST_DATA_DIR "/porter_vectors.tsv");
  std::size_t words = 0;
  for (std::string line; std::getline(vectors, line);) {
    const auto t1 = line.find('\t');
    const auto t2 = line.find('\t', t1 + 1);
    if (t2 == std::string::npos) continue;
    ++words;
    const std::string word = line.substr(0, t1);
    check.expect(porter_stem(word) == line.substr(t1 + 1, t2 - t1 - 1), "stem of " + word);
  }
  check.expect(words >= 100, fmt("only %zu stemmer vectors", words));

  // folds
  std::mt19937_64 rng(20240605);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng() % 9;
    std::vector<std::size_t> labels;
    for (std::size_t c = 0, classes = 1 + rng() % 5; c < classes; ++c) labels.insert(labels.end(), k + rng() % 20, c);
    const auto plan = stratified_folds(labels, k, rng());
    std::vector<int> seen(labels.size(), 0);
    std::vector<std::vector<std::size_t>> per_class(k);
    for (std::size_t f = 0; f < k; ++f) {
      per_class[f].assign(labels.back() + 1, 0);
      for (auto i : plan.folds[f]) {
        ++seen[i];
        ++per_class[f][labels[i]];
      }
    }
    check.expect(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }), "folds partition");
    for (std::size_t c = 0; c <= labels.back(); ++c) {
      std::size_t lo = SIZE_MAX, hi = 0;
      for (std::size_t f = 0; f < k; ++f) {
        lo = std::min(lo, per_class[f][c]);
        hi = std::max(hi, per_class[f][c]);
      }
      check.expect(hi - lo <= 1, "fold stratification");
    }
  }

  // NB normalization
  std::mt19937 rng32(20240606);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = oracle::random_nb_instance(rng32);
    std::vector<SparseVector> x;
    for (const auto& d : r.docs) x.push_back(oracle::to_counts(d));
    const auto m = train_nb(x, r.labels, r.classes, r.terms, 0.5);
    double priors = 0;
    for (std::size_t c = 0; c < r.classes; ++c) {
      priors += std::exp(m.log_prior(c));
      double likelihoods = 0;
      for (TermId t = 0; t < r.terms; ++t) likelihoods += std::exp(m.log_likelihood(c, t));
      check.expect(std::abs(likelihoods - 1.0) < 1e-9, "NB likelihoods sum to 1");
    }
    check.expect(std::abs(priors - 1.0) < 1e-9, "NB priors sum to 1");
  }

  // SVM dual box and monotone dual
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<SparseVector> x;
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) {
      SparseVector v;
      for (TermId t = 0; t < 4; ++t) {
        if (rng() % 2) v.push_back({t, u(rng)});
      }
      x.push_back(v);
      y.push_back(i == 0 ? 1 : i == 1 ? -1 : (rng() % 2 ? 1 : -1));
    }
    SvmOptions options;
    options.C = 0.5;
    options.keep_trace = true;
    options.seed = trial;
    const auto svm = train_binary_svm(x, y, 4, options);
    for (double a : svm.alpha) check.expect(a >= 0.0 && a <= options.C, "alpha inside [0, C]");
    for (std::size_t e = 1; e < svm.dual_objective.size(); ++e) {
      check.expect(svm.dual_objective[e] >= svm.dual_objective[e - 1] - 1e-9 * std::max(1.0, std::abs(svm.dual_objective[e])),
                   "dual objective non-decreasing");
    }
  }

  // retrieval against brute force
  const StopList stop = StopList::english();
  for (int trial = 0; trial < 100; ++trial) {
    const auto kb = oracle::random_kb(rng32, 1 + rng32() % 50);
    const KbIndex index(kb, stop);
    TokenList query;
    for (int i = 1 + rng32() % 6; i > 0; --i) query.push_back(process_t1(kb[rng32() % kb.size()].title, stop)[0]);
    const std::size_t k = 1 + rng32() % 20;
    const auto hits = index.query_top_k(query, k);
    const auto expected = oracle::brute_force_top_k(kb, query, k, stop);
    bool same = hits.size() == expected.size();
    for (std::size_t i = 0; same && i < hits.size(); ++i) {
      same = std::abs(hits[i].score - expected[i].second) < 1e-9 &&
             (hits[i].article->id == expected[i].first || std::abs(hits[i].score - expected[i].second) < 1e-12);
    }
    check.expect(same, fmt("retrieval trial %d", trial));
  }

  // end-to-end determinism across sessions and thread counts
  auto config = load_config(KBTC_DATA_DIR "/synthetic/a4_svm.conf");
  std::string previous;
  for (std::size_t threads : {1u, 3u, 0u}) {
    config.threads = threads;
    const auto report = Session(config).run(config.approach);
    const std::string bytes = format_report_csv({to_row(report)}) + format_folds_csv(report);
    if (!previous.empty()) check.expect(bytes == previous, fmt("report bytes differ with %zu threads", threads));
    previous = bytes;
  }
  return check.outcome(fmt("stemmer (%zu words), folds, NB, SVM dual, retrieval, determinism", words));
}

// --- 6 -------------------------------------------------------------------

Outcome newsgroups_envelope(const std::string& root, bool strip_headers) {
  if (root.empty()) return {Status::kSkip, "no corpus supplied (run with --20ng DIR)"};
  Checker check;
  ExperimentConfig config = parse_config("corpus = " + root + "\n");
  config.strip_headers = strip_headers;
  config.classifier = ClassifierKind::kSvm;
  const auto svm = Session(config).run(std::nullopt);
  config.classifier = ClassifierKind::kNaiveBayes;
  const auto nb = Session(config).run(std::nullopt);
  check.expect(svm.micro_f >= 0.80 && svm.micro_f <= 0.93, fmt("SVM micro-F %.4f outside [0.80, 0.93]", svm.micro_f));
  check.expect(nb.micro_f >= 0.75 && nb.micro_f <= 0.92, fmt("NB micro-F %.4f outside [0.75, 0.92]", nb.micro_f));
  return check.outcome(fmt("baseline micro-F: SVM %.4f, NB %.4f", svm.micro_f, nb.micro_f));
}

}  // namespace

int main(int argc, char** argv) {
  std::string newsgroups;
  bool strip_headers = false;
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--20ng" && i + 1 < argc) {
      newsgroups = argv[++i];
    } else if (arg == "--strip-headers") {
      strip_headers = true;
    } else {
      std::fprintf(stderr, "usage: acceptance [--20ng DIR] [--strip-headers]\n");
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 improvement arithmetic", improvement_arithmetic},
      {"2 classifier oracles", classifier_oracles},
      {"3 metric and t-test oracles", metric_oracles},
      {"4 enrichment directionality", enrichment_directionality},
      {"5 invariant suite", invariant_suite},
      {"6 20 Newsgroups envelope", [&] { return newsgroups_envelope(newsgroups, strip_headers); }},
  };

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {Status::kFail, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = outcome.status == Status::kPass ? "PASS" : outcome.status == Status::kFail ? "FAIL" : "SKIP";
    std::printf("%s  %-30s %s (%.2fs)\n", tag, name.c_str(), outcome.detail.c_str(), seconds);
    failed += outcome.status == Status::kFail;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
