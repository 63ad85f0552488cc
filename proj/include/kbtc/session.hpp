#pragma once

#include <memory>
#include <optional>

#include "kbtc/config.hpp"
#include "kbtc/corpus.hpp"
#include "kbtc/enrichment.hpp"
#include "kbtc/experiment.hpp"
#include "kbtc/kb_index.hpp"
#include "kbtc/representation.hpp"

namespace kbtc {

// Everything an experiment config refers to, loaded once and shared by all
// runs of a matrix.
class Session {
 public:
  explicit Session(const ExperimentConfig& config)
      : config_(config), corpus_(load_corpus(config.corpus, CorpusLoadOptions{config.strip_headers})) {
    pipeline_.stoplist = config.stopwords ? StopList::from_file(*config.stopwords) : StopList::english();
    if (config.gazetteer) {
      pipeline_.tagger = std::make_shared<GazetteerTagger>(GazetteerTagger::from_file(*config.gazetteer));
    }
    if (config.nouns) {
      pipeline_.nouns = std::make_shared<WordListNounLexicon>(WordListNounLexicon::from_file(*config.nouns));
    }
    enrichment_.stoplist = pipeline_.stoplist;
    enrichment_.stem_enrichment = config.stem_enrichment;
    if (config.entity_map) {
      enrichment_.entity_client = std::make_shared<FileEntityClient>(FileEntityClient::from_file(*config.entity_map));
    }
    if (config.kb) index_.emplace(load_kb(*config.kb), pipeline_.stoplist);
  }

  const ExperimentConfig& config() const noexcept { return config_; }
  const LabeledCorpus& corpus() const noexcept { return corpus_.corpus; }
  std::size_t decode_replacements() const noexcept { return corpus_.decode_replacements; }
  const TextPipeline& pipeline() const noexcept { return pipeline_; }
  const EnrichmentOptions& enrichment() const noexcept { return enrichment_; }
  const KbIndex* index() const noexcept { return index_ ? &*index_ : nullptr; }

  EvalReport run(std::optional<Approach> approach) const {
    return run_experiment(corpus(), config_.settings_for(approach), pipeline_, index(), enrichment_);
  }

 private:
  ExperimentConfig config_;
  LoadedCorpus corpus_;
  TextPipeline pipeline_;
  EnrichmentOptions enrichment_;
  std::optional<KbIndex> index_;
};

}  // namespace kbtc
