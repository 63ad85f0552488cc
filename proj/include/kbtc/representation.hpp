#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "kbtc/corpus.hpp"
#include "kbtc/error.hpp"
#include "kbtc/porter_stemmer.hpp"
#include "kbtc/tokenizer.hpp"

namespace kbtc {

// T1: stop words removed. T2: T1 plus entity tags. T3: T1 restricted to
// nouns. T4: T3 plus entity tags.
enum class Representation { kT1, kT2, kT3, kT4 };

enum class EntityTag { kNone, kPerson, kLocation, kOrganization };

constexpr std::string_view representation_name(Representation r) {
  switch (r) {
    case Representation::kT1: return "T1";
    case Representation::kT2: return "T2";
    case Representation::kT3: return "T3";
    case Representation::kT4: return "T4";
  }
  return "?";
}

inline std::optional<Representation> parse_representation(std::string_view name) {
  if (name == "T1") return Representation::kT1;
  if (name == "T2") return Representation::kT2;
  if (name == "T3") return Representation::kT3;
  if (name == "T4") return Representation::kT4;
  return std::nullopt;
}

// Prefix used when a tagged token is emitted into the feature stream.
constexpr std::string_view entity_tag_prefix(EntityTag tag) {
  switch (tag) {
    case EntityTag::kPerson: return "person";
    case EntityTag::kLocation: return "location";
    case EntityTag::kOrganization: return "organization";
    case EntityTag::kNone: return "";
  }
  return "";
}

inline std::optional<EntityTag> parse_entity_tag(std::string_view name) {
  if (name == "PERSON") return EntityTag::kPerson;
  if (name == "LOCATION") return EntityTag::kLocation;
  if (name == "ORGANIZATION") return EntityTag::kOrganization;
  return std::nullopt;
}

inline std::string render_tagged(EntityTag tag, std::string_view token) {
  std::string out(entity_tag_prefix(tag));
  out += ':';
  out += token;
  return out;
}

// True for tokens produced by render_tagged.
inline bool is_tagged_token(std::string_view token) {
  for (auto tag : {EntityTag::kPerson, EntityTag::kLocation, EntityTag::kOrganization}) {
    auto prefix = entity_tag_prefix(tag);
    if (token.size() > prefix.size() + 1 && token.starts_with(prefix) && token[prefix.size()] == ':') {
      return true;
    }
  }
  return false;
}

class EntityTagger {
 public:
  virtual ~EntityTagger() = default;
  // Tag for a lowercase, unstemmed surface token.
  virtual EntityTag tag(std::string_view surface) const = 0;
};

class NounLexicon {
 public:
  virtual ~NounLexicon() = default;
  virtual bool is_noun(std::string_view surface) const = 0;
};

// Single-token gazetteer: file lines are `surface<TAB>PERSON|LOCATION|ORGANIZATION`.
class GazetteerTagger final : public EntityTagger {
 public:
  GazetteerTagger() = default;
  explicit GazetteerTagger(StringMap<EntityTag> entries) : entries_(std::move(entries)) {}

  static GazetteerTagger from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kNotFound, "gazetteer '" + path.string() + "' not found");
    StringMap<EntityTag> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto tab = line.find('\t');
      auto tag = tab == std::string::npos ? std::nullopt : parse_entity_tag(std::string_view(line).substr(tab + 1));
      if (!tag) {
        throw Error(ErrorCode::kInvalidArgument,
                    path.string() + ":" + std::to_string(line_no) + ": expected surface<TAB>PERSON|LOCATION|ORGANIZATION");
      }
      std::string surface = line.substr(0, tab);
      std::transform(surface.begin(), surface.end(), surface.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      entries[surface] = *tag;
    }
    return GazetteerTagger(std::move(entries));
  }

  EntityTag tag(std::string_view surface) const override {
    auto it = entries_.find(surface);
    return it == entries_.end() ? EntityTag::kNone : it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  StringMap<EntityTag> entries_;
};

// One lowercase surface form per line.
class WordListNounLexicon final : public NounLexicon {
 public:
  WordListNounLexicon() = default;
  explicit WordListNounLexicon(StringSet nouns) : nouns_(std::move(nouns)) {}

  static WordListNounLexicon from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kNotFound, "noun lexicon '" + path.string() + "' not found");
    StringSet nouns;
    for (const auto& token : tokenize(read_file_bytes(path))) nouns.insert(token);
    return WordListNounLexicon(std::move(nouns));
  }

  bool is_noun(std::string_view surface) const override { return nouns_.contains(surface); }
  std::size_t size() const noexcept { return nouns_.size(); }

 private:
  StringSet nouns_;
};

struct TextPipeline {
  StopList stoplist = StopList::english();
  std::shared_ptr<const EntityTagger> tagger;
  std::shared_ptr<const NounLexicon> nouns;
};

// tokenize -> remove stop words -> stem.
inline TokenList process_t1(std::string_view text, const StopList& stoplist) {
  TokenList tokens = remove_stopwords(tokenize(text), stoplist);
  PorterStemmer stemmer;
  for (auto& t : tokens) t = stemmer.stem(t);
  return tokens;
}

// Entity tags replace the plain token; tagging looks at the surface form and
// the emitted token carries the stem. Noun filtering also looks at the
// surface form.
inline TokenList apply_representation(std::string_view raw_text, Representation technique,
                                      const TextPipeline& pipeline) {
  const bool tagging = technique == Representation::kT2 || technique == Representation::kT4;
  const bool noun_filter = technique == Representation::kT3 || technique == Representation::kT4;
  if (tagging && !pipeline.tagger) {
    throw Error(ErrorCode::kMissingTagger,
                std::string(representation_name(technique)) + " requires an entity tagger");
  }
  if (noun_filter && !pipeline.nouns) {
    throw Error(ErrorCode::kMissingLexicon,
                std::string(representation_name(technique)) + " requires a noun lexicon");
  }

  const TokenList surfaces = remove_stopwords(tokenize(raw_text), pipeline.stoplist);
  PorterStemmer stemmer;
  TokenList out;
  out.reserve(surfaces.size());
  for (const auto& surface : surfaces) {
    if (noun_filter && !pipeline.nouns->is_noun(surface)) continue;
    std::string stem = stemmer.stem(surface);
    if (tagging) {
      EntityTag tag = pipeline.tagger->tag(surface);
      if (tag != EntityTag::kNone) {
        out.push_back(render_tagged(tag, stem));
        continue;
      }
    }
    out.push_back(std::move(stem));
  }
  return out;
}

inline TokenList apply_representation(const Document& doc, Representation technique,
                                      const TextPipeline& pipeline) {
  return apply_representation(doc.raw_text, technique, pipeline);
}

}  // namespace kbtc
