#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "kbtc/error.hpp"
#include "kbtc/utf8.hpp"

namespace kbtc {

struct Document {
  std::string id;
  std::string raw_text;
  std::optional<std::string> label;
};

// An immutable set of labeled documents over an ordered, duplicate-free
// category list. Labels are also kept as indices into categories().
class LabeledCorpus {
 public:
  LabeledCorpus(std::vector<Document> documents, std::vector<std::string> categories)
      : documents_(std::move(documents)), categories_(std::move(categories)) {
    if (categories_.empty()) {
      throw Error(ErrorCode::kEmptyCorpus, "corpus has no categories");
    }
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t c = 0; c < categories_.size(); ++c) {
      if (!index.emplace(categories_[c], c).second) {
        throw Error(ErrorCode::kInvalidArgument, "duplicate category '" + categories_[c] + "'");
      }
    }
    std::set<std::string_view> ids;
    labels_.reserve(documents_.size());
    for (const auto& doc : documents_) {
      if (!ids.insert(doc.id).second) {
        throw Error(ErrorCode::kInvalidArgument, "duplicate document id '" + doc.id + "'");
      }
      if (!doc.label) {
        throw Error(ErrorCode::kInvalidArgument, "document '" + doc.id + "' has no label");
      }
      auto it = index.find(*doc.label);
      if (it == index.end()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "document '" + doc.id + "' has unknown label '" + *doc.label + "'");
      }
      labels_.push_back(it->second);
    }
  }

  const std::vector<Document>& documents() const noexcept { return documents_; }
  const std::vector<std::string>& categories() const noexcept { return categories_; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return documents_.size(); }
  std::size_t num_classes() const noexcept { return categories_.size(); }

  friend bool operator==(const LabeledCorpus& a, const LabeledCorpus& b) {
    if (a.categories_ != b.categories_ || a.documents_.size() != b.documents_.size()) return false;
    for (std::size_t i = 0; i < a.documents_.size(); ++i) {
      const auto& x = a.documents_[i];
      const auto& y = b.documents_[i];
      if (x.id != y.id || x.raw_text != y.raw_text || x.label != y.label) return false;
    }
    return true;
  }

 private:
  std::vector<Document> documents_;
  std::vector<std::string> categories_;
  std::vector<std::size_t> labels_;
};

struct CorpusLoadOptions {
  // Drop everything up to and including the first blank line (newsgroup
  // message headers). Off by default: the text is used as stored.
  bool strip_headers = false;
};

struct LoadedCorpus {
  LabeledCorpus corpus;
  // Number of ill-formed UTF-8 sequences replaced with U+FFFD.
  std::size_t decode_replacements = 0;
};

inline std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

inline std::string strip_message_headers(const std::string& text) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line(text.data() + pos, (eol == std::string::npos ? text.size() : eol) - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) return eol == std::string::npos ? std::string{} : text.substr(eol + 1);
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return text;
}

// Directory-per-category layout: every immediate subdirectory of `root` is a
// category and every regular file inside it is one document with id
// "category/filename". Categories and files are visited in byte-lexicographic
// order.
inline LoadedCorpus load_corpus(const std::filesystem::path& root,
                                const CorpusLoadOptions& options = {}) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorCode::kNotFound, "corpus root '" + root.string() + "' not found");
  }

  std::vector<std::string> categories;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) categories.push_back(entry.path().filename().string());
  }
  if (categories.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus root '" + root.string() + "' has no category subdirectories");
  }
  std::sort(categories.begin(), categories.end());

  std::vector<Document> documents;
  std::size_t replacements = 0;
  for (const auto& category : categories) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(root / category)) {
      if (entry.is_regular_file()) files.push_back(entry.path().filename().string());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      auto decoded = decode_utf8_lossy(read_file_bytes(root / category / file));
      replacements += decoded.replacements;
      std::string text = options.strip_headers ? strip_message_headers(decoded.text)
                                               : std::move(decoded.text);
      documents.push_back(Document{category + "/" + file, std::move(text), category});
    }
  }
  return LoadedCorpus{LabeledCorpus(std::move(documents), std::move(categories)), replacements};
}

// Per-category document counts, in category order.
inline std::map<std::string, std::size_t> corpus_stats(const LabeledCorpus& corpus) {
  std::map<std::string, std::size_t> counts;
  for (const auto& category : corpus.categories()) counts[category] = 0;
  for (std::size_t label : corpus.labels()) ++counts[corpus.categories()[label]];
  return counts;
}

}  // namespace kbtc
