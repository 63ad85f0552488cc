#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kbtc {

enum class ErrorCode {
  kNotFound,
  kEmptyCorpus,
  kIoError,
  kMissingTagger,
  kMissingLexicon,
  kDuplicateArticleId,
  kEmptyKb,
  kKbFormat,
  kEmptyVocabulary,
  kEmptyClass,
  kDegenerateLabels,
  kClassTooSmall,
  kLengthMismatch,
  kZeroBaseline,
  kClientUnavailable,
  kInvalidArgument,
  kConfigInvalid,
  kConfigKbRequired,
  kFoldCountMismatch,
  kMatrixNoBaseline,
  kReportFormat,
};

// Stable machine-readable names; the CLI prints these verbatim.
constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return "NOT_FOUND";
    case ErrorCode::kEmptyCorpus: return "EMPTY_CORPUS";
    case ErrorCode::kIoError: return "IO_ERROR";
    case ErrorCode::kMissingTagger: return "MISSING_TAGGER";
    case ErrorCode::kMissingLexicon: return "MISSING_LEXICON";
    case ErrorCode::kDuplicateArticleId: return "DUPLICATE_ARTICLE_ID";
    case ErrorCode::kEmptyKb: return "EMPTY_KB";
    case ErrorCode::kKbFormat: return "KB_FORMAT";
    case ErrorCode::kEmptyVocabulary: return "EMPTY_VOCABULARY";
    case ErrorCode::kEmptyClass: return "EMPTY_CLASS";
    case ErrorCode::kDegenerateLabels: return "DEGENERATE_LABELS";
    case ErrorCode::kClassTooSmall: return "CLASS_TOO_SMALL";
    case ErrorCode::kLengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::kZeroBaseline: return "ZERO_BASELINE";
    case ErrorCode::kClientUnavailable: return "CLIENT_UNAVAILABLE";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kConfigInvalid: return "CONFIG_INVALID";
    case ErrorCode::kConfigKbRequired: return "CONFIG_KB_REQUIRED";
    case ErrorCode::kFoldCountMismatch: return "FOLD_COUNT_MISMATCH";
    case ErrorCode::kMatrixNoBaseline: return "MATRIX_NO_BASELINE";
    case ErrorCode::kReportFormat: return "REPORT_FORMAT";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace kbtc
