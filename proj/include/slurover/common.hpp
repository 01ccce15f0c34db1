// slurover/common.hpp

// Copyright 2026  The slurover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SLUROVER_COMMON_HPP_
#define SLUROVER_COMMON_HPP_

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slurover {

inline constexpr std::string_view kVersion = "0.3.0";

/// Every failure the library can report. The names double as the
/// user-visible error strings (see ErrorName).
enum class ErrorCode {
  // parse_tree
  kEmptyInput,
  kUnbalancedBrackets,
  kRootNotIntent,
  kMultipleRoots,
  kInvalidNesting,
  kInvalidToken,
  kInvalidTree,
  // shared
  kInvalidParams,
  // metrics
  kEmptyReference,
  kEmptyCorpus,
  kEmptyReferencePool,
  // rover
  kMixedUtteranceIds,
  kMissingConfidences,
  // corpus_io
  kMalformedLine,
  kDuplicateId,
  kMissingField,
  kConfidenceLengthMismatch,
  kMissingHypothesis,
  kIoError,
};

constexpr std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kUnbalancedBrackets: return "UnbalancedBrackets";
    case ErrorCode::kRootNotIntent: return "RootNotIntent";
    case ErrorCode::kMultipleRoots: return "MultipleRoots";
    case ErrorCode::kInvalidNesting: return "InvalidNesting";
    case ErrorCode::kInvalidToken: return "InvalidToken";
    case ErrorCode::kInvalidTree: return "InvalidTree";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyReferencePool: return "EmptyReferencePool";
    case ErrorCode::kMixedUtteranceIds: return "MixedUtteranceIds";
    case ErrorCode::kMissingConfidences: return "MissingConfidences";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kConfidenceLengthMismatch: return "ConfidenceLengthMismatch";
    case ErrorCode::kMissingHypothesis: return "MissingHypothesis";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &detail)
      : std::runtime_error(std::string(ErrorName(code)) +
                           (detail.empty() ? "" : ": " + detail)),
        code_(code) {}
  explicit Error(ErrorCode code) : Error(code, "") {}

  ErrorCode code() const { return code_; }
  std::string_view name() const { return ErrorName(code_); }

 private:
  ErrorCode code_;
};

/// An unreduced count ratio. Metrics keep numerator and denominator so
/// reports can be compared exactly; Value() is only for display.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double Value() const {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  }
  std::string ToString() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }
  /// Fixed four-decimal rendering used by every report writer.
  std::string Fixed4() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", Value());
    return buf;
  }
  static Rational Parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
      throw Error(ErrorCode::kMalformedLine, "bad ratio '" + std::string(text) + "'");
    Rational r;
    try {
      r.num = std::stoull(std::string(text.substr(0, slash)));
      r.den = std::stoull(std::string(text.substr(slash + 1)));
    } catch (const std::exception &) {
      throw Error(ErrorCode::kMalformedLine, "bad ratio '" + std::string(text) + "'");
    }
    return r;
  }
  friend bool operator==(const Rational &, const Rational &) = default;
};

inline bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

/// Splits on runs of ASCII whitespace; never yields empty fields.
inline std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

inline std::string JoinTokens(const std::vector<std::string> &tokens,
                              std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

}  // namespace slurover

#endif  // SLUROVER_COMMON_HPP_
