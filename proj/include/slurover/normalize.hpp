// slurover/normalize.hpp

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

#ifndef SLUROVER_NORMALIZE_HPP_
#define SLUROVER_NORMALIZE_HPP_

#include <string>
#include <string_view>

#include "slurover/common.hpp"

namespace slurover {

/// Whitespace is always stripped at the ends and collapsed inside.
/// Lowercasing is opt-in and ASCII-only, so UTF-8 bytes >= 0x80 pass
/// through untouched.
struct NormalizationOptions {
  bool lowercase = false;
};

inline std::string Normalize(std::string_view text, const NormalizationOptions &opts = {}) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    if (opts.lowercase && c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out += c;
  }
  return out;
}

}  // namespace slurover

#endif  // SLUROVER_NORMALIZE_HPP_
