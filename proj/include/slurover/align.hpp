// slurover/align.hpp

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

// Unit-cost global alignment on an abstract grid. Rows are reference
// positions, columns are hypothesis positions, and the caller decides
// which cells match. Both word error rate scoring and ROVER network
// building run on this.

#ifndef SLUROVER_ALIGN_HPP_
#define SLUROVER_ALIGN_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace slurover {

enum class EditOp { kMatch, kSubstitute, kDelete, kInsert };

/// One alignment column. Delete has no hypothesis side, Insert no
/// reference side; the missing index is kNone.
struct EditStep {
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  EditOp op;
  std::size_t ref_index = kNone;
  std::size_t hyp_index = kNone;

  friend bool operator==(const EditStep &, const EditStep &) = default;
};

/// Minimal-cost path (match 0, substitute/delete/insert 1). On the way
/// back from the final cell, ties resolve Match > Substitute > Delete >
/// Insert, which fixes the alignment and not just its cost.
template <typename MatchFn>
std::vector<EditStep> AlignGrid(std::size_t num_ref, std::size_t num_hyp, MatchFn &&matches) {
  const std::size_t cols = num_hyp + 1;
  std::vector<std::uint32_t> cost((num_ref + 1) * cols);
  std::vector<std::uint8_t> same((num_ref + 1) * cols, 0);
  auto at = [cols](std::size_t i, std::size_t j) { return i * cols + j; };

  for (std::size_t j = 0; j <= num_hyp; ++j) cost[at(0, j)] = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= num_ref; ++i) {
    cost[at(i, 0)] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= num_hyp; ++j) {
      const bool m = matches(i - 1, j - 1);
      same[at(i, j)] = m;
      cost[at(i, j)] = std::min({cost[at(i - 1, j - 1)] + (m ? 0u : 1u),
                                 cost[at(i - 1, j)] + 1u, cost[at(i, j - 1)] + 1u});
    }
  }

  std::vector<EditStep> steps;
  steps.reserve(std::max(num_ref, num_hyp));
  std::size_t i = num_ref, j = num_hyp;
  while (i > 0 || j > 0) {
    const std::uint32_t here = cost[at(i, j)];
    if (i > 0 && j > 0 && same[at(i, j)] && here == cost[at(i - 1, j - 1)]) {
      steps.push_back({EditOp::kMatch, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && j > 0 && !same[at(i, j)] && here == cost[at(i - 1, j - 1)] + 1) {
      steps.push_back({EditOp::kSubstitute, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && here == cost[at(i - 1, j)] + 1) {
      steps.push_back({EditOp::kDelete, i - 1, EditStep::kNone});
      --i;
    } else {
      steps.push_back({EditOp::kInsert, EditStep::kNone, j - 1});
      --j;
    }
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

}  // namespace slurover

#endif  // SLUROVER_ALIGN_HPP_
