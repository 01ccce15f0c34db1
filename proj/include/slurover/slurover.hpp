// slurover/slurover.hpp

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

#ifndef SLUROVER_SLUROVER_HPP_
#define SLUROVER_SLUROVER_HPP_

#include "slurover/common.hpp"
#include "slurover/corpus_io.hpp"
#include "slurover/metrics.hpp"
#include "slurover/normalize.hpp"
#include "slurover/parse_tree.hpp"
#include "slurover/pipeline.hpp"
#include "slurover/rover.hpp"
#include "slurover/synth.hpp"

#endif  // SLUROVER_SLUROVER_HPP_
