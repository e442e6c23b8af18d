// Copyright 2026 The hybridrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace hybridrec {

using Rng = std::mt19937_64;

/// Independent random streams derived from one run seed. Each consumer draws
/// from its own stream so that, e.g., changing the evaluation cutoff never
/// shifts the numbers seen by factor initialization.
enum class Stream : std::uint32_t {
  kFolds = 1,
  kAlsInit = 2,
  kBprInit = 3,
  kBprSampling = 4,
  kFoldModel = 5,
};

Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

/// Scalar seed for a sub-run, e.g. the model trained inside fold `index`.
std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index);

}  // namespace hybridrec
