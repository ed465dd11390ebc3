// Copyright 2026 The matshare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace matshare {

struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(Seed, Seed) = default;
};

// Seeded pseudo-random source. The raw stream is std::mt19937_64, whose
// output is fixed by the standard, and bounded draws use our own rejection
// sampling, so a given seed yields the same values on every toolchain.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  std::uint64_t next() { return engine_(); }

  // Uniform over [0, bound). bound must be positive.
  std::uint64_t uniform(std::uint64_t bound);

  bool bit() { return (next() >> 63) != 0; }

  // Fresh seed for an independent child stream.
  Seed derive() { return Seed{next()}; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace matshare
