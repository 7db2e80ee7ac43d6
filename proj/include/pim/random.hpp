// Copyright 2026 The pim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIM_RANDOM_HPP
#define PIM_RANDOM_HPP

#include <cstdint>
#include <limits>

#include "pim/matrix.hpp"

namespace pim {

/// Seeded random source with a fully specified output stream.
///
/// The generator is SplitMix64, a counter-based 64-bit generator. With the
/// state initialised to the seed, the n-th output (n = 1, 2, ...) is
///
///   z = seed + n * 0x9E3779B97F4A7C15                          (mod 2^64)
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   next() = z ^ (z >> 31)
///
/// Conversions to real and complex variates:
///
///   uniform()        = (next() >> 11) * 2^-53                  in [0, 1)
///   complex_normal() = one Box-Muller draw:
///                        u1 = 1 - uniform(), u2 = uniform()
///                        r  = sqrt(-2 ln u1), t = 2 pi u2
///                        return (r cos t, r sin t)
///
/// Any reimplementation following these formulas reproduces every seeded
/// object in the library bit-for-bit (up to libm rounding of log/cos/sin).
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next(); }

  std::uint64_t next();
  double uniform();
  Complex complex_normal();

  // Row-major fill with complex_normal().
  CMatrix complex_gaussian(std::size_t rows, std::size_t cols);

private:
  std::uint64_t state_;
};

// Seed of the k-th sub-stream of `seed`: the (k+1)-th output of Rng(seed).
// Hashing keeps the sub-stream counters far apart.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t k);

} // namespace pim

#endif
