// Copyright 2026 The nclp Authors
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

// Seeded, splittable random streams.
//
// A stream is keyed by (seed, stream_index): the engine state is
// splitmix64(seed) mixed with splitmix64(stream_index), fed to mt19937_64.
// Uniform doubles take the top 53 bits of one engine output. Standard normals
// use the Box-Muller transform on two uniforms (u1 mapped to (0, 1]), and a
// complex standard normal is (n1 + i n2) / sqrt(2), so E|z|^2 = 1.
// Nothing here goes through std::*_distribution, whose output is
// implementation-defined; draws are reproducible for a given build.

#ifndef NCLP_RANDOM_HPP_
#define NCLP_RANDOM_HPP_

#include <complex>
#include <cstdint>
#include <random>

namespace nclp {

inline constexpr const char* kPrngId = "mt19937_64/splitmix64-keyed/box-muller";

std::uint64_t splitmix64(std::uint64_t x);

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index);

  // Engine seed of this stream; recorded in trial reports.
  std::uint64_t fingerprint() const { return fingerprint_; }

  std::uint64_t next_u64() { return engine_(); }
  // [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();
  std::complex<double> complex_normal();
  // Independent child stream.
  RandomStream split(std::uint64_t key);

 private:
  std::mt19937_64 engine_;
  std::uint64_t fingerprint_;
};

}  // namespace nclp

#endif  // NCLP_RANDOM_HPP_
