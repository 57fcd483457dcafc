// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace isac
{

// Mix (base, index) into a new 64-bit seed. Used to derive one independent
// stream per parallel task so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Single-owner random stream. Never share one between threads.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed);
    RandomStream(std::uint64_t base, std::uint64_t index) : RandomStream(derive_seed(base, index)) {}

    double uniform(); // [0, 1)
    double normal();  // N(0, 1)

    // Circularly symmetric CN(0, 1): E|z|^2 = 1.
    std::complex<double> complex_normal();

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace isac
