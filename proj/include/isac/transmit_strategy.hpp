// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/linalg.hpp"

#include <vector>

namespace isac
{

// Per-slot transmit signal x_t ~ CN(sqrt(P_s,t) s_t, P_c,t c_t c_t^H): a
// deterministic beam plus a Gaussian (information-carrying) beam.
struct SlotBeams
{
    cvec det_direction;
    double det_power = 0.0;
    cvec gauss_direction;
    double gauss_power = 0.0;
};

struct TransmitStrategy
{
    std::vector<SlotBeams> slots; // one per channel use in the coherence block

    int coherence_time() const { return static_cast<int>(slots.size()); }
    Eigen::Index dimension() const;

    // (1/T) sum_t (P_s,t + P_c,t)
    double average_power() const;

    bool has_gaussian_power() const;

    // Checks unit-norm directions, non-negative powers, and
    // average_power() <= p_max (1 + 1e-9). Throws std::invalid_argument.
    void validate(double p_max) const;

    // E{R_X} = (1/T) sum_t (P_s,t s s^H + P_c,t c c^H)
    cmat mean_covariance() const;

    // Same, Gaussian part only.
    cmat gaussian_covariance() const;
};

// Full power on `direction` in every slot, deterministic only.
TransmitStrategy deterministic_beam(const cvec &direction, double power, int coherence_time);

// Full power on `direction` in every slot, Gaussian only.
TransmitStrategy gaussian_beam(const cvec &direction, double power, int coherence_time);

} // namespace isac
