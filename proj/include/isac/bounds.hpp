// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/comm_rate.hpp"
#include "isac/scenario.hpp"
#include "isac/sensing_fim.hpp"
#include "isac/transmit_strategy.hpp"

#include <span>
#include <string>
#include <vector>

namespace isac
{

struct SensingFloor
{
    double eps = 0.0;                  // 1 / (c P_max lambda_max + J)
    TransmitStrategy attaining;        // sqrt(P_max) times the principal eigenvector in every slot
    std::string attaining_description;
};

// Smallest BCRB any input with average power p_max can give one target.
SensingFloor eps_min_prime(const SenseMatrix &matrix, const GainPrior &gain, double prior_fim,
                           const ScenarioConfig &scenario);

struct OuterRegion
{
    std::vector<double> eps_min_prime; // per target
    double eps_floor = 0.0;            // sum of the per-target floors
    double rate_ceiling = 0.0;         // capacity_upper
};

OuterRegion outer_region(const ScenarioConfig &scenario, std::span<const SenseMatrix> matrices,
                         const LbarMatrix &lbar);

} // namespace isac
