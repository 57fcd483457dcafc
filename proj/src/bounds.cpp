// SPDX-License-Identifier: Apache-2.0

#include "isac/bounds.hpp"

#include <stdexcept>

namespace isac
{

SensingFloor eps_min_prime(const SenseMatrix &matrix, const GainPrior &gain, double prior_fim,
                           const ScenarioConfig &scenario)
{
    if (matrix.eigen.empty())
        throw std::logic_error("eps_min_prime: matrix has no eigen-data");
    const double coefficient = 2.0 * scenario.coherence_time * gain.second_moment / scenario.sigma_s_sq;
    SensingFloor out;
    out.eps = 1.0 / (coefficient * scenario.p_max * matrix.lambda_max() + prior_fim);
    out.attaining = deterministic_beam(matrix.eigen.vectors.col(0), scenario.p_max, scenario.coherence_time);
    out.attaining_description = "deterministic beam sqrt(P_max) v1 in every slot";
    return out;
}

OuterRegion outer_region(const ScenarioConfig &scenario, std::span<const SenseMatrix> matrices,
                         const LbarMatrix &lbar)
{
    if (matrices.size() != scenario.targets.size())
        throw std::invalid_argument("outer_region: one matrix per target required");
    OuterRegion out;
    for (std::size_t i = 0; i < matrices.size(); ++i)
    {
        const TargetModel &target = scenario.targets[i];
        out.eps_min_prime.push_back(
            eps_min_prime(matrices[i], target.gain_prior, prior_fim(target.angle_prior), scenario).eps);
        out.eps_floor += out.eps_min_prime.back();
    }
    out.rate_ceiling =
        capacity_upper(lbar, scenario.comm_gain, scenario.sigma_c_sq, scenario.p_max, scenario.rate_log_base);
    return out;
}

} // namespace isac
