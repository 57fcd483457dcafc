// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/execution.hpp"
#include "isac/scenario.hpp"
#include "isac/sensing_fim.hpp"

#include <string>

namespace isac
{

struct AcquisitionResult
{
    double kappa_pre = 0.0;
    double kappa_post = 0.0; // max(kappa_pre, 1 / mmse_proxy)
    double mmse_proxy = 0.0;
    double power = 0.0;
    std::string proxy_definition;
};

// Concentration the scenario assigns to the comm user before acquisition.
double acquisition_kappa_pre(const ScenarioConfig &scenario);

// Acquisition power from the scenario (p_max unless overridden).
double acquisition_power(const ScenarioConfig &scenario);

// The MMSE of the comm-user angle after one full-power acquisition block is
// approximated by the smallest achievable BCRB under the pre-acquisition
// prior. `comm_matrix` must be Mbar of the comm user under that prior.
AcquisitionResult update_kappa(const ScenarioConfig &scenario, const SenseMatrix &comm_matrix, double power);

// Computes the comm user's pre-acquisition Mbar and applies update_kappa.
AcquisitionResult update_kappa(const ScenarioConfig &scenario, Execution exec = {});

// Copy of the scenario with the comm user's kappa replaced by kappa_post.
ScenarioConfig apply_acquisition(const ScenarioConfig &scenario, const AcquisitionResult &result);

} // namespace isac
