// SPDX-License-Identifier: Apache-2.0

#include "isac/acquisition.hpp"

#include "isac/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace isac
{

double acquisition_kappa_pre(const ScenarioConfig &scenario)
{
    const double configured = scenario.acquisition.kappa_pre;
    return configured > 0.0 ? configured : scenario.comm_target().angle_prior.kappa;
}

double acquisition_power(const ScenarioConfig &scenario)
{
    return scenario.acquisition.power >= 0.0 ? scenario.acquisition.power : scenario.p_max;
}

AcquisitionResult update_kappa(const ScenarioConfig &scenario, const SenseMatrix &comm_matrix, double power)
{
    if (!(power >= 0.0))
        throw std::invalid_argument("update_kappa: power must be non-negative");
    const double kappa_pre = acquisition_kappa_pre(scenario);
    if (!(kappa_pre > 0.0))
        throw std::invalid_argument("update_kappa: kappa_pre must be positive");

    ScenarioConfig acquiring = scenario;
    acquiring.p_max = power;
    const TargetModel &comm = scenario.comm_target();

    AcquisitionResult out;
    out.kappa_pre = kappa_pre;
    out.power = power;
    out.mmse_proxy = eps_min_prime(comm_matrix, comm.gain_prior, prior_fim(VonMisesPrior{0.0, kappa_pre}), acquiring).eps;
    out.kappa_post = std::max(kappa_pre, 1.0 / out.mmse_proxy);
    out.proxy_definition = "mmse ~ minimum BCRB of the comm-user angle under the pre-acquisition prior, "
                           "full-power deterministic beam on the principal eigenvector of its sensing matrix; "
                           "kappa_post = max(kappa_pre, 1 / mmse)";
    return out;
}

AcquisitionResult update_kappa(const ScenarioConfig &scenario, Execution exec)
{
    TargetModel comm = scenario.comm_target();
    comm.angle_prior.kappa = acquisition_kappa_pre(scenario);
    const SenseMatrix matrix = compute_mbar(comm, scenario.tx, scenario.rx, scenario.mc.quadrature_nodes, exec);
    return update_kappa(scenario, matrix, acquisition_power(scenario));
}

ScenarioConfig apply_acquisition(const ScenarioConfig &scenario, const AcquisitionResult &result)
{
    ScenarioConfig out = scenario;
    out.targets[out.comm_index()].angle_prior.kappa = result.kappa_post;
    return out;
}

} // namespace isac
