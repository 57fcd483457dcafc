// SPDX-License-Identifier: Apache-2.0

#include "isac/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isac
{

MonteCarloBudgets MonteCarloBudgets::scaled(double factor) const
{
    if (!(factor > 0.0))
        throw std::invalid_argument("mc scale must be positive");
    auto scale = [factor](int n, int floor) { return std::max(floor, static_cast<int>(std::lround(n * factor))); };
    MonteCarloBudgets out = *this;
    out.sensing_angle_samples = scale(sensing_angle_samples, 64);
    out.comm_angle_samples = scale(comm_angle_samples, 100);
    out.gaussian_samples = scale(gaussian_samples, 100);
    out.rate_saa_samples = scale(rate_saa_samples, 1000);
    return out;
}

double log_in_base(double x, LogBase base)
{
    return base == LogBase::two ? std::log2(x) : std::log(x);
}

std::string to_string(LogBase base)
{
    return base == LogBase::two ? "2" : "e";
}

LogBase parse_log_base(const std::string &text)
{
    if (text == "2")
        return LogBase::two;
    if (text == "e")
        return LogBase::natural;
    throw std::invalid_argument("rate_log_base must be \"2\" or \"e\", got \"" + text + "\"");
}

void ScenarioConfig::validate() const
{
    tx.validate();
    rx.validate();
    ue.validate();
    if (targets.empty())
        throw std::invalid_argument("scenario: targets must be non-empty");
    int comm_users = 0;
    for (const auto &t : targets)
    {
        t.angle_prior.validate();
        t.gain_prior.validate();
        comm_users += t.is_comm_user ? 1 : 0;
    }
    if (comm_users != 1)
        throw std::invalid_argument("scenario: exactly one target must have is_comm_user = true");
    comm_gain.validate();
    if (!(sigma_s_sq > 0.0) || !(sigma_c_sq > 0.0))
        throw std::invalid_argument("scenario: noise powers must be positive");
    if (!(p_max > 0.0))
        throw std::invalid_argument("scenario: p_max must be positive");
    if (coherence_time < 1)
        throw std::invalid_argument("scenario: coherence_time must be >= 1");
    if (mc.quadrature_nodes < 64)
        throw std::invalid_argument("scenario: quadrature_nodes must be >= 64");
    if (mc.gaussian_samples < 100 || mc.comm_angle_samples < 100)
        throw std::invalid_argument("scenario: Monte Carlo budgets must be >= 100");
}

std::size_t ScenarioConfig::comm_index() const
{
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (targets[i].is_comm_user)
            return i;
    throw std::logic_error("scenario has no communication user");
}

double ScenarioConfig::sensing_coefficient(std::size_t target) const
{
    return 2.0 * coherence_time * targets.at(target).gain_prior.second_moment / sigma_s_sq;
}

std::vector<double> ScenarioConfig::prior_fims() const
{
    std::vector<double> out;
    out.reserve(targets.size());
    for (const auto &t : targets)
        out.push_back(prior_fim(t.angle_prior));
    return out;
}

double deg_to_rad(double deg)
{
    return deg * M_PI / 180.0;
}

double rad_to_deg(double rad)
{
    return rad * 180.0 / M_PI;
}

ScenarioConfig reference_scenario()
{
    ScenarioConfig s;
    s.tx = {10, 0.5};
    s.rx = {10, 0.5};
    s.ue = {1, 0.5};
    s.sigma_s_sq = 1.0;
    s.sigma_c_sq = 1.0;
    s.p_max = 1.0;
    s.coherence_time = 2;
    const double sensing_snr = std::pow(10.0, 10.0 / 10.0);
    const double comm_snr = std::pow(10.0, 15.0 / 10.0);
    s.targets = {
        {"comm", {deg_to_rad(100.0), 256.674}, {sensing_snr}, true},
        {"sensing", {deg_to_rad(30.0), 2.184}, {sensing_snr}, false},
    };
    s.comm_gain = {comm_snr};
    s.base_seed = 20251016;
    s.acquisition.kappa_pre = 2.184;
    return s;
}

} // namespace isac
