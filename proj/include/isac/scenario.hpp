// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/array.hpp"
#include "isac/priors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace isac
{

// One angle to be sensed. Exactly one target per scenario is the
// communication user.
struct TargetModel
{
    std::string name;
    VonMisesPrior angle_prior;
    GainPrior gain_prior; // reflection gain beta
    bool is_comm_user = false;
};

// Sample and node counts for every expectation the pipeline evaluates.
struct MonteCarloBudgets
{
    int quadrature_nodes = 512;        // angle expectation in Mbar / Lbar
    int sensing_angle_samples = 10000; // Monte Carlo mode of the angle expectation
    int comm_angle_samples = 1000;     // (theta_1, alpha_1) draws for the ergodic rate
    int gaussian_samples = 10000;      // symbol draws for the mixed-strategy BCRB
    int rate_saa_samples = 2000;       // sample-average approximation in the rate solver

    // Scales the stochastic budgets (not the quadrature), never below the
    // minimum each consumer accepts.
    MonteCarloBudgets scaled(double factor) const;
};

enum class LogBase
{
    two,
    natural
};

double log_in_base(double x, LogBase base);
std::string to_string(LogBase base);
LogBase parse_log_base(const std::string &text);

struct AcquisitionConfig
{
    double kappa_pre = 0.0; // 0 means "use the comm target's configured kappa"
    double power = -1.0;    // < 0 means p_max
};

struct ScenarioConfig
{
    UlaSpec tx{10, 0.5};
    UlaSpec rx{10, 0.5};
    UlaSpec ue{1, 0.5};
    std::vector<TargetModel> targets;
    GainPrior comm_gain{1.0}; // alpha_1
    double sigma_s_sq = 1.0;
    double sigma_c_sq = 1.0;
    double p_max = 1.0;
    int coherence_time = 2;
    MonteCarloBudgets mc;
    std::uint64_t base_seed = 1;
    LogBase rate_log_base = LogBase::two;
    AcquisitionConfig acquisition;

    void validate() const;

    std::size_t comm_index() const;
    const TargetModel &comm_target() const { return targets[comm_index()]; }

    // 2 T E|beta_i|^2 / sigma_s^2: multiplies Tr[Mbar_i R_X] in the equivalent BFIM.
    double sensing_coefficient(std::size_t target) const;

    // E|alpha_1|^2 / sigma_c^2.
    double comm_snr() const { return comm_gain.second_moment / sigma_c_sq; }

    std::vector<double> prior_fims() const;
};

// Two-target setup of the numerical study: M_TX = M_RX = 10 at half
// wavelength, T = 2, per-antenna sensing SNR 10 dB and communication SNR
// 15 dB carried by the gain second moments with P_max = sigma^2 = 1. Target 0
// is the communication user at 100 deg (kappa_post = 256.674), target 1 the
// sensing target at 30 deg (kappa_pre = 2.184).
ScenarioConfig reference_scenario();

double deg_to_rad(double deg);
double rad_to_deg(double rad);

} // namespace isac
