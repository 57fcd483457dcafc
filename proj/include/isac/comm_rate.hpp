// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/array.hpp"
#include "isac/execution.hpp"
#include "isac/priors.hpp"
#include "isac/scenario.hpp"
#include "isac/transmit_strategy.hpp"

#include <cstdint>
#include <vector>

namespace isac
{

// Lbar = E_theta{ a(theta) a^H(theta) } for the communication user.
struct LbarMatrix
{
    cmat matrix;
    EigenData eigen;

    double lambda_max() const { return eigen.max_value(); }
    void check_invariants() const; // includes trace == M_TX to 1e-8 relative
};

LbarMatrix compute_lbar(const VonMisesPrior &comm_prior, const UlaSpec &tx, int budget, Execution exec = {});

struct RateEstimate
{
    double rate = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
};

// Ergodic rate (1/T) sum_t E{ log(1 + P_c,t |alpha|^2/sigma_c^2 |a^H(theta) c_t|^2) }
// by Monte Carlo over joint (theta_1, alpha_1) draws. Exactly 0 when all
// Gaussian powers are 0.
RateEstimate ergodic_rate_mc(const TransmitStrategy &strategy, const VonMisesPrior &comm_prior,
                             const GainPrior &comm_gain, double sigma_c_sq, const UlaSpec &tx, std::uint64_t seed,
                             int samples, LogBase base = LogBase::two, Execution exec = {});

// C' = log(1 + (E|alpha|^2/sigma_c^2) P_max lambda_max(Lbar)).
double capacity_upper(const LbarMatrix &lbar, const GainPrior &comm_gain, double sigma_c_sq, double p_max,
                      LogBase base = LogBase::two);

// Plug-in value log(1 + SNR_c Tr[Lbar K_c]) with K_c the Gaussian part of
// E{R_X}; the ergodic rate never exceeds it.
double rate_jensen_bound(const TransmitStrategy &strategy, const LbarMatrix &lbar, const GainPrior &comm_gain,
                         double sigma_c_sq, LogBase base = LogBase::two);

// One drawn channel realization for the sample-average rate problem.
struct CommSample
{
    cvec steering;    // a(theta_1)
    double snr = 0.0; // |alpha_1|^2 / sigma_c^2
};

std::vector<CommSample> draw_comm_samples(const VonMisesPrior &comm_prior, const GainPrior &comm_gain,
                                          double sigma_c_sq, const UlaSpec &tx, int count, std::uint64_t seed);

} // namespace isac
