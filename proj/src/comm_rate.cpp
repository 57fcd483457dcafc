// SPDX-License-Identifier: Apache-2.0

#include "isac/comm_rate.hpp"

#include "isac/kernels.hpp"
#include "isac/quadrature.hpp"
#include "isac/sensing_fim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isac
{

void LbarMatrix::check_invariants() const
{
    if (eigen.empty())
        throw std::logic_error("LbarMatrix: missing eigen-data");
    const double m = static_cast<double>(matrix.rows());
    if (std::abs(matrix.trace().real() - m) > 1e-8 * m)
        throw std::logic_error("LbarMatrix: trace differs from M_TX");
    if (hermitian_asymmetry(matrix) > 1e-10 * std::max(1.0, matrix.cwiseAbs().maxCoeff()))
        throw std::logic_error("LbarMatrix: not Hermitian");
    if (eigen.values.minCoeff() < -1e-10 * std::max(0.0, eigen.max_value()))
        throw std::logic_error("LbarMatrix: not positive semidefinite");
}

LbarMatrix compute_lbar(const VonMisesPrior &comm_prior, const UlaSpec &tx, int budget, Execution exec)
{
    if (budget < kMinAngleBudget)
        throw std::invalid_argument("compute_lbar: budget must be >= " + std::to_string(kMinAngleBudget));
    tx.validate();
    const QuadratureRule rule = angle_rule(comm_prior, budget);
    auto integrand = [tx](double theta, cmat &out) {
        const cvec a = steering_vector(tx, theta);
        out.noalias() = a * a.adjoint();
    };
    const SenseMatrix cleaned = SenseMatrix::from_matrix(kernels::expectation(rule, tx.num_elements, integrand, exec));
    return {cleaned.matrix, cleaned.eigen};
}

namespace
{

struct RateDraw
{
    VonMisesPrior prior;
    GainPrior gain;
    UlaSpec tx;
    double inv_sigma_c_sq;
    std::vector<cvec> directions;
    std::vector<double> powers;
    LogBase base;

    void operator()(RandomStream &stream, std::span<double> out) const
    {
        const double theta = sample_von_mises(prior, stream);
        const double snr = std::norm(sample_gain(gain, stream)) * inv_sigma_c_sq;
        const cvec a = steering_vector(tx, theta);
        double sum = 0.0;
        for (std::size_t t = 0; t < directions.size(); ++t)
        {
            if (powers[t] <= 0.0)
                continue;
            sum += log_in_base(1.0 + powers[t] * snr * std::norm(a.dot(directions[t])), base);
        }
        out[0] = sum / static_cast<double>(directions.size());
    }
};

} // namespace

RateEstimate ergodic_rate_mc(const TransmitStrategy &strategy, const VonMisesPrior &comm_prior,
                             const GainPrior &comm_gain, double sigma_c_sq, const UlaSpec &tx, std::uint64_t seed,
                             int samples, LogBase base, Execution exec)
{
    comm_prior.validate();
    comm_gain.validate();
    for (const auto &slot : strategy.slots)
        if (slot.gauss_power > 0.0 && std::abs(slot.gauss_direction.norm() - 1.0) > 1e-10)
            throw std::invalid_argument("ergodic_rate_mc: Gaussian beam directions must be unit-norm");
    if (!strategy.has_gaussian_power())
        return {};
    if (samples < 1)
        throw std::invalid_argument("ergodic_rate_mc: samples must be >= 1");

    RateDraw draw{comm_prior, comm_gain, tx, 1.0 / sigma_c_sq, {}, {}, base};
    for (const auto &slot : strategy.slots)
    {
        draw.directions.push_back(slot.gauss_direction);
        draw.powers.push_back(slot.gauss_power);
    }
    const kernels::SampleStats stats = kernels::monte_carlo(static_cast<std::size_t>(samples), 1, seed, draw, exec);
    return {stats.mean[0], stats.standard_error(0), stats.count};
}

double capacity_upper(const LbarMatrix &lbar, const GainPrior &comm_gain, double sigma_c_sq, double p_max,
                      LogBase base)
{
    return log_in_base(1.0 + comm_gain.second_moment / sigma_c_sq * p_max * lbar.lambda_max(), base);
}

double rate_jensen_bound(const TransmitStrategy &strategy, const LbarMatrix &lbar, const GainPrior &comm_gain,
                         double sigma_c_sq, LogBase base)
{
    const double snr = comm_gain.second_moment / sigma_c_sq;
    return log_in_base(1.0 + snr * trace_product(lbar.matrix, strategy.gaussian_covariance()), base);
}

std::vector<CommSample> draw_comm_samples(const VonMisesPrior &comm_prior, const GainPrior &comm_gain,
                                          double sigma_c_sq, const UlaSpec &tx, int count, std::uint64_t seed)
{
    if (count < 1)
        throw std::invalid_argument("draw_comm_samples: count must be >= 1");
    RandomStream stream(seed);
    std::vector<CommSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
    {
        const double theta = sample_von_mises(comm_prior, stream);
        const double snr = std::norm(sample_gain(comm_gain, stream)) / sigma_c_sq;
        out.push_back({steering_vector(tx, theta), snr});
    }
    return out;
}

} // namespace isac
