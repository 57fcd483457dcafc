// SPDX-License-Identifier: Apache-2.0

#include "isac/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace isac
{

std::vector<double> project_capped_simplex(std::vector<double> x, double cap)
{
    std::vector<double> clipped(x.size());
    std::transform(x.begin(), x.end(), clipped.begin(), [](double v) { return std::max(v, 0.0); });
    if (std::accumulate(clipped.begin(), clipped.end(), 0.0) <= cap)
        return clipped;

    // Water level theta with sum max(x - theta, 0) = cap.
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double prefix = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k)
    {
        prefix += sorted[k];
        const double candidate = (prefix - cap) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0)
            theta = candidate;
    }
    for (auto &v : x)
        v = std::max(v - theta, 0.0);
    return x;
}

cmat project_psd_trace(const cmat &h, double p_max)
{
    const double scale = std::max(1.0, h.size() ? h.cwiseAbs().maxCoeff() : 0.0);
    if (hermitian_asymmetry(h) > 1e-8 * scale)
        throw std::invalid_argument("project_psd_trace: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<cmat> solver(hermitian_part(h));
    const rvec &w = solver.eigenvalues();
    const std::vector<double> projected = project_capped_simplex(std::vector<double>(w.data(), w.data() + w.size()), p_max);
    const rvec y = Eigen::Map<const rvec>(projected.data(), static_cast<Eigen::Index>(projected.size()));
    const cmat &v = solver.eigenvectors();
    return hermitian_part(v * y.cast<cplx>().asDiagonal() * v.adjoint());
}

JointBcrbObjective::JointBcrbObjective(std::span<const SenseMatrix> matrices, std::span<const double> coefficients,
                                       std::span<const double> prior_fims)
{
    if (matrices.empty())
        throw std::invalid_argument("minimize_joint_bcrb: at least one SenseMatrix required");
    if (coefficients.size() != matrices.size() || prior_fims.size() != matrices.size())
        throw std::invalid_argument("minimize_joint_bcrb: coefficient/prior count mismatch");
    for (std::size_t i = 0; i < matrices.size(); ++i)
    {
        if (!(coefficients[i] > 0.0))
            throw std::invalid_argument("minimize_joint_bcrb: coefficients must be positive");
        if (!(prior_fims[i] > 0.0))
            throw std::invalid_argument("minimize_joint_bcrb: target " + std::to_string(i) +
                                        " has zero prior information (kappa = 0); the objective is unbounded at "
                                        "R = 0 and such scenarios are rejected");
        matrices_.push_back(matrices[i].matrix);
    }
    coefficients_.assign(coefficients.begin(), coefficients.end());
    priors_.assign(prior_fims.begin(), prior_fims.end());
}

double JointBcrbObjective::value(const cmat &r) const
{
    double f = 0.0;
    for (std::size_t i = 0; i < matrices_.size(); ++i)
        f += 1.0 / (coefficients_[i] * trace_product(matrices_[i], r) + priors_[i]);
    return f;
}

cmat JointBcrbObjective::gradient(const cmat &r) const
{
    cmat g = cmat::Zero(r.rows(), r.cols());
    for (std::size_t i = 0; i < matrices_.size(); ++i)
    {
        const double d = coefficients_[i] * trace_product(matrices_[i], r) + priors_[i];
        g -= (coefficients_[i] / (d * d)) * matrices_[i];
    }
    return g;
}

SampleAverageRate::SampleAverageRate(std::span<const CommSample> samples, LogBase base)
    : log_scale_(base == LogBase::two ? 1.0 / std::log(2.0) : 1.0)
{
    if (samples.empty())
        throw std::invalid_argument("SampleAverageRate: empty sample set");
    const Eigen::Index m = samples.front().steering.size();
    steering_.resize(m, static_cast<Eigen::Index>(samples.size()));
    snr_.resize(static_cast<Eigen::Index>(samples.size()));
    for (std::size_t k = 0; k < samples.size(); ++k)
    {
        steering_.col(static_cast<Eigen::Index>(k)) = samples[k].steering;
        snr_(static_cast<Eigen::Index>(k)) = samples[k].snr;
    }
}

double SampleAverageRate::value(const cmat &k) const
{
    const rvec q = (steering_.conjugate().array() * (k * steering_).array()).colwise().sum().real().transpose();
    return log_scale_ * (1.0 + (snr_.array() * q.array()).max(0.0)).log().mean();
}

cmat SampleAverageRate::gradient(const cmat &k) const
{
    const rvec q = (steering_.conjugate().array() * (k * steering_).array()).colwise().sum().real().transpose();
    const rvec w = log_scale_ * snr_.array() / (1.0 + (snr_.array() * q.array()).max(0.0)) /
                   static_cast<double>(snr_.size());
    return hermitian_part(steering_ * w.cast<cplx>().asDiagonal() * steering_.adjoint());
}

double SampleAverageRate::jensen_bound(double p_max) const
{
    const cmat weighted =
        steering_ * (snr_ / static_cast<double>(snr_.size())).cast<cplx>().asDiagonal() * steering_.adjoint();
    const double top = hermitian_eigen(weighted).max_value();
    return log_scale_ * std::log(1.0 + p_max * top);
}

namespace
{

double scaled_projected_gradient(const cmat &r, const cmat &g, double p_max)
{
    const double gnorm = g.norm();
    if (gnorm == 0.0)
        return 0.0;
    const double t = p_max / gnorm;
    return (r - project_psd_trace(r - t * g, p_max)).norm() / p_max;
}

// Projected gradient descent with Armijo-type backtracking on the quadratic
// upper model; the trial step grows after every accepted iteration.
template <class Value, class Gradient>
CovarianceIterate projected_descent(Eigen::Index dim, double p_max, Value value, Gradient gradient,
                                    const SolverOptions &options)
{
    if (!(p_max > 0.0))
        throw std::invalid_argument("solver: p_max must be positive");

    CovarianceIterate it;
    cmat r = (p_max / static_cast<double>(dim)) * cmat::Identity(dim, dim);
    double f = value(r);
    cmat g = gradient(r);
    double step = g.norm() > 0.0 ? p_max / g.norm() : 1.0;
    int small_steps = 0;

    for (it.iterations = 0; it.iterations < options.max_iterations;)
    {
        it.gradient_norm = scaled_projected_gradient(r, g, p_max);
        if (it.gradient_norm < options.gradient_tolerance)
        {
            it.converged = true;
            it.diagnostic = "projected gradient below tolerance";
            break;
        }

        cmat trial;
        double f_trial = f;
        bool accepted = false;
        for (int backtrack = 0; backtrack < 200; ++backtrack)
        {
            trial = project_psd_trace(r - step * g, p_max);
            const cmat d = trial - r;
            f_trial = value(trial);
            const double model = f + trace_product(g, d) + d.squaredNorm() / (2.0 * step);
            if (f_trial <= model)
            {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted || !(f_trial <= f))
        {
            it.converged = true;
            it.diagnostic = "no further descent at machine precision";
            break;
        }

        const double decrease = (f - f_trial) / std::max(std::abs(f), 1e-300);
        r = trial;
        f = f_trial;
        g = gradient(r);
        ++it.iterations;
        step *= 2.0;

        small_steps = decrease < options.relative_tolerance ? small_steps + 1 : 0;
        if (small_steps >= options.stall_iterations)
        {
            it.gradient_norm = scaled_projected_gradient(r, g, p_max);
            it.converged = true;
            it.diagnostic = "relative objective decrease below tolerance";
            break;
        }
    }
    if (!it.converged)
        it.diagnostic = "maximum iterations reached";

    it.matrix = r;
    it.objective = f;
    it.eigen = hermitian_eigen(r);
    return it;
}

} // namespace

CovarianceIterate minimize_joint_bcrb(std::span<const SenseMatrix> matrices, std::span<const double> coefficients,
                                      std::span<const double> prior_fims, double p_max, const SolverOptions &options)
{
    const JointBcrbObjective objective(matrices, coefficients, prior_fims);
    return projected_descent(
        objective.dimension(), p_max, [&](const cmat &r) { return objective.value(r); },
        [&](const cmat &r) { return objective.gradient(r); }, options);
}

CovarianceIterate minimize_joint_bcrb(std::span<const SenseMatrix> matrices, const ScenarioConfig &scenario,
                                      const SolverOptions &options)
{
    std::vector<double> coefficients;
    for (std::size_t i = 0; i < scenario.targets.size(); ++i)
        coefficients.push_back(scenario.sensing_coefficient(i));
    const std::vector<double> priors = scenario.prior_fims();
    return minimize_joint_bcrb(matrices, coefficients, priors, scenario.p_max, options);
}

CovarianceIterate maximize_rate_cov(std::span<const CommSample> samples, double p_max, LogBase base,
                                    const SolverOptions &options)
{
    if (samples.size() < static_cast<std::size_t>(kMinRateSamples))
        throw std::invalid_argument("maximize_rate_cov: at least " + std::to_string(kMinRateSamples) +
                                    " samples required");
    const SampleAverageRate objective(samples, base);
    CovarianceIterate it = projected_descent(
        objective.dimension(), p_max, [&](const cmat &k) { return -objective.value(k); },
        [&](const cmat &k) { return cmat(-objective.gradient(k)); }, options);
    it.objective = -it.objective;
    return it;
}

} // namespace isac
