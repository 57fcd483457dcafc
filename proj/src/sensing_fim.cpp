// SPDX-License-Identifier: Apache-2.0

#include "isac/sensing_fim.hpp"

#include "isac/kernels.hpp"
#include "isac/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace isac
{

void SenseMatrix::check_invariants() const
{
    if (eigen.empty())
        throw std::logic_error("SenseMatrix: missing eigen-data");
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    if (hermitian_asymmetry(matrix) > 1e-10 * scale)
        throw std::logic_error("SenseMatrix: not Hermitian");
    const double top = std::max(0.0, eigen.max_value());
    if (eigen.values.minCoeff() < -1e-10 * top)
        throw std::logic_error("SenseMatrix: not positive semidefinite");
    const Eigen::Index n = eigen.vectors.cols();
    const cmat gram = eigen.vectors.adjoint() * eigen.vectors;
    if ((gram - cmat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::logic_error("SenseMatrix: eigenvectors not orthonormal");
}

SenseMatrix SenseMatrix::from_matrix(const cmat &m)
{
    SenseMatrix out;
    out.matrix = hermitian_part(m);
    EigenData eig = hermitian_eigen(out.matrix);
    const double floor = 1e-12 * std::max(0.0, eig.max_value());
    bool clipped = false;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    {
        if (eig.values(k) < floor)
        {
            clipped = clipped || eig.values(k) != 0.0;
            eig.values(k) = 0.0;
        }
    }
    if (clipped)
        out.matrix = hermitian_part(eig.vectors * eig.values.cast<cplx>().asDiagonal() * eig.vectors.adjoint());
    out.eigen = std::move(eig);
    return out;
}

namespace
{

// ||b_dot||^2 a a^H + ||b||^2 a_dot a_dot^H at one angle.
struct MbarIntegrand
{
    UlaSpec tx;
    UlaSpec rx;

    void operator()(double theta, cmat &out) const
    {
        const SteeringPair a = steering(tx, theta);
        const double b_dot_sq = steering_derivative_norm_sq(rx, theta);
        const double b_sq = rx.num_elements;
        out.noalias() = b_dot_sq * (a.a * a.a.adjoint());
        out.noalias() += b_sq * (a.a_dot * a.a_dot.adjoint());
    }
};

} // namespace

SenseMatrix compute_mbar(const TargetModel &target, const UlaSpec &tx, const UlaSpec &rx, int budget, Execution exec,
                         ExpectationMode mode, std::uint64_t seed)
{
    if (budget < kMinAngleBudget)
        throw std::invalid_argument("compute_mbar: budget must be >= " + std::to_string(kMinAngleBudget) + ", got " +
                                    std::to_string(budget));
    tx.validate();
    rx.validate();
    target.angle_prior.validate();

    const MbarIntegrand integrand{tx, rx};
    QuadratureRule rule;
    if (mode == ExpectationMode::quadrature)
    {
        rule = angle_rule(target.angle_prior, budget);
    }
    else
    {
        RandomStream stream(seed);
        rule.nodes = sample_angles(target.angle_prior, static_cast<std::size_t>(budget), stream);
        rule.weights.assign(rule.nodes.size(), 1.0 / budget);
    }
    return SenseMatrix::from_matrix(kernels::expectation(rule, tx.num_elements, integrand, exec));
}

std::vector<SenseMatrix> compute_all_mbar(const ScenarioConfig &scenario, Execution exec)
{
    std::vector<SenseMatrix> out;
    out.reserve(scenario.targets.size());
    for (const auto &target : scenario.targets)
        out.push_back(compute_mbar(target, scenario.tx, scenario.rx, scenario.mc.quadrature_nodes, exec));
    return out;
}

namespace
{

void check_matrix_count(std::span<const SenseMatrix> matrices, const ScenarioConfig &scenario)
{
    if (matrices.size() != scenario.targets.size())
        throw std::invalid_argument("one SenseMatrix per target required");
}

} // namespace

std::vector<double> bcrb_deterministic(const TransmitStrategy &strategy, std::span<const SenseMatrix> matrices,
                                       const ScenarioConfig &scenario)
{
    check_matrix_count(matrices, scenario);
    for (const auto &slot : strategy.slots)
    {
        if (slot.det_power < 0.0 || slot.gauss_power < 0.0)
            throw std::invalid_argument("bcrb_deterministic: negative slot power");
        if (slot.gauss_power != 0.0)
            throw std::invalid_argument("bcrb_deterministic: strategy has Gaussian power");
    }

    std::vector<double> eps(matrices.size());
    for (std::size_t i = 0; i < matrices.size(); ++i)
    {
        double info = 0.0;
        for (const auto &slot : strategy.slots)
            if (slot.det_power > 0.0)
                info += slot.det_power * quadratic_form(matrices[i].matrix, slot.det_direction);
        const double gain = 2.0 * scenario.targets[i].gain_prior.second_moment / scenario.sigma_s_sq;
        eps[i] = 1.0 / (gain * info + prior_fim(scenario.targets[i].angle_prior));
    }
    return eps;
}

namespace
{

// Per-target, per-slot quadratic forms so each draw costs O(N_s T).
struct SlotForms
{
    double ss; // s^H M s
    double cc; // c^H M c
    cplx sc;   // s^H M c
};

struct MixedBcrbDraw
{
    std::vector<std::vector<SlotForms>> forms; // [target][slot]
    std::vector<double> sqrt_det_power;
    std::vector<double> sqrt_gauss_power;
    std::vector<double> coefficient; // 2 T E|beta|^2 / sigma_s^2
    std::vector<double> prior;
    std::vector<cplx> symbols;

    void operator()(RandomStream &stream, std::span<double> out)
    {
        const std::size_t slots = symbols.size();
        for (auto &g : symbols)
            g = stream.complex_normal();
        double total = 0.0;
        for (std::size_t i = 0; i < forms.size(); ++i)
        {
            double trace = 0.0;
            for (std::size_t t = 0; t < slots; ++t)
            {
                const SlotForms &f = forms[i][t];
                const double ps = sqrt_det_power[t];
                const double pc = sqrt_gauss_power[t];
                const cplx g = symbols[t];
                trace += ps * ps * f.ss + pc * pc * std::norm(g) * f.cc + 2.0 * ps * pc * (g * f.sc).real();
            }
            trace /= static_cast<double>(slots);
            out[i] = 1.0 / (coefficient[i] * trace + prior[i]);
            total += out[i];
        }
        out[forms.size()] = total;
    }
};

} // namespace

BcrbEstimate bcrb_mixed_mc(const TransmitStrategy &strategy, std::span<const SenseMatrix> matrices,
                           const ScenarioConfig &scenario, std::uint64_t seed, int samples, Execution exec)
{
    check_matrix_count(matrices, scenario);
    strategy.validate(std::numeric_limits<double>::infinity());

    BcrbEstimate out;
    const std::size_t n_targets = matrices.size();
    if (!strategy.has_gaussian_power())
    {
        out.eps = bcrb_deterministic(strategy, matrices, scenario);
        out.standard_error.assign(n_targets, 0.0);
        for (double e : out.eps)
            out.eps_sum += e;
        return out;
    }
    if (samples < kMinGaussianSamples)
        throw std::invalid_argument("bcrb_mixed_mc: at least " + std::to_string(kMinGaussianSamples) +
                                    " samples required");

    MixedBcrbDraw draw;
    const std::size_t slots = strategy.slots.size();
    draw.symbols.resize(slots);
    for (const auto &slot : strategy.slots)
    {
        draw.sqrt_det_power.push_back(std::sqrt(slot.det_power));
        draw.sqrt_gauss_power.push_back(std::sqrt(slot.gauss_power));
    }
    for (std::size_t i = 0; i < n_targets; ++i)
    {
        const cmat &m = matrices[i].matrix;
        std::vector<SlotForms> per_slot;
        for (const auto &slot : strategy.slots)
        {
            const cvec mc = m * slot.gauss_direction;
            per_slot.push_back({quadratic_form(m, slot.det_direction), slot.gauss_direction.dot(mc).real(),
                                slot.det_direction.dot(mc)});
        }
        draw.forms.push_back(std::move(per_slot));
        draw.coefficient.push_back(scenario.sensing_coefficient(i));
        draw.prior.push_back(prior_fim(scenario.targets[i].angle_prior));
    }

    const kernels::SampleStats stats =
        kernels::monte_carlo(static_cast<std::size_t>(samples), n_targets + 1, seed, draw, exec);
    out.samples = stats.count;
    for (std::size_t i = 0; i < n_targets; ++i)
    {
        out.eps.push_back(stats.mean[i]);
        out.standard_error.push_back(stats.standard_error(i));
    }
    out.eps_sum = stats.mean[n_targets];
    out.eps_sum_standard_error = stats.standard_error(n_targets);
    return out;
}

} // namespace isac
