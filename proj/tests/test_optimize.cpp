// SPDX-License-Identifier: Apache-2.0

#include "isac/optimize.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace isac;

namespace
{

// Water level by bisection: x_k = max(0, y_k - tau) with sum x = cap.
std::vector<double> capped_simplex_oracle(const std::vector<double> &y, double cap)
{
    std::vector<double> clipped(y.size());
    std::transform(y.begin(), y.end(), clipped.begin(), [](double v) { return std::max(v, 0.0); });
    if (std::accumulate(clipped.begin(), clipped.end(), 0.0) <= cap)
        return clipped;
    double lo = 0.0, hi = *std::max_element(y.begin(), y.end());
    for (int k = 0; k < 200; ++k)
    {
        const double tau = 0.5 * (lo + hi);
        double sum = 0.0;
        for (double v : y)
            sum += std::max(v - tau, 0.0);
        (sum > cap ? lo : hi) = tau;
    }
    std::vector<double> out(y.size());
    for (std::size_t k = 0; k < y.size(); ++k)
        out[k] = std::max(y[k] - 0.5 * (lo + hi), 0.0);
    return out;
}

double floor_of(const SenseMatrix &m, double c, double j, double p)
{
    return 1.0 / (c * p * m.lambda_max() + j);
}

ScenarioConfig small_scenario()
{
    ScenarioConfig s = reference_scenario();
    s.tx = {2, 0.5};
    return s;
}

} // namespace

TEST_CASE("capped simplex projection matches a water-level oracle")
{
    RandomStream stream(1);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<double> y(1 + trial % 7);
        for (double &v : y)
            v = 3.0 * stream.normal();
        const double cap = 0.1 + 2.0 * stream.uniform();
        const auto x = project_capped_simplex(y, cap);
        const auto ref = capped_simplex_oracle(y, cap);
        for (std::size_t k = 0; k < y.size(); ++k)
            CHECK(x[k] == doctest::Approx(ref[k]).epsilon(1e-10).scale(1e-10));
    }
}

TEST_CASE("PSD trace projection")
{
    SUBCASE("feasible input is unchanged")
    {
        RandomStream stream(2);
        const cvec v = testing::random_unit(4, stream);
        const cmat r = 0.3 * v * v.adjoint() + 0.2 * cmat::Identity(4, 4);
        CHECK((project_psd_trace(r, 2.0) - r).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("negative definite input maps to zero")
    {
        CHECK(project_psd_trace(-cmat::Identity(3, 3), 1.0).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("scaled identity")
    {
        const cmat p = project_psd_trace(cmat::Identity(4, 4), 2.0);
        CHECK((p - 0.5 * cmat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("non-Hermitian input is rejected")
    {
        cmat m = cmat::Identity(2, 2);
        m(0, 1) = 1.0;
        CHECK_THROWS_AS(project_psd_trace(m, 1.0), std::invalid_argument);
    }
    SUBCASE("projection satisfies the variational inequality")
    {
        RandomStream stream(3);
        for (int trial = 0; trial < 20; ++trial)
        {
            const cmat h = 2.0 * testing::random_hermitian(4, stream);
            const cmat p = project_psd_trace(h, 1.5);
            CHECK(p.trace().real() <= 1.5 * (1.0 + 1e-12));
            CHECK(hermitian_eigen(p).values.minCoeff() >= -1e-12);
            for (int k = 0; k < 20; ++k)
            {
                const cmat y = project_psd_trace(3.0 * testing::random_hermitian(4, stream), 1.5);
                CHECK(trace_product(h - p, y - p) <= 1e-10);
            }
        }
    }
}

TEST_CASE("joint objective gradient matches finite differences")
{
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    const std::vector<double> c = {s.sensing_coefficient(0), s.sensing_coefficient(1)};
    const auto j = s.prior_fims();
    const JointBcrbObjective f(matrices, c, j);
    RandomStream stream(4);
    const cmat r = project_psd_trace(testing::random_hermitian(10, stream), 1.0);
    const cmat g = f.gradient(r);
    for (int k = 0; k < 10; ++k)
    {
        const cmat d = testing::random_hermitian(10, stream);
        const double h = 1e-6;
        const double fd = (f.value(r + h * d) - f.value(r - h * d)) / (2.0 * h);
        CHECK(testing::relative_error(trace_product(g, d), fd) < 1e-5);
    }
}

TEST_CASE("sample-average rate gradient matches finite differences")
{
    const ScenarioConfig s = reference_scenario();
    const auto samples = draw_comm_samples(s.comm_target().angle_prior, s.comm_gain, 1.0, s.tx, 1000, 5);
    const SampleAverageRate f(samples, LogBase::two);
    RandomStream stream(5);
    const cmat k = project_psd_trace(testing::random_hermitian(10, stream), 1.0);
    const cmat g = f.gradient(k);
    for (int trial = 0; trial < 10; ++trial)
    {
        const cmat d = testing::random_hermitian(10, stream);
        const double h = 1e-6;
        const double fd = (f.value(k + h * d) - f.value(k - h * d)) / (2.0 * h);
        CHECK(testing::relative_error(trace_product(g, d), fd) < 1e-5);
    }
}

TEST_CASE("single target: optimum is the rank-one floor")
{
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    for (std::size_t i = 0; i < 2; ++i)
    {
        const double c = s.sensing_coefficient(i);
        const double j = prior_fim(s.targets[i].angle_prior);
        const CovarianceIterate it = minimize_joint_bcrb(std::span(&matrices[i], 1), std::span(&c, 1),
                                                         std::span(&j, 1), s.p_max);
        CHECK(it.converged);
        CHECK(testing::relative_error(it.objective, floor_of(matrices[i], c, j, s.p_max)) < 1e-6);
        CHECK(numerical_rank(it.eigen.values, 1e-6) == 1);
    }
}

TEST_CASE("two identical targets double the single-target floor")
{
    const ScenarioConfig s = reference_scenario();
    const auto all = compute_all_mbar(s);
    const std::vector<SenseMatrix> twins = {all[1], all[1]};
    const double c = s.sensing_coefficient(1);
    const double j = prior_fim(s.targets[1].angle_prior);
    const std::vector<double> cs = {c, c}, js = {j, j};
    const CovarianceIterate it = minimize_joint_bcrb(twins, cs, js, s.p_max);
    CHECK(it.converged);
    CHECK(testing::relative_error(it.objective, 2.0 * floor_of(all[1], c, j, s.p_max)) < 1e-6);
}

TEST_CASE("joint optimum on the two-target scenario")
{
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    const CovarianceIterate it = minimize_joint_bcrb(matrices, s);
    CHECK(it.converged);
    CHECK(it.matrix.trace().real() <= s.p_max * (1.0 + 1e-9));
    CHECK(it.eigen.values.minCoeff() >= -1e-9 * it.eigen.max_value());
    CHECK(numerical_rank(it.eigen.values, 1e-6) <= 2);
    const double floor = floor_of(matrices[0], s.sensing_coefficient(0), prior_fim(s.targets[0].angle_prior), 1.0) +
                         floor_of(matrices[1], s.sensing_coefficient(1), prior_fim(s.targets[1].angle_prior), 1.0);
    CHECK(it.objective > floor);
}

TEST_CASE("two-antenna joint BCRB agrees with a grid oracle")
{
    const ScenarioConfig s = small_scenario();
    const auto matrices = compute_all_mbar(s);
    const std::vector<double> c = {s.sensing_coefficient(0), s.sensing_coefficient(1)};
    const auto j = s.prior_fims();
    const JointBcrbObjective f(matrices, c, j);
    const CovarianceIterate it = minimize_joint_bcrb(matrices, s);
    const auto oracle = testing::grid_search_psd2([&](const cmat &r) { return f.value(r); }, s.p_max);
    CHECK(it.converged);
    CHECK(testing::relative_error(it.objective, oracle.value) < 1e-3);
    CHECK(it.objective <= oracle.value * (1.0 + 1e-9));
}

TEST_CASE("two-antenna rate optimum agrees with a grid oracle")
{
    const ScenarioConfig s = small_scenario();
    const auto samples = draw_comm_samples(s.comm_target().angle_prior, s.comm_gain, 1.0, s.tx, 1000, 6);
    const SampleAverageRate f(samples, LogBase::two);
    const CovarianceIterate it = maximize_rate_cov(samples, s.p_max);
    const auto oracle = testing::grid_search_psd2([&](const cmat &k) { return -f.value(k); }, s.p_max, 11, 10);
    CHECK(it.converged);
    CHECK(testing::relative_error(it.objective, -oracle.value) < 1e-3);
}

TEST_CASE("point-mass samples: rate optimum is the matched beam")
{
    const UlaSpec tx{10, 0.5};
    const double snr = 31.6, theta = 1.4;
    const std::vector<CommSample> samples(1000, CommSample{steering_vector(tx, theta), snr});
    const CovarianceIterate it = maximize_rate_cov(samples, 1.0);
    CHECK(it.converged);
    CHECK(it.objective == doctest::Approx(std::log2(1.0 + snr * 10.0)).epsilon(1e-8));
    CHECK(numerical_rank(it.eigen.values, 1e-6) == 1);
    const cvec a = steering_vector(tx, theta).normalized();
    CHECK(std::abs(a.dot(it.eigen.vectors.col(0))) >= 1.0 - 1e-6);
}

TEST_CASE("rate optimum never exceeds its own Jensen bound")
{
    const ScenarioConfig s = reference_scenario();
    for (std::uint64_t seed : {1u, 2u, 3u})
    {
        const auto samples = draw_comm_samples(s.comm_target().angle_prior, s.comm_gain, 1.0, s.tx, 1000, seed);
        const CovarianceIterate it = maximize_rate_cov(samples, s.p_max);
        CHECK(it.converged);
        CHECK(it.objective <= SampleAverageRate(samples, LogBase::two).jensen_bound(s.p_max));
    }
}

TEST_CASE("solver preconditions")
{
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    const std::vector<double> c = {1.0, 1.0};
    CHECK_THROWS_AS(minimize_joint_bcrb(matrices, c, std::vector<double>{0.0, 1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(minimize_joint_bcrb(matrices, std::vector<double>{0.0, 1.0}, c, 1.0), std::invalid_argument);
    const auto few = draw_comm_samples(s.comm_target().angle_prior, s.comm_gain, 1.0, s.tx, 999, 1);
    CHECK_THROWS_AS(maximize_rate_cov(few, 1.0), std::invalid_argument);
}
