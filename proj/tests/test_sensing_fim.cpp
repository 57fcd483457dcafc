// SPDX-License-Identifier: Apache-2.0

#include "isac/sensing_fim.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace isac;

namespace
{

double floor_value(const SenseMatrix &m, const ScenarioConfig &s, std::size_t i)
{
    return 1.0 / (s.sensing_coefficient(i) * s.p_max * m.lambda_max() + prior_fim(s.targets[i].angle_prior));
}

} // namespace

TEST_CASE("point-mass prior reduces to the integrand at one angle")
{
    const UlaSpec tx{10, 0.5}, rx{10, 0.5};
    const TargetModel target{"t", {M_PI / 2, 1e9}, {1.0}, false};
    const SenseMatrix m = compute_mbar(target, tx, rx, 128);
    const SteeringPair a = steering(tx, M_PI / 2);
    const cmat expected = steering_derivative_norm_sq(rx, M_PI / 2) * a.a * a.a.adjoint() +
                          10.0 * a.a_dot * a.a_dot.adjoint();
    CHECK((m.matrix - expected).cwiseAbs().maxCoeff() < 1e-6 * expected.cwiseAbs().maxCoeff());
    CHECK(numerical_rank(m.eigen.values, 1e-6) == 2);
}

TEST_CASE("trace matches a scalar quadrature oracle")
{
    const UlaSpec tx{10, 0.5}, rx{8, 0.5};
    for (double kappa : {0.5, 2.184, 256.674})
    {
        const double mean = 0.9;
        const TargetModel target{"t", {mean, kappa}, {1.0}, false};
        const SenseMatrix m = compute_mbar(target, tx, rx, 512);
        auto trace_integrand = [&](double theta) {
            const double s2 = std::pow(2.0 * M_PI * 0.5 * std::sin(theta), 2);
            return s2 * 8.0 * (64.0 - 1.0) / 12.0 * 10.0 + 8.0 * s2 * 10.0 * (100.0 - 1.0) / 12.0;
        };
        const double reference = testing::von_mises_expectation(trace_integrand, mean, kappa);
        INFO("kappa " << kappa);
        CHECK(testing::relative_error(m.matrix.trace().real(), reference) < 1e-6);
    }
}

TEST_CASE("sensing matrices satisfy their invariants")
{
    const ScenarioConfig s = reference_scenario();
    for (const SenseMatrix &m : compute_all_mbar(s))
    {
        CHECK_NOTHROW(m.check_invariants());
        CHECK(m.dimension() == 10);
    }
}

TEST_CASE("quadrature converges when the budget doubles")
{
    const ScenarioConfig s = reference_scenario();
    for (const TargetModel &t : s.targets)
    {
        const double a = compute_mbar(t, s.tx, s.rx, 256).matrix.trace().real();
        const double b = compute_mbar(t, s.tx, s.rx, 512).matrix.trace().real();
        CHECK(testing::relative_error(a, b) < 1e-6);
    }
}

TEST_CASE("Monte Carlo angle expectation agrees with quadrature")
{
    const ScenarioConfig s = reference_scenario();
    const TargetModel &t = s.targets[1];
    const SenseMatrix q = compute_mbar(t, s.tx, s.rx, 512);
    const SenseMatrix mc = compute_mbar(t, s.tx, s.rx, 10000, {}, ExpectationMode::monte_carlo, 1);
    CHECK(testing::relative_error(mc.matrix.trace().real(), q.matrix.trace().real()) < 0.03);
    CHECK(testing::relative_error(mc.lambda_max(), q.lambda_max()) < 0.05);
    CHECK_NOTHROW(mc.check_invariants());
}

TEST_CASE("small budgets are rejected")
{
    const ScenarioConfig s = reference_scenario();
    CHECK_THROWS_AS(compute_mbar(s.targets[0], s.tx, s.rx, 63), std::invalid_argument);
}

TEST_CASE("deterministic BCRB closed form")
{
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    const auto priors = s.prior_fims();

    SUBCASE("zero power leaves only the prior")
    {
        const auto eps = bcrb_deterministic(deterministic_beam(matrices[0].eigen.vectors.col(0), 0.0, 2), matrices, s);
        CHECK(eps[0] == doctest::Approx(1.0 / priors[0]).epsilon(1e-15));
        CHECK(eps[1] == doctest::Approx(1.0 / priors[1]).epsilon(1e-15));
    }
    SUBCASE("full power on the principal eigenvector attains the floor")
    {
        for (std::size_t i = 0; i < 2; ++i)
        {
            const auto eps =
                bcrb_deterministic(deterministic_beam(matrices[i].eigen.vectors.col(0), s.p_max, 2), matrices, s);
            CHECK(testing::relative_error(eps[i], floor_value(matrices[i], s, i)) < 1e-10);
        }
    }
    SUBCASE("more power strictly reduces every bound")
    {
        RandomStream stream(4);
        for (int trial = 0; trial < 10; ++trial)
        {
            const cvec d = testing::random_unit(10, stream);
            const auto low = bcrb_deterministic(deterministic_beam(d, 0.4, 2), matrices, s);
            const auto high = bcrb_deterministic(deterministic_beam(d, 0.8, 2), matrices, s);
            CHECK(high[0] < low[0]);
            CHECK(high[1] < low[1]);
        }
    }
    SUBCASE("Gaussian or negative power is rejected")
    {
        const cvec d = matrices[0].eigen.vectors.col(0);
        CHECK_THROWS_AS(bcrb_deterministic(gaussian_beam(d, 1.0, 2), matrices, s), std::invalid_argument);
        TransmitStrategy bad = deterministic_beam(d, 1.0, 2);
        bad.slots[0].det_power = -0.1;
        CHECK_THROWS_AS(bcrb_deterministic(bad, matrices, s), std::invalid_argument);
    }
}

TEST_CASE("mixed estimator falls back to the closed form without Gaussian power")
{
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    RandomStream stream(12);
    TransmitStrategy strategy = deterministic_beam(testing::random_unit(10, stream), 0.7, 2);
    strategy.slots[1].det_direction = testing::random_unit(10, stream);
    strategy.slots[1].det_power = 1.3;
    const auto closed = bcrb_deterministic(strategy, matrices, s);
    const BcrbEstimate mc = bcrb_mixed_mc(strategy, matrices, s, 1, 1000);
    CHECK(mc.eps == closed);
    CHECK(mc.standard_error == std::vector<double>{0.0, 0.0});
    CHECK(mc.samples == 0);
}

TEST_CASE("Gaussian-only beam matches a one-dimensional oracle")
{
    // With power P per slot on unit direction d, the information is
    // c P q S / 2 with S = |G_1|^2 + |G_2|^2 ~ Gamma(2, 1).
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    const cvec d = steering_vector(s.tx, deg_to_rad(100.0)).normalized();
    const double power = 1.0;
    const BcrbEstimate mc = bcrb_mixed_mc(gaussian_beam(d, power, 2), matrices, s, 31, 20000);
    for (std::size_t i = 0; i < 2; ++i)
    {
        const double a = s.sensing_coefficient(i) * power * quadratic_form(matrices[i].matrix, d) / 2.0;
        const double j = prior_fim(s.targets[i].angle_prior);
        const double reference = testing::adaptive_simpson(
            [&](double x) {
                if (x >= 1.0)
                    return 0.0;
                const double t = x / (1.0 - x); // maps [0, 1) onto [0, inf)
                return t * std::exp(-t) / (a * t + j) / ((1.0 - x) * (1.0 - x));
            },
            0.0, 1.0, 1e-14, 512);
        INFO("target " << i);
        CHECK(std::abs(mc.eps[i] - reference) <= 4.0 * mc.standard_error[i]);
    }
}

TEST_CASE("random strategy bounds lie between the floor and the prior-only value")
{
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    RandomStream stream(2);
    for (int trial = 0; trial < 10; ++trial)
    {
        TransmitStrategy st;
        double remaining = 2.0 * s.p_max;
        for (int t = 0; t < 2; ++t)
        {
            const double ps = stream.uniform() * remaining / 2.0;
            const double pc = stream.uniform() * remaining / 2.0;
            remaining -= ps + pc;
            st.slots.push_back({testing::random_unit(10, stream), ps, testing::random_unit(10, stream), pc});
        }
        const BcrbEstimate e = bcrb_mixed_mc(st, matrices, s, 100 + trial, 2000);
        for (std::size_t i = 0; i < 2; ++i)
        {
            CHECK(e.eps[i] >= floor_value(matrices[i], s, i) - 3.0 * e.standard_error[i]);
            CHECK(e.eps[i] <= 1.0 / prior_fim(s.targets[i].angle_prior) + 3.0 * e.standard_error[i]);
        }
        CHECK(e.eps_sum == doctest::Approx(e.eps[0] + e.eps[1]).epsilon(1e-12));
    }
}

TEST_CASE("Gaussian beam is no better than the same deterministic beam")
{
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    const cvec d = matrices[1].eigen.vectors.col(0);
    const auto det = bcrb_deterministic(deterministic_beam(d, 1.0, 2), matrices, s);
    const BcrbEstimate gauss = bcrb_mixed_mc(gaussian_beam(d, 1.0, 2), matrices, s, 8, 10000);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(gauss.eps[i] >= det[i] - 3.0 * gauss.standard_error[i]);
}

TEST_CASE("slot order does not change the mixed estimate beyond sampling error")
{
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    RandomStream stream(41);
    TransmitStrategy st;
    st.slots.push_back({testing::random_unit(10, stream), 0.6, testing::random_unit(10, stream), 0.4});
    st.slots.push_back({testing::random_unit(10, stream), 0.2, testing::random_unit(10, stream), 0.8});
    TransmitStrategy swapped = st;
    std::swap(swapped.slots[0], swapped.slots[1]);
    const BcrbEstimate a = bcrb_mixed_mc(st, matrices, s, 5, 10000);
    const BcrbEstimate b = bcrb_mixed_mc(swapped, matrices, s, 6, 10000);
    for (std::size_t i = 0; i < 2; ++i)
    {
        const double se = std::hypot(a.standard_error[i], b.standard_error[i]);
        CHECK(std::abs(a.eps[i] - b.eps[i]) <= 3.0 * se);
    }
}

TEST_CASE("SenseMatrix repair clips round-off negative eigenvalues")
{
    cmat m = cmat::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = -1e-15;
    const SenseMatrix repaired = SenseMatrix::from_matrix(m);
    CHECK(repaired.eigen.values.minCoeff() == 0.0);
    CHECK_NOTHROW(repaired.check_invariants());
}
