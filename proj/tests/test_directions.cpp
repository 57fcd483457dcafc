// SPDX-License-Identifier: Apache-2.0

#include "isac/directions.hpp"
#include "pipeline_fixture.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace isac;

TEST_CASE("catalog holds every label with unit, phase-normalized entries")
{
    const testing::ScenarioPipeline p(reference_scenario());
    for (const char *label : {"v1_t1", "v2_t1", "v1_t2", "v2_t2", "rs1", "rs2", "rc1"})
    {
        INFO(label);
        REQUIRE(p.catalog.contains(label));
        const cvec &v = p.catalog.at(label);
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
        cvec copy = v;
        phase_normalize(copy);
        CHECK((copy - v).norm() < 1e-14);
    }
    CHECK(p.catalog.entries.size() == 7);
    CHECK_NOTHROW(p.catalog.check_invariants());
    CHECK(std::abs(p.catalog.at("v1_t1").dot(p.catalog.at("v2_t1"))) < 1e-8);
    CHECK_THROWS_AS(p.catalog.at("v3_t1"), std::out_of_range);
}

TEST_CASE("principal eigenvector maximizes the Rayleigh quotient")
{
    const testing::ScenarioPipeline p(reference_scenario());
    RandomStream stream(1);
    for (std::size_t i = 0; i < 2; ++i)
    {
        const cvec &v1 = p.catalog.at(target_direction_label(1, i + 1));
        const double top = quadratic_form(p.matrices[i].matrix, v1);
        for (int k = 0; k < 100; ++k)
            CHECK(top >= quadratic_form(p.matrices[i].matrix, testing::random_unit(10, stream)));
    }
}

TEST_CASE("full power on a target's principal direction attains its floor")
{
    const testing::ScenarioPipeline p(reference_scenario());
    for (std::size_t i = 0; i < 2; ++i)
    {
        const auto eps = bcrb_deterministic(
            deterministic_beam(p.catalog.at(target_direction_label(1, i + 1)), 1.0, 2), p.matrices, p.scenario);
        CHECK(testing::relative_error(eps[i], p.outer.eps_min_prime[i]) < 1e-10);
    }
}

TEST_CASE("point-mass comm prior: rate direction is the matched beam")
{
    ScenarioConfig s = reference_scenario();
    s.targets[0].angle_prior.kappa = 1e9;
    const testing::ScenarioPipeline p(s);
    const cvec a = steering_vector(s.tx, s.targets[0].angle_prior.mean_direction).normalized();
    CHECK(std::abs(a.dot(p.catalog.at("rc1"))) >= 1.0 - 1e-6);
}

TEST_CASE("catalog construction is deterministic")
{
    const testing::ScenarioPipeline a(reference_scenario());
    const testing::ScenarioPipeline b(reference_scenario());
    for (const auto &[label, v] : a.catalog.entries)
        CHECK(v == b.catalog.at(label));
}

TEST_CASE("catalog requires converged solver output")
{
    const testing::ScenarioPipeline p(reference_scenario());
    CovarianceIterate stale = p.bcrb_opt;
    stale.converged = false;
    CHECK_THROWS_AS(build_catalog(p.matrices, stale, p.rate_opt), std::logic_error);
    std::vector<SenseMatrix> bare = p.matrices;
    bare[0].eigen = {};
    CHECK_THROWS_AS(build_catalog(bare, p.bcrb_opt, p.rate_opt), std::logic_error);
}
