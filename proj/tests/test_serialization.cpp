// SPDX-License-Identifier: Apache-2.0

#include "isac/serialization.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace isac;

namespace
{

std::string reference_config_text()
{
    std::ifstream in(std::string(ISAC_SOURCE_DIR) + "/configs/reference_scenario.json");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::string without(std::string text, const std::string &line_fragment)
{
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.find(line_fragment) == std::string::npos)
            out << line << '\n';
    return out.str();
}

std::string field_error(const std::string &text)
{
    try
    {
        parse_config(text);
    }
    catch (const ConfigError &e)
    {
        return e.field();
    }
    return "<none>";
}

} // namespace

TEST_CASE("shipped config describes the two-target scenario")
{
    const RunConfig c = parse_config(reference_config_text());
    const ScenarioConfig expected = reference_scenario();
    const ScenarioConfig &s = c.scenario;
    CHECK(s.tx.num_elements == 10);
    CHECK(s.rx.num_elements == 10);
    CHECK(s.coherence_time == 2);
    CHECK(s.base_seed == expected.base_seed);
    REQUIRE(s.targets.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
    {
        CHECK(s.targets[i].angle_prior.kappa == expected.targets[i].angle_prior.kappa);
        CHECK(s.targets[i].angle_prior.mean_direction ==
              doctest::Approx(expected.targets[i].angle_prior.mean_direction).epsilon(1e-15));
        CHECK(s.targets[i].gain_prior.second_moment == expected.targets[i].gain_prior.second_moment);
        CHECK(s.targets[i].is_comm_user == expected.targets[i].is_comm_user);
    }
    CHECK(s.comm_gain.second_moment == doctest::Approx(expected.comm_gain.second_moment).epsilon(1e-15));
    CHECK(s.acquisition.kappa_pre == 2.184);
    CHECK(s.acquisition.power < 0.0);
    CHECK(c.sweep.scheme == "grid:2");
}

TEST_CASE("missing and mistyped fields are named")
{
    const std::string text = reference_config_text();
    CHECK(field_error(without(text, "\"sigma_s_sq\"")) == "sigma_s_sq");
    CHECK(field_error(without(text, "\"quadrature_nodes\"")) == "monte_carlo.quadrature_nodes");
    std::string no_kappa = text;
    no_kappa.replace(no_kappa.find("\"kappa\": 2.184"), 7, "\"kappa_x\"");
    CHECK(field_error(no_kappa) == "targets[1].kappa");
    std::string bad_type = text;
    bad_type.replace(bad_type.find("\"coherence_time\": 2"), 19, "\"coherence_time\": \"2\"");
    CHECK(field_error(bad_type) == "coherence_time");
    CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
    std::string two_users = text;
    two_users.replace(two_users.find("\"comm_user\": false"), 18, "\"comm_user\": true");
    CHECK_THROWS_AS(parse_config(two_users), ConfigError);
}

TEST_CASE("config serialization round-trips")
{
    const RunConfig c = parse_config(reference_config_text());
    const json once = config_to_json(c);
    const json twice = config_to_json(parse_config(once.dump()));
    CHECK(once.dump() == twice.dump());
    CHECK(content_hash(once) == content_hash(twice));
    RunConfig changed = c;
    changed.scenario.base_seed += 1;
    CHECK(content_hash(config_to_json(changed)) != content_hash(once));
    CHECK(content_hash(once).size() == 16);
}

TEST_CASE("matrix inputs hash ignores Monte Carlo budgets")
{
    ScenarioConfig s = reference_scenario();
    const std::string h = matrix_inputs_hash(s);
    s.mc.gaussian_samples = 123;
    s.base_seed = 5;
    CHECK(matrix_inputs_hash(s) == h);
    s.targets[1].angle_prior.kappa = 3.0;
    CHECK(matrix_inputs_hash(s) != h);
}

TEST_CASE("sensing and comm matrices round-trip exactly")
{
    const ScenarioConfig s = reference_scenario();
    const auto matrices = compute_all_mbar(s);
    for (std::size_t i = 0; i < matrices.size(); ++i)
    {
        const json j = json::parse(sense_matrix_to_json(matrices[i], i, "abc").dump(2));
        const SenseMatrix back = sense_matrix_from_json(j);
        CHECK(back.matrix == matrices[i].matrix);
        CHECK(back.eigen.values == matrices[i].eigen.values);
        CHECK(back.eigen.vectors == matrices[i].eigen.vectors);
        CHECK(j.at("inputs_hash") == "abc");
    }
    const LbarMatrix l = compute_lbar(s.comm_target().angle_prior, s.tx, 256);
    const LbarMatrix back = lbar_from_json(json::parse(lbar_to_json(l, "x").dump()));
    CHECK(back.matrix == l.matrix);
    CHECK(back.eigen.vectors == l.eigen.vectors);
    CHECK_THROWS(sense_matrix_from_json(lbar_to_json(l, "x")));
}

TEST_CASE("complex entries are stored as [re, im] pairs")
{
    cmat m(1, 2);
    m << cplx(1.5, -2.0), cplx(0.0, 0.25);
    const json j = matrix_to_json(m);
    CHECK(j.dump() == "[[[1.5,-2.0],[0.0,0.25]]]");
    CHECK(matrix_from_json(j) == m);
}
