// SPDX-License-Identifier: Apache-2.0

#include "isac/pipeline.hpp"
#include "isac/serialization.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace isac;
namespace fs = std::filesystem;

namespace
{

const fs::path kConfig = fs::path(ISAC_SOURCE_DIR) / "configs" / "reference_scenario.json";

fs::path scratch(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / ("isac_pipeline_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunOptions options(const fs::path &out)
{
    RunOptions o;
    o.config = kConfig;
    o.out_dir = out;
    o.mc_scale = 0.1;
    return o;
}

struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string &name) const
    {
        return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
    }
};

std::vector<std::string> split(const std::string &line)
{
    std::vector<std::string> out;
    std::stringstream s(line);
    std::string cell;
    while (std::getline(s, cell, ','))
        out.push_back(cell);
    return out;
}

CsvTable read_csv(const fs::path &p)
{
    std::ifstream in(p);
    CsvTable t;
    std::string line;
    std::getline(in, line);
    t.header = split(line);
    while (std::getline(in, line))
        t.rows.push_back(split(line));
    return t;
}

} // namespace

TEST_CASE("matrices command writes reloadable caches and reuses them")
{
    const fs::path out = scratch("matrices");
    CHECK(cmd_matrices(options(out)) == kExitSuccess);
    const fs::path dir = out / "matrices";
    REQUIRE(fs::exists(dir / "mbar_target1.json"));
    REQUIRE(fs::exists(dir / "mbar_target2.json"));
    REQUIRE(fs::exists(dir / "lbar.json"));
    CHECK_NOTHROW(sense_matrix_from_json(read_json(dir / "mbar_target1.json")).check_invariants());
    CHECK_NOTHROW(sense_matrix_from_json(read_json(dir / "mbar_target2.json")).check_invariants());
    CHECK_NOTHROW(lbar_from_json(read_json(dir / "lbar.json")).check_invariants());

    const std::string before = slurp(dir / "mbar_target2.json");
    const auto stamp = fs::last_write_time(dir / "mbar_target2.json");
    std::ostringstream log;
    RunOptions again = options(out);
    again.log = &log;
    CHECK(cmd_matrices(again) == kExitSuccess);
    CHECK(log.str().find("cache hit") != std::string::npos);
    CHECK(slurp(dir / "mbar_target2.json") == before);
    CHECK(fs::last_write_time(dir / "mbar_target2.json") == stamp);
    CHECK(read_json(out / "manifest.json").at("outputs").size() == 3);
}

TEST_CASE("configuration errors exit with code 2 and name the field")
{
    const fs::path out = scratch("bad_config");
    fs::create_directories(out);
    std::string text = slurp(kConfig);
    const auto at = text.find("\"sigma_s_sq\"");
    text.erase(at, text.find('\n', at) - at);
    const fs::path bad = out / "bad.json";
    std::ofstream(bad) << text;

    std::ostringstream log;
    RunOptions o = options(out / "run");
    o.config = bad;
    o.log = &log;
    CHECK(cmd_matrices(o) == kExitConfigError);
    CHECK(log.str().find("sigma_s_sq") != std::string::npos);

    RunOptions unknown = options(out / "run");
    unknown.choices = std::vector<std::string>{"G1", "X7"};
    CHECK(cmd_region(unknown) == kExitConfigError);
    RunOptions scheme = options(out / "run");
    scheme.scheme = "grid:0";
    CHECK(cmd_region(scheme) == kExitConfigError);
    RunOptions missing = options(out / "run");
    missing.config = out / "nope.json";
    CHECK(cmd_acquire(missing) == kExitConfigError);
}

TEST_CASE("region outputs are reproducible and independent of the worker count")
{
    const std::vector<std::string> choices = {"G1", "G2", "GAUSS", "S3"};
    auto run = [&](const std::string &name, int workers) {
        const fs::path out = scratch(name);
        RunOptions o = options(out);
        o.choices = choices;
        o.scheme = "dirichlet:25";
        o.workers = workers;
        REQUIRE(cmd_region(o) == kExitSuccess);
        return out;
    };
    const fs::path a = run("det_a", 1);
    const fs::path b = run("det_b", 1);
    const fs::path c = run("det_c", 8);
    for (const auto &entry : fs::directory_iterator(a))
    {
        const fs::path name = entry.path().filename();
        if (name == "manifest.json" || entry.is_directory())
            continue;
        INFO(name.string());
        CHECK(slurp(a / name) == slurp(b / name));
        CHECK(slurp(a / name) == slurp(c / name));
    }
    CHECK(read_csv(a / "region_G1.csv").rows.size() == 25);
}

TEST_CASE("region outputs respect the documented properties")
{
    const fs::path out = scratch("props");
    RunOptions o = options(out);
    o.choices = std::vector<std::string>{"G1", "G2", "G3", "G4", "GAUSS", "S1", "S2", "S3", "S4", "S5", "S6"};
    o.scheme = "grid:2";
    REQUIRE(cmd_region(o) == kExitSuccess);

    const json bounds = read_json(out / "bounds.json");
    const double ceiling = bounds.at("rate_ceiling").get<double>();
    CHECK(bounds.at("eps_min_prime").size() == 2);
    CHECK(bounds.at("kappa_pre").get<double>() == 2.184);
    CHECK(bounds.at("kappa_post").get<double>() == 256.674);
    CHECK(bounds.at("bcrb_optimum").at("converged").get<bool>());
    CHECK(bounds.contains("acquisition_estimate"));

    for (const char *s : {"S1", "S2", "S3", "S4", "S5", "S6"})
    {
        const CsvTable t = read_csv(out / (std::string("region_") + s + ".csv"));
        CHECK(t.header.size() == 1 + 12 + 2 + 2 + 2 + 1);
        for (const auto &row : t.rows)
            CHECK(row[t.column("rate")] == "0");
    }

    const CsvTable gauss = read_csv(out / "region_GAUSS.csv");
    for (const auto &row : gauss.rows)
        CHECK(std::stod(row[gauss.column("rate")]) <= ceiling + 3.0 * std::stod(row[gauss.column("rate_stderr")]));

    auto min_eps = [&](const std::string &choice) {
        const CsvTable t = read_csv(out / ("region_" + choice + ".csv"));
        double best = 1e300;
        for (const auto &row : t.rows)
            best = std::min(best, std::stod(row[t.column("eps_sum")]));
        return best;
    };
    const double g2 = min_eps("G2");
    for (const char *g : {"G1", "G3", "G4"})
        CHECK(g2 <= min_eps(g) * (1.0 + 1e-12));

    CHECK(fs::exists(out / "pareto_G1_eps_sum-rate.csv"));
    CHECK(fs::exists(out / "pareto_G1_per_target.csv"));
    CHECK(fs::exists(out / "catalog.json"));
    const json manifest = read_json(out / "manifest.json");
    CHECK(manifest.at("exit_code") == 0);
    CHECK(manifest.at("command") == "region");
    CHECK_FALSE(manifest.at("stages").empty());
}

TEST_CASE("acquire writes an updated config and a report")
{
    const fs::path out = scratch("acquire");
    REQUIRE(cmd_acquire(options(out)) == kExitSuccess);
    const RunConfig updated = load_config(out / "acquired_config.json");
    const json report = read_json(out / "acquisition_report.json");
    CHECK(updated.scenario.comm_target().angle_prior.kappa == report.at("kappa_post").get<double>());
    CHECK(updated.scenario.targets[1].angle_prior.kappa == 2.184);
    CHECK(report.at("kappa_pre").get<double>() == 2.184);
    CHECK(report.contains("proxy_definition"));
    CHECK(report.contains("relative_deviation"));
}

TEST_CASE("binary exit codes")
{
    const fs::path out = scratch("binary");
    const std::string exe = ISAC_BINARY;
    auto status = [](const std::string &cmd) {
        const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(raw);
    };
    CHECK(status(exe + " region --config " + kConfig.string() + " --out-dir " + out.string() + " --choices G7") ==
          kExitConfigError);
    CHECK(status(exe + " region --config " + kConfig.string() + " --workers 0") == kExitConfigError);
    CHECK(status(exe + " bogus") == kExitConfigError);
    CHECK(status(exe + " acquire --config " + kConfig.string() + " --out-dir " + out.string()) == kExitSuccess);
}
