// SPDX-License-Identifier: Apache-2.0

#include "isac/pipeline.hpp"

#include "isac/acquisition.hpp"
#include "isac/bounds.hpp"
#include "isac/rng.hpp"
#include "isac/serialization.hpp"
#include "isac/sweep.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

namespace isac
{

namespace fs = std::filesystem;

namespace
{

class Run
{
  public:
    Run(const RunOptions &options, std::string command) : options_(options), command_(std::move(command)) {}

    RunConfig load()
    {
        RunConfig config = load_config(options_.config);
        if (options_.seed)
            config.scenario.base_seed = *options_.seed;
        if (options_.mc_scale != 1.0)
            config.scenario.mc = config.scenario.mc.scaled(options_.mc_scale);
        if (options_.choices)
            config.sweep.choices = *options_.choices;
        if (options_.scheme)
            config.sweep.scheme = *options_.scheme;
        if (options_.workers < 1)
            throw ConfigError("workers", "must be >= 1");
        scenario_hash_ = content_hash(config_to_json(config));
        base_seed_ = config.scenario.base_seed;
        fs::create_directories(options_.out_dir);
        return config;
    }

    Execution exec() const { return Execution::threads(options_.workers); }

    template <class F>
    auto stage(const std::string &name, F &&body)
    {
        const auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(body())>)
        {
            body();
            record(name, start);
        }
        else
        {
            auto result = body();
            record(name, start);
            return result;
        }
    }

    void output(const fs::path &path) { outputs_.push_back(fs::relative(path, options_.out_dir).generic_string()); }

    void write(const fs::path &path, const json &j)
    {
        write_json(path, j);
        output(path);
    }

    void log(const std::string &line) const
    {
        if (options_.log)
            *options_.log << line << '\n';
    }

    fs::path path(const std::string &name) const { return options_.out_dir / name; }

    // Timings make the manifest run-specific; every other output is a pure
    // function of the config, seed and budgets.
    void write_manifest(int exit_code)
    {
        json stages = json::array();
        for (const auto &[name, seconds] : timings_)
            stages.push_back({{"stage", name}, {"seconds", seconds}});
        write_json(path("manifest.json"), {{"command", command_},
                                           {"tool_version", kToolVersion},
                                           {"scenario_hash", scenario_hash_},
                                           {"base_seed", base_seed_},
                                           {"workers", options_.workers},
                                           {"exit_code", exit_code},
                                           {"stages", stages},
                                           {"outputs", outputs_}});
    }

  private:
    void record(const std::string &name, std::chrono::steady_clock::time_point start)
    {
        timings_.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }

    const RunOptions &options_;
    std::string command_;
    std::string scenario_hash_;
    std::uint64_t base_seed_ = 0;
    std::vector<std::pair<std::string, double>> timings_;
    std::vector<std::string> outputs_;
};

struct MatrixSet
{
    std::vector<SenseMatrix> sensing;
    LbarMatrix comm;
    bool cache_hit = false;
};

MatrixSet load_or_compute_matrices(Run &run, const ScenarioConfig &scenario)
{
    const fs::path dir = run.path("matrices");
    fs::create_directories(dir);
    const std::string hash = matrix_inputs_hash(scenario);
    auto sensing_path = [&](std::size_t i) { return dir / ("mbar_target" + std::to_string(i + 1) + ".json"); };
    const fs::path comm_path = dir / "lbar.json";

    MatrixSet set;
    bool hit = fs::exists(comm_path);
    for (std::size_t i = 0; hit && i < scenario.targets.size(); ++i)
        hit = fs::exists(sensing_path(i));
    if (hit)
    {
        try
        {
            for (std::size_t i = 0; i < scenario.targets.size() && hit; ++i)
            {
                const json j = read_json(sensing_path(i));
                hit = j.value("inputs_hash", "") == hash;
                if (hit)
                    set.sensing.push_back(sense_matrix_from_json(j));
            }
            if (hit)
            {
                const json j = read_json(comm_path);
                hit = j.value("inputs_hash", "") == hash;
                if (hit)
                    set.comm = lbar_from_json(j);
            }
        }
        catch (const std::exception &)
        {
            hit = false;
        }
    }

    if (hit)
    {
        set.cache_hit = true;
        run.log("matrices: cache hit (" + hash + ")");
    }
    else
    {
        set = run.stage("matrices", [&] {
            MatrixSet fresh;
            fresh.sensing = compute_all_mbar(scenario, run.exec());
            fresh.comm =
                compute_lbar(scenario.comm_target().angle_prior, scenario.tx, scenario.mc.quadrature_nodes, run.exec());
            return fresh;
        });
        for (std::size_t i = 0; i < set.sensing.size(); ++i)
            write_json(sensing_path(i), sense_matrix_to_json(set.sensing[i], i, hash));
        write_json(comm_path, lbar_to_json(set.comm, hash));
        run.log("matrices: computed (" + hash + ")");
    }
    for (std::size_t i = 0; i < set.sensing.size(); ++i)
        run.output(sensing_path(i));
    run.output(comm_path);
    return set;
}

json iterate_summary(const CovarianceIterate &it)
{
    json values = json::array();
    for (Eigen::Index k = 0; k < it.eigen.values.size(); ++k)
        values.push_back(it.eigen.values(k));
    const double top = it.eigen.max_value();
    return {{"objective", it.objective},
            {"iterations", it.iterations},
            {"converged", it.converged},
            {"scaled_gradient_norm", it.gradient_norm},
            {"numerical_rank", top > 0.0 ? numerical_rank(it.eigen.values, 1e-6) : 0},
            {"eigenvalues", values},
            {"diagnostic", it.diagnostic}};
}

std::vector<ChoiceSpec> parse_choices(const std::vector<std::string> &ids, int coherence_time)
{
    std::vector<ChoiceSpec> out;
    for (const std::string &id : ids)
    {
        try
        {
            out.push_back(ChoiceSpec::make(parse_choice(id), coherence_time));
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError("choices", e.what());
        }
    }
    if (out.empty())
        throw ConfigError("choices", "no choices given");
    return out;
}

AllocationScheme parse_scheme(const std::string &text)
{
    try
    {
        return AllocationScheme::parse(text);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError("scheme", e.what());
    }
}

template <class Body>
int guarded(const RunOptions &options, const std::string &command, Body &&body)
{
    Run run(options, command);
    auto report = [&](const std::string &line) {
        if (options.log)
            *options.log << command << ": " << line << '\n';
    };
    int code = kExitSuccess;
    try
    {
        code = body(run);
    }
    catch (const ConfigError &e)
    {
        report(std::string("configuration error: ") + e.what());
        return kExitConfigError;
    }
    catch (const std::exception &e)
    {
        report(std::string("error: ") + e.what());
        code = kExitNonConvergence;
    }
    try
    {
        if (fs::exists(options.out_dir))
            run.write_manifest(code);
    }
    catch (const std::exception &e)
    {
        report(std::string("cannot write manifest: ") + e.what());
    }
    return code;
}

} // namespace

int cmd_matrices(const RunOptions &options)
{
    return guarded(options, "matrices", [&](Run &run) {
        const RunConfig config = run.load();
        load_or_compute_matrices(run, config.scenario);
        return kExitSuccess;
    });
}

int cmd_region(const RunOptions &options)
{
    return guarded(options, "region", [&](Run &run) {
        const RunConfig config = run.load();
        const ScenarioConfig &scenario = config.scenario;
        const std::vector<ChoiceSpec> choices = parse_choices(config.sweep.choices, scenario.coherence_time);
        const AllocationScheme scheme = parse_scheme(config.sweep.scheme);

        const MatrixSet matrices = load_or_compute_matrices(run, scenario);

        const CovarianceIterate bcrb_opt =
            run.stage("bcrb_optimization", [&] { return minimize_joint_bcrb(matrices.sensing, scenario); });
        const CovarianceIterate rate_opt = run.stage("rate_optimization", [&] {
            const TargetModel &comm = scenario.comm_target();
            const auto samples =
                draw_comm_samples(comm.angle_prior, scenario.comm_gain, scenario.sigma_c_sq, scenario.tx,
                                  scenario.mc.rate_saa_samples, derive_seed(scenario.base_seed, kRateSamplesStream));
            return maximize_rate_cov(samples, scenario.p_max, scenario.rate_log_base);
        });

        const OuterRegion outer = outer_region(scenario, matrices.sensing, matrices.comm);
        const AcquisitionResult acquisition = run.stage("acquisition", [&] { return update_kappa(scenario, run.exec()); });

        json bounds = {{"eps_min_prime", outer.eps_min_prime},
                       {"eps_floor", outer.eps_floor},
                       {"rate_ceiling", outer.rate_ceiling},
                       {"rate_log_base", to_string(scenario.rate_log_base)},
                       {"kappa_pre", acquisition.kappa_pre},
                       {"kappa_post", scenario.comm_target().angle_prior.kappa},
                       {"acquisition_estimate", acquisition_to_json(acquisition)},
                       {"bcrb_optimum", iterate_summary(bcrb_opt)},
                       {"rate_optimum", iterate_summary(rate_opt)}};
        if (bcrb_opt.converged)
            bounds["joint_optimum_margin"] = bcrb_opt.objective - outer.eps_floor;
        run.write(run.path("bounds.json"), bounds);

        if (!bcrb_opt.converged || !rate_opt.converged)
        {
            run.log("region: covariance optimization did not converge; sweep skipped");
            return kExitNonConvergence;
        }

        const DirectionCatalog catalog = build_catalog(matrices.sensing, bcrb_opt, rate_opt);
        run.write(run.path("catalog.json"), catalog_to_json(catalog));

        const std::uint64_t allocation_seed = derive_seed(scenario.base_seed, kAllocationStream);
        const std::uint64_t sweep_seed = derive_seed(scenario.base_seed, kSweepStream);
        const int targets = static_cast<int>(scenario.targets.size());
        std::vector<Objective> sum_rate = {{"eps_sum", false}, {"rate", true}};
        std::vector<Objective> per_target;
        for (int i = 1; i <= targets; ++i)
            per_target.push_back({"eps_" + std::to_string(i), false});

        json summary = json::array();
        for (const ChoiceSpec &choice : choices)
        {
            const std::string name = to_string(choice.id);
            const auto reduced = enumerate_allocations(choice.free_dimension(), scheme,
                                                       derive_seed(allocation_seed, static_cast<std::uint64_t>(choice.id)));
            std::vector<SimplexAllocation> allocations;
            allocations.reserve(reduced.size());
            for (const auto &r : reduced)
                allocations.push_back(choice.expand(r));

            const auto points = run.stage("sweep_" + name, [&] {
                return run_sweep(choice, allocations, catalog, matrices.sensing, scenario, sweep_seed, run.exec());
            });

            auto write_csv = [&](const std::string &file, std::span<const RegionPoint> rows) {
                std::ofstream out(run.path(file), std::ios::binary);
                write_region_csv(out, rows, choice.size(), targets);
                run.output(run.path(file));
            };
            write_csv("region_" + name + ".csv", points);
            write_csv("pareto_" + name + "_eps_sum-rate.csv", pareto_front(points, sum_rate));
            if (targets > 1)
                write_csv("pareto_" + name + "_per_target.csv", pareto_front(points, per_target));

            json failures = json::array();
            double min_eps = 0.0, min_eps_stderr = 0.0, max_rate = 0.0, max_rate_stderr = 0.0;
            bool any = false;
            for (std::size_t k = 0; k < points.size(); ++k)
            {
                const RegionPoint &p = points[k];
                if (!p.ok)
                {
                    failures.push_back({{"index", k}, {"diagnostic", p.diagnostic}});
                    continue;
                }
                if (!any || p.eps_sum < min_eps)
                {
                    min_eps = p.eps_sum;
                    min_eps_stderr = p.eps_sum_stderr;
                }
                if (!any || p.rate > max_rate)
                {
                    max_rate = p.rate;
                    max_rate_stderr = p.rate_stderr;
                }
                any = true;
            }
            summary.push_back({{"choice", name},
                               {"points", points.size()},
                               {"failed", failures},
                               {"min_eps_sum", min_eps},
                               {"min_eps_sum_stderr", min_eps_stderr},
                               {"max_rate", max_rate},
                               {"max_rate_stderr", max_rate_stderr}});
            run.log("region: " + name + " " + std::to_string(points.size()) + " points");
        }
        run.write(run.path("sweep_summary.json"), {{"scheme", scheme.to_string()}, {"choices", summary}});
        return kExitSuccess;
    });
}

int cmd_acquire(const RunOptions &options)
{
    return guarded(options, "acquire", [&](Run &run) {
        const RunConfig config = run.load();
        const ScenarioConfig &scenario = config.scenario;
        const AcquisitionResult result = run.stage("acquisition", [&] { return update_kappa(scenario, run.exec()); });

        RunConfig updated = config;
        updated.scenario = apply_acquisition(scenario, result);
        run.write(run.path("acquired_config.json"), config_to_json(updated));

        const double configured = scenario.comm_target().angle_prior.kappa;
        json report = acquisition_to_json(result);
        report["comm_target"] = scenario.comm_target().name;
        report["kappa_post_configured"] = configured;
        report["relative_deviation"] = (result.kappa_post - configured) / configured;
        run.write(run.path("acquisition_report.json"), report);
        run.log("acquire: kappa_pre " + format_number(result.kappa_pre) + " -> kappa_post " +
                format_number(result.kappa_post));
        return kExitSuccess;
    });
}

} // namespace isac
