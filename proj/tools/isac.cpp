// SPDX-License-Identifier: Apache-2.0

#include "isac/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace
{

void add_common(CLI::App &cmd, isac::RunOptions &options)
{
    cmd.add_option("--config", options.config, "scenario config (JSON, comments allowed)")->required();
    cmd.add_option("--out-dir", options.out_dir, "output directory")->capture_default_str();
    cmd.add_option("--seed", options.seed, "override the config's base seed");
    cmd.add_option("--workers", options.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--mc-scale", options.mc_scale, "multiplier on the Monte Carlo budgets")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
}

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"ISAC trade-off regions, outer bounds and acquisition updates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", isac::kToolVersion);

    isac::RunOptions options;
    options.log = &std::cerr;

    auto *matrices = app.add_subcommand("matrices", "compute or reuse the sensing and comm matrix caches");
    add_common(*matrices, options);

    auto *region = app.add_subcommand("region", "optimize, build the direction catalog and sweep the region");
    add_common(*region, options);
    std::string choices;
    std::string scheme;
    region->add_option("--choices", choices, "comma-separated choice ids (G1..G4, S1..S6, GAUSS)");
    region->add_option("--scheme", scheme, "vertices | grid:K | dirichlet:N");

    auto *acquire = app.add_subcommand("acquire", "pre/post-acquisition concentration update");
    add_common(*acquire, options);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : isac::kExitConfigError;
    }

    if (!choices.empty())
        options.choices = split_list(choices);
    if (!scheme.empty())
        options.scheme = scheme;

    if (matrices->parsed())
        return isac::cmd_matrices(options);
    if (region->parsed())
        return isac::cmd_region(options);
    return isac::cmd_acquire(options);
}
