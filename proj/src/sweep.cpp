// SPDX-License-Identifier: Apache-2.0

#include "isac/sweep.hpp"

#include "isac/comm_rate.hpp"
#include "isac/kernels.hpp"
#include "isac/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace isac
{

RegionPoint evaluate_point(const TransmitStrategy &strategy, std::span<const SenseMatrix> matrices,
                           const ScenarioConfig &scenario, std::uint64_t seed, Execution exec)
{
    strategy.validate(scenario.p_max);
    RegionPoint point;

    const BcrbEstimate bcrb = bcrb_mixed_mc(strategy, matrices, scenario, derive_seed(seed, kBcrbStream),
                                            scenario.mc.gaussian_samples, exec);
    point.eps = bcrb.eps;
    point.eps_stderr = bcrb.standard_error;
    point.eps_sum = bcrb.eps_sum;
    point.eps_sum_stderr = bcrb.eps_sum_standard_error;

    const TargetModel &comm = scenario.comm_target();
    const RateEstimate rate =
        ergodic_rate_mc(strategy, comm.angle_prior, scenario.comm_gain, scenario.sigma_c_sq, scenario.tx,
                        derive_seed(seed, kRateStream), scenario.mc.comm_angle_samples, scenario.rate_log_base, exec);
    point.rate = rate.rate;
    point.rate_stderr = rate.standard_error;
    return point;
}

std::vector<RegionPoint> run_sweep(const ChoiceSpec &choice, std::span<const SimplexAllocation> allocations,
                                   const DirectionCatalog &catalog, std::span<const SenseMatrix> matrices,
                                   const ScenarioConfig &scenario, std::uint64_t base_seed, Execution exec)
{
    if (allocations.empty())
        throw std::invalid_argument("run_sweep: no allocations");
    std::vector<RegionPoint> points(allocations.size());
    kernels::for_each_index(
        allocations.size(),
        [&](std::size_t k) {
            RegionPoint &point = points[k];
            try
            {
                const TransmitStrategy strategy = build_strategy(choice, allocations[k], catalog, scenario);
                point = evaluate_point(strategy, matrices, scenario, derive_seed(base_seed, k), Execution::serial());
            }
            catch (const std::exception &e)
            {
                point = RegionPoint{};
                point.ok = false;
                point.diagnostic = e.what();
            }
            point.choice = choice.id;
            point.lambda = allocations[k].lambda;
        },
        exec);
    return points;
}

double Objective::value(const RegionPoint &p) const
{
    if (key == "eps_sum")
        return p.eps_sum;
    if (key == "rate")
        return p.rate;
    if (key.rfind("eps_", 0) == 0)
    {
        std::size_t index = 0;
        const char *first = key.data() + 4;
        const char *last = key.data() + key.size();
        const auto [ptr, ec] = std::from_chars(first, last, index);
        if (ec == std::errc() && ptr == last && index >= 1 && index <= p.eps.size())
            return p.eps[index - 1];
    }
    throw std::invalid_argument("unknown objective \"" + key + "\"");
}

Objective Objective::parse(const std::string &text)
{
    const auto colon = text.find(':');
    if (colon != std::string::npos)
    {
        const std::string sense = text.substr(colon + 1);
        if (sense == "min" || sense == "max")
            return {text.substr(0, colon), sense == "max"};
    }
    throw std::invalid_argument("objective must look like key:min or key:max, got \"" + text + "\"");
}

std::string Objective::to_string() const
{
    return key + (maximize ? ":max" : ":min");
}

std::vector<RegionPoint> pareto_front(std::span<const RegionPoint> points, std::span<const Objective> objectives)
{
    if (objectives.empty())
        throw std::invalid_argument("pareto_front: no objectives");

    // Oriented so that smaller is better in every coordinate.
    std::vector<std::vector<double>> keys;
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < points.size(); ++k)
    {
        if (!points[k].ok)
            continue;
        std::vector<double> key;
        for (const Objective &o : objectives)
            key.push_back(o.maximize ? -o.value(points[k]) : o.value(points[k]));
        keys.push_back(std::move(key));
        candidates.push_back(k);
    }

    auto dominates = [](const std::vector<double> &a, const std::vector<double> &b) {
        bool strictly = false;
        for (std::size_t j = 0; j < a.size(); ++j)
        {
            if (a[j] > b[j])
                return false;
            strictly = strictly || a[j] < b[j];
        }
        return strictly;
    };
    auto same = [](const std::vector<double> &a, const std::vector<double> &b) {
        for (std::size_t j = 0; j < a.size(); ++j)
            if (std::abs(a[j] - b[j]) > 1e-12)
                return false;
        return true;
    };

    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a)
    {
        bool dominated = false;
        for (std::size_t b = 0; b < candidates.size() && !dominated; ++b)
            dominated = b != a && dominates(keys[b], keys[a]);
        if (dominated)
            continue;
        bool duplicate = false;
        for (std::size_t k : kept)
            duplicate = duplicate || same(keys[k], keys[a]);
        if (!duplicate)
            kept.push_back(a);
    }

    std::stable_sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < objectives.size(); ++j)
        {
            const double va = objectives[j].value(points[candidates[a]]);
            const double vb = objectives[j].value(points[candidates[b]]);
            if (va != vb)
                return va < vb;
        }
        return false;
    });

    std::vector<RegionPoint> front;
    for (std::size_t k : kept)
        front.push_back(points[candidates[k]]);
    return front;
}

std::string format_number(double value)
{
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
    if (ec != std::errc())
        throw std::runtime_error("format_number: conversion failed");
    return std::string(buffer, ptr);
}

void write_region_csv(std::ostream &out, std::span<const RegionPoint> points, int lambda_count, int target_count)
{
    out << "choice";
    for (int l = 1; l <= lambda_count; ++l)
        out << ",lambda_" << l;
    for (int i = 1; i <= target_count; ++i)
        out << ",eps_" << i;
    out << ",eps_sum,rate";
    for (int i = 1; i <= target_count; ++i)
        out << ",eps_stderr_" << i;
    out << ",rate_stderr\n";

    for (const RegionPoint &p : points)
    {
        if (!p.ok)
            continue;
        if (static_cast<int>(p.lambda.size()) != lambda_count || static_cast<int>(p.eps.size()) != target_count)
            throw std::invalid_argument("write_region_csv: point shape does not match the header");
        out << to_string(p.choice);
        for (double l : p.lambda)
            out << ',' << format_number(l);
        for (double e : p.eps)
            out << ',' << format_number(e);
        out << ',' << format_number(p.eps_sum) << ',' << format_number(p.rate);
        for (double s : p.eps_stderr)
            out << ',' << format_number(s);
        out << ',' << format_number(p.rate_stderr) << '\n';
    }
}

} // namespace isac
