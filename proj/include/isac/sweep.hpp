// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/directions.hpp"
#include "isac/execution.hpp"
#include "isac/scenario.hpp"
#include "isac/sensing_fim.hpp"
#include "isac/strategy.hpp"
#include "isac/transmit_strategy.hpp"

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace isac
{

struct RegionPoint
{
    ChoiceId choice = ChoiceId::G1;
    std::vector<double> lambda;
    std::vector<double> eps; // per target, rad^2
    double eps_sum = 0.0;
    double rate = 0.0;
    std::vector<double> eps_stderr;
    double eps_sum_stderr = 0.0;
    double rate_stderr = 0.0;
    bool ok = true;
    std::string diagnostic; // set when ok == false
};

// Sub-streams of a point seed.
inline constexpr std::uint64_t kBcrbStream = 0;
inline constexpr std::uint64_t kRateStream = 1;

// BCRBs (closed form without Gaussian power, Monte Carlo otherwise) and the
// ergodic rate of one strategy. Pure function of its arguments.
RegionPoint evaluate_point(const TransmitStrategy &strategy, std::span<const SenseMatrix> matrices,
                           const ScenarioConfig &scenario, std::uint64_t seed, Execution exec = {});

// One point per allocation, in input order. Point k uses seed
// derive_seed(base_seed, k). Failing points are returned with ok == false.
std::vector<RegionPoint> run_sweep(const ChoiceSpec &choice, std::span<const SimplexAllocation> allocations,
                                   const DirectionCatalog &catalog, std::span<const SenseMatrix> matrices,
                                   const ScenarioConfig &scenario, std::uint64_t base_seed, Execution exec = {});

struct Objective
{
    std::string key; // eps_sum, rate, or eps_<i> (1-based target)
    bool maximize = false;

    double value(const RegionPoint &p) const;
    static Objective parse(const std::string &text); // "eps_sum:min", "rate:max"
    std::string to_string() const;
};

// Non-dominated subset of the successful points, sorted by the first
// objective ascending (then the second). Points equal in every objective to
// 1e-12 are kept once.
std::vector<RegionPoint> pareto_front(std::span<const RegionPoint> points, std::span<const Objective> objectives);

// Region CSV: choice, lambda_1..lambda_L, eps_1..eps_N, eps_sum, rate,
// eps_stderr_1..eps_stderr_N, rate_stderr. Failed points are skipped.
void write_region_csv(std::ostream &out, std::span<const RegionPoint> points, int lambda_count, int target_count);

// printf-style %.17g, independent of the global locale.
std::string format_number(double value);

} // namespace isac
