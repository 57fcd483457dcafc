// SPDX-License-Identifier: Apache-2.0

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP variant. Work is cut into blocks whose layout depends only on the
// problem size, each block is reduced serially, and block results are
// combined in block order; the two variants therefore agree bit for bit and
// the result does not depend on the thread count.

#pragma once

#include "isac/execution.hpp"
#include "isac/linalg.hpp"
#include "isac/quadrature.hpp"
#include "isac/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <omp.h>

namespace isac::kernels
{

inline constexpr std::size_t kMaxQuadratureBlocks = 64;
inline constexpr std::size_t kMonteCarloChunk = 256;

struct BlockRange
{
    std::size_t begin;
    std::size_t end;
};

inline std::size_t block_count(std::size_t n, std::size_t max_blocks)
{
    return n < max_blocks ? n : max_blocks;
}

inline BlockRange block_range(std::size_t n, std::size_t blocks, std::size_t b)
{
    return {b * n / blocks, (b + 1) * n / blocks};
}

// ---- Weighted expectation of a Hermitian-matrix-valued integrand ----------
//
// integrand(theta, out) must write f(theta) into out (dim x dim); the kernel
// returns sum_k w_k f(theta_k).

template <class Integrand>
cmat block_expectation(const QuadratureRule &rule, BlockRange r, Eigen::Index dim, Integrand &integrand)
{
    cmat acc = cmat::Zero(dim, dim);
    cmat term(dim, dim);
    for (std::size_t k = r.begin; k < r.end; ++k)
    {
        integrand(rule.nodes[k], term);
        acc += rule.weights[k] * term;
    }
    return acc;
}

template <class Integrand>
cmat expectation_serial(const QuadratureRule &rule, Eigen::Index dim, Integrand integrand)
{
    const std::size_t blocks = block_count(rule.size(), kMaxQuadratureBlocks);
    cmat total = cmat::Zero(dim, dim);
    for (std::size_t b = 0; b < blocks; ++b)
        total += block_expectation(rule, block_range(rule.size(), blocks, b), dim, integrand);
    return total;
}

template <class Integrand>
cmat expectation_omp(const QuadratureRule &rule, Eigen::Index dim, Integrand integrand, int workers)
{
    const std::size_t blocks = block_count(rule.size(), kMaxQuadratureBlocks);
    std::vector<cmat> partial(blocks);
    const auto nblocks = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(static) num_threads(workers) firstprivate(integrand)
    for (std::int64_t b = 0; b < nblocks; ++b)
        partial[static_cast<std::size_t>(b)] =
            block_expectation(rule, block_range(rule.size(), blocks, static_cast<std::size_t>(b)), dim, integrand);
    cmat total = cmat::Zero(dim, dim);
    for (const auto &p : partial)
        total += p;
    return total;
}

template <class Integrand>
cmat expectation(const QuadratureRule &rule, Eigen::Index dim, Integrand integrand, Execution exec)
{
    if (exec.parallel())
        return expectation_omp(rule, dim, integrand, exec.workers);
    return expectation_serial(rule, dim, integrand);
}

// ---- Monte Carlo sample means with standard errors -------------------------
//
// draw(stream, out) writes one vector-valued sample into out. Samples are
// produced in chunks of kMonteCarloChunk; chunk c draws from
// RandomStream(seed, c).

struct SampleStats
{
    std::size_t count = 0;
    std::vector<double> mean;
    std::vector<double> m2; // sum of squared deviations

    explicit SampleStats(std::size_t components = 0) : mean(components, 0.0), m2(components, 0.0) {}

    void add(std::span<const double> x)
    {
        ++count;
        for (std::size_t j = 0; j < mean.size(); ++j)
        {
            const double delta = x[j] - mean[j];
            mean[j] += delta / static_cast<double>(count);
            m2[j] += delta * (x[j] - mean[j]);
        }
    }

    // Chan et al. pairwise combination.
    void merge(const SampleStats &other)
    {
        if (other.count == 0)
            return;
        if (count == 0)
        {
            *this = other;
            return;
        }
        const double na = static_cast<double>(count);
        const double nb = static_cast<double>(other.count);
        const double n = na + nb;
        for (std::size_t j = 0; j < mean.size(); ++j)
        {
            const double delta = other.mean[j] - mean[j];
            mean[j] += delta * nb / n;
            m2[j] += other.m2[j] + delta * delta * na * nb / n;
        }
        count += other.count;
    }

    double standard_error(std::size_t j) const
    {
        if (count < 2)
            return 0.0;
        const double var = m2[j] / static_cast<double>(count - 1);
        return std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
    }
};

template <class Draw>
SampleStats monte_carlo_chunk(std::size_t samples, std::size_t components, std::uint64_t seed, std::size_t chunk,
                              Draw &draw)
{
    SampleStats stats(components);
    RandomStream stream(seed, chunk);
    std::vector<double> x(components);
    const std::size_t begin = chunk * kMonteCarloChunk;
    const std::size_t end = std::min(samples, begin + kMonteCarloChunk);
    for (std::size_t k = begin; k < end; ++k)
    {
        draw(stream, std::span<double>(x));
        stats.add(x);
    }
    return stats;
}

inline std::size_t chunk_count(std::size_t samples)
{
    return (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
}

template <class Draw>
SampleStats monte_carlo_serial(std::size_t samples, std::size_t components, std::uint64_t seed, Draw draw)
{
    SampleStats total(components);
    for (std::size_t c = 0; c < chunk_count(samples); ++c)
        total.merge(monte_carlo_chunk(samples, components, seed, c, draw));
    return total;
}

template <class Draw>
SampleStats monte_carlo_omp(std::size_t samples, std::size_t components, std::uint64_t seed, Draw draw, int workers)
{
    const std::size_t chunks = chunk_count(samples);
    std::vector<SampleStats> partial(chunks, SampleStats(components));
    const auto nchunks = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static) num_threads(workers) firstprivate(draw)
    for (std::int64_t c = 0; c < nchunks; ++c)
        partial[static_cast<std::size_t>(c)] =
            monte_carlo_chunk(samples, components, seed, static_cast<std::size_t>(c), draw);
    SampleStats total(components);
    for (const auto &p : partial)
        total.merge(p);
    return total;
}

template <class Draw>
SampleStats monte_carlo(std::size_t samples, std::size_t components, std::uint64_t seed, Draw draw, Execution exec)
{
    if (exec.parallel())
        return monte_carlo_omp(samples, components, seed, draw, exec.workers);
    return monte_carlo_serial(samples, components, seed, draw);
}

// ---- Independent tasks ------------------------------------------------------

template <class Task>
void for_each_index_serial(std::size_t n, Task task)
{
    for (std::size_t i = 0; i < n; ++i)
        task(i);
}

template <class Task>
void for_each_index_omp(std::size_t n, Task task, int workers)
{
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t i = 0; i < count; ++i)
        task(static_cast<std::size_t>(i));
}

template <class Task>
void for_each_index(std::size_t n, Task task, Execution exec)
{
    if (exec.parallel())
        for_each_index_omp(n, task, exec.workers);
    else
        for_each_index_serial(n, task);
}

} // namespace isac::kernels
