// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace isac
{

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitNonConvergence = 1;
inline constexpr int kExitConfigError = 2;

inline constexpr const char *kToolVersion = "1.0.0";

// Stream indices under the base seed.
inline constexpr std::uint64_t kRateSamplesStream = 0;
inline constexpr std::uint64_t kAllocationStream = 1;
inline constexpr std::uint64_t kSweepStream = 2;

struct RunOptions
{
    std::filesystem::path config;
    std::filesystem::path out_dir = "out";
    std::optional<std::uint64_t> seed;
    int workers = 1;
    double mc_scale = 1.0;
    std::optional<std::vector<std::string>> choices;
    std::optional<std::string> scheme;
    std::ostream *log = nullptr; // progress and diagnostics; nullptr for silence
};

// Each command returns one of the exit codes above.

// Sensing and comm matrix caches under <out>/matrices, reused when their
// inputs hash matches.
int cmd_matrices(const RunOptions &options);

// Matrices, both covariance optimizations, the direction catalog, bounds and
// one region sweep per choice.
int cmd_region(const RunOptions &options);

// Pre/post-acquisition concentration update; writes the updated config and a
// report.
int cmd_acquire(const RunOptions &options);

} // namespace isac
