// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/array.hpp"
#include "isac/execution.hpp"
#include "isac/scenario.hpp"
#include "isac/transmit_strategy.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace isac
{

// Angle-averaged sensing information matrix of one target,
//   Mbar = E_theta{ ||b_dot||^2 a a^H + ||b||^2 a_dot a_dot^H },
// with its descending eigendecomposition.
struct SenseMatrix
{
    cmat matrix;
    EigenData eigen;

    Eigen::Index dimension() const { return matrix.rows(); }
    double lambda_max() const { return eigen.max_value(); }

    // Hermitian to 1e-10 (relative to the largest entry), eigenvalues
    // >= -1e-10 lambda_max, orthonormal eigenvectors to 1e-10.
    void check_invariants() const;

    // Builds from a Hermitian PSD matrix: symmetrizes, clips eigenvalues below
    // 1e-12 lambda_max to zero and attaches the eigendecomposition.
    static SenseMatrix from_matrix(const cmat &m);
};

enum class ExpectationMode
{
    quadrature,
    monte_carlo
};

inline constexpr int kMinAngleBudget = 64;
inline constexpr int kMinGaussianSamples = 100;

// Mbar for one target. `budget` is the number of quadrature nodes (or Monte
// Carlo draws with ExpectationMode::monte_carlo, using `seed`).
SenseMatrix compute_mbar(const TargetModel &target, const UlaSpec &tx, const UlaSpec &rx, int budget,
                         Execution exec = {}, ExpectationMode mode = ExpectationMode::quadrature,
                         std::uint64_t seed = 0);

// One Mbar per scenario target, in target order.
std::vector<SenseMatrix> compute_all_mbar(const ScenarioConfig &scenario, Execution exec = {});

// Per-target BCRB of a purely deterministic strategy:
//   eps_i = ( (2 E|beta_i|^2 / sigma_s^2) sum_t P_s,t s_t^H Mbar_i s_t + J_i )^-1.
// Throws if any Gaussian power is non-zero or any slot power is negative.
std::vector<double> bcrb_deterministic(const TransmitStrategy &strategy, std::span<const SenseMatrix> matrices,
                                       const ScenarioConfig &scenario);

struct BcrbEstimate
{
    std::vector<double> eps;
    std::vector<double> standard_error;
    double eps_sum = 0.0;
    double eps_sum_standard_error = 0.0; // from the joint samples, not a sum of errors
    std::size_t samples = 0;             // 0 for the closed form
};

// Per-target BCRB E_X{eps_i(R_X)} for the mixed deterministic + Gaussian
// strategy, with R_X = (1/T) X X^H and X drawn with i.i.d. CN(0,1) symbols.
// Falls back to the closed form (zero standard error) when every Gaussian
// power is zero.
BcrbEstimate bcrb_mixed_mc(const TransmitStrategy &strategy, std::span<const SenseMatrix> matrices,
                           const ScenarioConfig &scenario, std::uint64_t seed, int samples, Execution exec = {});

} // namespace isac
