// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/comm_rate.hpp"
#include "isac/scenario.hpp"
#include "isac/sensing_fim.hpp"

#include <span>
#include <string>
#include <vector>

namespace isac
{

struct SolverOptions
{
    int max_iterations = 20000;
    double relative_tolerance = 1e-10; // relative objective change per accepted step
    int stall_iterations = 5;          // consecutive small steps before stopping
    double gradient_tolerance = 1e-8;  // scaled projected-gradient norm
};

// Optimization variable on {R Hermitian, R >= 0, Tr R <= p_max}.
struct CovarianceIterate
{
    cmat matrix;
    EigenData eigen;
    double objective = 0.0;
    // ||R - P(R - t G)||_F / p_max with t = p_max / ||G||_F; zero at a
    // stationary point of the constrained problem.
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string diagnostic;
};

// Projection of the eigenvalues onto {x >= 0, sum x <= cap}.
std::vector<double> project_capped_simplex(std::vector<double> x, double cap);

// Frobenius projection onto the trace-bounded PSD cone. Throws
// std::invalid_argument when h is not Hermitian to 1e-8.
cmat project_psd_trace(const cmat &h, double p_max);

// F(R) = sum_i 1/(c_i Tr[Mbar_i R] + J_i).
class JointBcrbObjective
{
  public:
    JointBcrbObjective(std::span<const SenseMatrix> matrices, std::span<const double> coefficients,
                       std::span<const double> prior_fims);

    double value(const cmat &r) const;
    cmat gradient(const cmat &r) const; // -sum_i c_i Mbar_i / (c_i Tr[Mbar_i R] + J_i)^2
    Eigen::Index dimension() const { return matrices_.front().rows(); }

  private:
    std::vector<cmat> matrices_;
    std::vector<double> coefficients_;
    std::vector<double> priors_;
};

// Sample average of log(1 + snr_k a_k^H K a_k), in the requested base.
class SampleAverageRate
{
  public:
    SampleAverageRate(std::span<const CommSample> samples, LogBase base);

    double value(const cmat &k) const;
    cmat gradient(const cmat &k) const;
    Eigen::Index dimension() const { return steering_.rows(); }

    // log(1 + p_max lambda_max(mean_k snr_k a_k a_k^H)): Jensen bound of the
    // sample-average objective over the feasible set.
    double jensen_bound(double p_max) const;

  private:
    cmat steering_; // M x N
    rvec snr_;
    double log_scale_;
};

// Joint BCRB minimization by projected gradient descent with backtracking,
// started from (p_max/M) I. Requires every J_i > 0.
CovarianceIterate minimize_joint_bcrb(std::span<const SenseMatrix> matrices, std::span<const double> coefficients,
                                      std::span<const double> prior_fims, double p_max,
                                      const SolverOptions &options = {});

CovarianceIterate minimize_joint_bcrb(std::span<const SenseMatrix> matrices, const ScenarioConfig &scenario,
                                      const SolverOptions &options = {});

// Sample-average ergodic-rate maximization over the same feasible set.
inline constexpr int kMinRateSamples = 1000;

CovarianceIterate maximize_rate_cov(std::span<const CommSample> samples, double p_max, LogBase base = LogBase::two,
                                    const SolverOptions &options = {});

} // namespace isac
