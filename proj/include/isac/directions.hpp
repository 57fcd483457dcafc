// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/optimize.hpp"
#include "isac/sensing_fim.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace isac
{

// Candidate beam directions, keyed by label:
//   v{j}_t{i}  j-th eigenvector of Mbar_i (targets numbered from 1)
//   rs{j}      j-th eigenvector of the joint-BCRB-optimal covariance
//   rc1        principal eigenvector of the rate-optimal covariance
// Every entry is unit-norm and phase-normalized.
struct DirectionCatalog
{
    std::map<std::string, cvec> entries;

    const cvec &at(const std::string &label) const;
    bool contains(const std::string &label) const { return entries.count(label) > 0; }
    Eigen::Index dimension() const { return entries.empty() ? 0 : entries.begin()->second.size(); }

    void check_invariants() const;
};

std::string target_direction_label(int eigen_index, std::size_t target);

// Keeps the first min(M_TX, N_s) eigenvectors of each Mbar_i and of the
// BCRB-optimal covariance. Throws std::logic_error on missing eigen-data or
// a non-converged solver iterate.
DirectionCatalog build_catalog(std::span<const SenseMatrix> matrices, const CovarianceIterate &bcrb_optimum,
                               const CovarianceIterate &rate_optimum);

} // namespace isac
