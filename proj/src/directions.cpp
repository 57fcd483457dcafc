// SPDX-License-Identifier: Apache-2.0

#include "isac/directions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isac
{

const cvec &DirectionCatalog::at(const std::string &label) const
{
    const auto it = entries.find(label);
    if (it == entries.end())
        throw std::out_of_range("DirectionCatalog: no entry \"" + label + "\"");
    return it->second;
}

void DirectionCatalog::check_invariants() const
{
    for (const auto &[label, v] : entries)
        if (std::abs(v.norm() - 1.0) > 1e-10)
            throw std::logic_error("DirectionCatalog: entry " + label + " is not unit-norm");
    for (std::size_t i = 1;; ++i)
    {
        const std::string first = target_direction_label(1, i);
        const std::string second = target_direction_label(2, i);
        if (!contains(first))
            break;
        if (contains(second) && std::abs(at(first).dot(at(second))) > 1e-8)
            throw std::logic_error("DirectionCatalog: " + first + " and " + second + " are not orthogonal");
    }
}

std::string target_direction_label(int eigen_index, std::size_t target)
{
    return "v" + std::to_string(eigen_index) + "_t" + std::to_string(target);
}

DirectionCatalog build_catalog(std::span<const SenseMatrix> matrices, const CovarianceIterate &bcrb_optimum,
                               const CovarianceIterate &rate_optimum)
{
    if (matrices.empty())
        throw std::invalid_argument("build_catalog: no sense matrices");
    if (bcrb_optimum.eigen.empty() || rate_optimum.eigen.empty())
        throw std::logic_error("build_catalog: solver iterate is missing eigen-data");
    if (!bcrb_optimum.converged || !rate_optimum.converged)
        throw std::logic_error("build_catalog: solver iterate did not converge");

    const Eigen::Index m = matrices.front().dimension();
    const Eigen::Index keep = std::min<Eigen::Index>(m, static_cast<Eigen::Index>(matrices.size()));

    DirectionCatalog catalog;
    for (std::size_t i = 0; i < matrices.size(); ++i)
    {
        if (matrices[i].eigen.empty())
            throw std::logic_error("build_catalog: SenseMatrix is missing eigen-data");
        for (Eigen::Index j = 0; j < keep; ++j)
            catalog.entries[target_direction_label(static_cast<int>(j + 1), i + 1)] =
                matrices[i].eigen.vectors.col(j);
    }
    for (Eigen::Index j = 0; j < keep; ++j)
        catalog.entries["rs" + std::to_string(j + 1)] = bcrb_optimum.eigen.vectors.col(j);
    catalog.entries["rc1"] = rate_optimum.eigen.vectors.col(0);

    for (auto &[label, v] : catalog.entries)
    {
        v.normalize();
        phase_normalize(v);
    }
    return catalog;
}

} // namespace isac
