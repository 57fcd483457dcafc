// SPDX-License-Identifier: Apache-2.0

#include "isac/transmit_strategy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isac
{

Eigen::Index TransmitStrategy::dimension() const
{
    return slots.empty() ? 0 : slots.front().det_direction.size();
}

double TransmitStrategy::average_power() const
{
    if (slots.empty())
        return 0.0;
    double total = 0.0;
    for (const auto &slot : slots)
        total += slot.det_power + slot.gauss_power;
    return total / static_cast<double>(slots.size());
}

bool TransmitStrategy::has_gaussian_power() const
{
    for (const auto &slot : slots)
        if (slot.gauss_power > 0.0)
            return true;
    return false;
}

void TransmitStrategy::validate(double p_max) const
{
    if (slots.empty())
        throw std::invalid_argument("TransmitStrategy: no slots");
    const Eigen::Index m = dimension();
    for (std::size_t t = 0; t < slots.size(); ++t)
    {
        const auto &slot = slots[t];
        const std::string where = "TransmitStrategy slot " + std::to_string(t) + ": ";
        if (slot.det_direction.size() != m || slot.gauss_direction.size() != m)
            throw std::invalid_argument(where + "direction length mismatch");
        if (!(slot.det_power >= 0.0) || !(slot.gauss_power >= 0.0))
            throw std::invalid_argument(where + "negative slot power");
        if (std::abs(slot.det_direction.norm() - 1.0) > 1e-10 || std::abs(slot.gauss_direction.norm() - 1.0) > 1e-10)
            throw std::invalid_argument(where + "directions must be unit-norm");
    }
    if (average_power() > p_max * (1.0 + 1e-9))
        throw std::invalid_argument("TransmitStrategy: average power exceeds p_max");
}

cmat TransmitStrategy::mean_covariance() const
{
    const Eigen::Index m = dimension();
    cmat k = cmat::Zero(m, m);
    for (const auto &slot : slots)
    {
        k += slot.det_power * slot.det_direction * slot.det_direction.adjoint();
        k += slot.gauss_power * slot.gauss_direction * slot.gauss_direction.adjoint();
    }
    return k / static_cast<double>(slots.size());
}

cmat TransmitStrategy::gaussian_covariance() const
{
    const Eigen::Index m = dimension();
    cmat k = cmat::Zero(m, m);
    for (const auto &slot : slots)
        k += slot.gauss_power * slot.gauss_direction * slot.gauss_direction.adjoint();
    return k / static_cast<double>(slots.size());
}

TransmitStrategy deterministic_beam(const cvec &direction, double power, int coherence_time)
{
    TransmitStrategy s;
    const cvec unit = direction.normalized();
    for (int t = 0; t < coherence_time; ++t)
        s.slots.push_back({unit, power, unit, 0.0});
    return s;
}

TransmitStrategy gaussian_beam(const cvec &direction, double power, int coherence_time)
{
    TransmitStrategy s;
    const cvec unit = direction.normalized();
    for (int t = 0; t < coherence_time; ++t)
        s.slots.push_back({unit, 0.0, unit, power});
    return s;
}

} // namespace isac
