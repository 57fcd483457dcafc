// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/priors.hpp"

#include <vector>

namespace isac
{

struct QuadratureRule
{
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

// Density ratio exp(kappa (cos w - 1)) at which the angle rule truncates.
inline constexpr double kAngleRuleLogCutoff = 37.0;

// Probability-weighted angle nodes for E_theta{f(theta)} under a Von Mises
// prior, with weights summing to one.
//
// The integration window is theta_bar +/- w where the density has fallen by
// exp(-37) relative to its peak. When that window covers the whole circle the
// rule is the periodic trapezoid rule on `budget` equispaced nodes; otherwise
// it is a `budget`-point Gauss-Legendre rule on the window.
QuadratureRule angle_rule(const VonMisesPrior &prior, int budget);

// Half-width of the window used by angle_rule (pi means the full circle).
double angle_rule_half_width(double kappa);

} // namespace isac
