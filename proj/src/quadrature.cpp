// SPDX-License-Identifier: Apache-2.0

#include "isac/quadrature.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace isac
{

QuadratureRule gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadratureRule rule;
    if (n == 1)
    {
        rule.nodes = {0.0};
        rule.weights = {2.0};
        return rule;
    }
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i)
    {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

double angle_rule_half_width(double kappa)
{
    if (kappa <= 0.5 * kAngleRuleLogCutoff)
        return M_PI;
    return std::acos(1.0 - kAngleRuleLogCutoff / kappa);
}

QuadratureRule angle_rule(const VonMisesPrior &prior, int budget)
{
    prior.validate();
    if (budget < 1)
        throw std::invalid_argument("angle_rule: budget must be >= 1");

    QuadratureRule rule;
    const double width = angle_rule_half_width(prior.kappa);
    if (width >= M_PI)
    {
        const double h = 2.0 * M_PI / budget;
        for (int k = 0; k < budget; ++k)
        {
            const double theta = prior.mean_direction - M_PI + k * h;
            rule.nodes.push_back(theta);
            rule.weights.push_back(h * prior.density(theta));
        }
    }
    else
    {
        const QuadratureRule base = gauss_legendre(budget);
        for (std::size_t k = 0; k < base.size(); ++k)
        {
            const double theta = prior.mean_direction + width * base.nodes[k];
            rule.nodes.push_back(theta);
            rule.weights.push_back(width * base.weights[k] * prior.density(theta));
        }
    }

    const double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    for (auto &w : rule.weights)
        w /= total;
    return rule;
}

} // namespace isac
