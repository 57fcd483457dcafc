// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/rng.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace isac
{

// Crossover between the power series and the large-argument expansion of I_n.
// Below it the series (all positive terms) is summed directly; above it the
// asymptotic expansion is truncated at its smallest term.
double bessel_crossover(int order);

// Modified Bessel function of the first kind, I_order(x), x >= 0.
double bessel_i(int order, double x);

// exp(-x) * I_order(x). Finite for every x >= 0.
double bessel_i_scaled(int order, double x);

// Von Mises angle prior. kappa == 0 is the uniform distribution on the circle.
struct VonMisesPrior
{
    double mean_direction = 0.0; // rad
    double kappa = 0.0;

    void validate() const;

    // Density at theta (normalized over one period).
    double density(double theta) const;
};

// Prior Fisher information kappa^2/2 * (1 - I_2(kappa)/I_0(kappa)). Evaluated
// through the identity I_0 - I_2 = (2/kappa) I_1, i.e. kappa * I_1/I_0, which
// stays accurate when I_2/I_0 -> 1.
double prior_fim(const VonMisesPrior &prior);

// sigma ~ 1/sqrt(kappa) in radians, and the inverse.
double kappa_to_std(double kappa);
double std_to_kappa(double std_rad);

// Zero-mean circularly symmetric complex gain; only E|g|^2 is modeled.
struct GainPrior
{
    double second_moment = 1.0;

    void validate() const;
};

// One Von Mises draw, returned as mean_direction + offset with offset in [-pi, pi].
double sample_von_mises(const VonMisesPrior &prior, RandomStream &stream);

std::vector<double> sample_angles(const VonMisesPrior &prior, std::size_t count, RandomStream &stream);

std::complex<double> sample_gain(const GainPrior &prior, RandomStream &stream);

} // namespace isac
