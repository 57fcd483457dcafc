// SPDX-License-Identifier: Apache-2.0

#include "isac/priors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace isac
{
namespace
{

void check_bessel_args(int order, double x)
{
    if (order < 0)
        throw std::invalid_argument("bessel_i: order must be non-negative");
    if (!(x >= 0.0))
        throw std::invalid_argument("bessel_i: x must be non-negative, got " + std::to_string(x));
}

// sum_k (x/2)^(2k+n) / (k! (k+n)!)
double bessel_series(int order, double x)
{
    const double half = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= order; ++k)
        term *= half / k;
    if (term == 0.0)
        return 0.0;
    const double q = half * half;
    double sum = term;
    for (int k = 1; k < 1000; ++k)
    {
        term *= q / (static_cast<double>(k) * (k + order));
        sum += term;
        if (term < sum * 1e-18)
            break;
    }
    return sum;
}

// exp(-x) I_n(x) ~ 1/sqrt(2 pi x) * sum_k (-1)^k a_k(n) / x^k
double bessel_asymptotic_scaled(int order, double x)
{
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k)
    {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * x);
        if (std::abs(term) >= previous)
            break;
        sum += term;
        previous = std::abs(term);
        if (previous < std::abs(sum) * 1e-18)
            break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

} // namespace

double bessel_crossover(int order)
{
    return std::max(30.0, 4.0 * order * order);
}

double bessel_i(int order, double x)
{
    check_bessel_args(order, x);
    if (x <= bessel_crossover(order))
        return bessel_series(order, x);
    return std::exp(x) * bessel_asymptotic_scaled(order, x);
}

double bessel_i_scaled(int order, double x)
{
    check_bessel_args(order, x);
    if (x <= bessel_crossover(order))
        return std::exp(-x) * bessel_series(order, x);
    return bessel_asymptotic_scaled(order, x);
}

void VonMisesPrior::validate() const
{
    if (!std::isfinite(mean_direction))
        throw std::invalid_argument("VonMisesPrior: mean_direction must be finite");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("VonMisesPrior: kappa must be finite and >= 0");
}

double VonMisesPrior::density(double theta) const
{
    // exp(kappa cos(d)) / (2 pi I0(kappa)) written with the scaled Bessel function.
    return std::exp(kappa * (std::cos(theta - mean_direction) - 1.0)) / (2.0 * M_PI * bessel_i_scaled(0, kappa));
}

double prior_fim(const VonMisesPrior &prior)
{
    prior.validate();
    if (prior.kappa == 0.0)
        return 0.0;
    return prior.kappa * bessel_i_scaled(1, prior.kappa) / bessel_i_scaled(0, prior.kappa);
}

double kappa_to_std(double kappa)
{
    if (!(kappa > 0.0))
        throw std::invalid_argument("kappa_to_std: kappa must be positive");
    return 1.0 / std::sqrt(kappa);
}

double std_to_kappa(double std_rad)
{
    if (!(std_rad > 0.0))
        throw std::invalid_argument("std_to_kappa: standard deviation must be positive");
    return 1.0 / (std_rad * std_rad);
}

void GainPrior::validate() const
{
    if (!(second_moment > 0.0) || !std::isfinite(second_moment))
        throw std::invalid_argument("GainPrior: second_moment must be positive");
}

// Best & Fisher (1979) rejection sampler on the wrapped Cauchy envelope.
double sample_von_mises(const VonMisesPrior &prior, RandomStream &stream)
{
    const double kappa = prior.kappa;
    if (kappa < 1e-8)
        return prior.mean_direction + M_PI * (2.0 * stream.uniform() - 1.0);
    if (kappa > 1e6)
    {
        // Wrapped-normal limit; the envelope constant below loses precision here.
        double offset = stream.normal() / std::sqrt(kappa);
        offset = std::remainder(offset, 2.0 * M_PI);
        return prior.mean_direction + offset;
    }

    double s;
    if (kappa < 1e-5)
    {
        s = 1.0 / kappa + kappa;
    }
    else
    {
        const double r = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double rho = (r - std::sqrt(2.0 * r)) / (2.0 * kappa);
        s = (1.0 + rho * rho) / (2.0 * rho);
    }

    double w;
    while (true)
    {
        const double z = std::cos(M_PI * stream.uniform());
        w = (1.0 + s * z) / (s + z);
        const double y = kappa * (s - w);
        const double v = stream.uniform();
        if (y * (2.0 - y) - v >= 0.0 || std::log(y / v) + 1.0 - y >= 0.0)
            break;
    }
    double offset = std::acos(std::clamp(w, -1.0, 1.0));
    if (stream.uniform() < 0.5)
        offset = -offset;
    return prior.mean_direction + offset;
}

std::vector<double> sample_angles(const VonMisesPrior &prior, std::size_t count, RandomStream &stream)
{
    prior.validate();
    if (count == 0)
        throw std::invalid_argument("sample_angles: count must be >= 1");
    std::vector<double> out(count);
    for (auto &theta : out)
        theta = sample_von_mises(prior, stream);
    return out;
}

std::complex<double> sample_gain(const GainPrior &prior, RandomStream &stream)
{
    return std::sqrt(prior.second_moment) * stream.complex_normal();
}

} // namespace isac
