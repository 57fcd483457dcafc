// SPDX-License-Identifier: Apache-2.0

#include "isac/array.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isac
{

void UlaSpec::validate() const
{
    if (num_elements < 1)
        throw std::invalid_argument("UlaSpec: num_elements must be >= 1, got " + std::to_string(num_elements));
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw std::invalid_argument("UlaSpec: spacing must be positive and finite");
}

SteeringPair steering(const UlaSpec &spec, double theta)
{
    if (!std::isfinite(theta))
        throw std::invalid_argument("steering: theta must be finite");
    spec.validate();

    const int m_count = spec.num_elements;
    const double k = 2.0 * M_PI * spec.spacing;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double center = 0.5 * (m_count - 1);

    SteeringPair out{cvec(m_count), cvec(m_count)};
    for (int m = 0; m < m_count; ++m)
    {
        const double offset = m - center;
        const cplx value = std::polar(1.0, k * offset * c);
        out.a(m) = value;
        // d/dtheta exp(j k m' cos(theta)) = -j k m' sin(theta) exp(...)
        out.a_dot(m) = value * cplx(0.0, -k * offset * s);
    }
    return out;
}

cvec steering_vector(const UlaSpec &spec, double theta)
{
    return steering(spec, theta).a;
}

double steering_derivative_norm_sq(const UlaSpec &spec, double theta)
{
    const double m = spec.num_elements;
    const double ks = 2.0 * M_PI * spec.spacing * std::sin(theta);
    return ks * ks * m * (m * m - 1.0) / 12.0;
}

} // namespace isac
