// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/linalg.hpp"

namespace isac
{

// Uniform linear array. Spacing is in wavelengths.
struct UlaSpec
{
    int num_elements = 1;
    double spacing = 0.5;

    void validate() const;
};

// Steering vector and its derivative with respect to the angle.
struct SteeringPair
{
    cvec a;
    cvec a_dot;
};

// Element m has phase 2*pi*spacing*(m - (M-1)/2)*cos(theta). The centered
// reference makes <a, a_dot> vanish for every theta.
SteeringPair steering(const UlaSpec &spec, double theta);

// Steering vector only.
cvec steering_vector(const UlaSpec &spec, double theta);

// ||a_dot(theta)||^2 = (2*pi*spacing*sin(theta))^2 * M(M^2-1)/12.
double steering_derivative_norm_sq(const UlaSpec &spec, double theta);

} // namespace isac
