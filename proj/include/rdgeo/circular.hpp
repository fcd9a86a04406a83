/*
 Copyright 2026 the rdgeo authors
 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <cmath>

#include "rdgeo/error.hpp"
#include "rdgeo/geodesy.hpp"

namespace rdgeo {

/// versin(o - b) = 1 - cos(o - b), the dispersion of an orientation against a
/// reference bearing. Symmetric, 360-periodic, in [0, 2].
inline double versin_distortion(double orientation_deg, double bearing_deg) {
    return 1.0 - std::cos((orientation_deg - bearing_deg) * M_PI / 180.0);
}

/// Circular standard deviation in degrees for a circular variance V in [0, 1):
/// sigma = (360/2pi) * sqrt(-2 ln(1 - V)).
inline double variance_to_sigma(double variance) {
    if (!(variance >= 0.0 && variance < 1.0))
        fail(errc::domain, "circular variance must lie in [0, 1)");
    return (180.0 / M_PI) * std::sqrt(-2.0 * std::log1p(-variance));
}

/// Exact inverse of variance_to_sigma.
inline double sigma_to_variance(double sigma_deg) {
    if (!(sigma_deg >= 0.0))
        fail(errc::domain, "circular standard deviation must be nonnegative");
    const double r = sigma_deg * M_PI / 180.0;
    return -std::expm1(-0.5 * r * r);
}

} // namespace rdgeo
