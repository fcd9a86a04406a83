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

#include <cstdint>
#include <vector>

#include "rdgeo/dataset.hpp"
#include "rdgeo/rng.hpp"

namespace rdgeo {

/// I1(k)/I0(k), stable for all k >= 0 (continued fraction).
double bessel_i_ratio(double kappa);

/// von Mises concentration matching a circular standard deviation in degrees:
/// solves 1 - I1(k)/I0(k) = sigma_to_variance(sigma) by bisection.
double kappa_from_sigma(double sigma_deg);

/// Zero-mean von Mises draw in degrees (Best-Fisher).
double sample_von_mises_deg(double kappa, Rng& rng);

struct SynthConfig {
    std::vector<GeoPoint> anchors;
    int sites_per_anchor = 30;
    double sigma_deg = 5.0;
    double lat_min = 0.0, lat_max = 30.0;
    double lon_min = 20.0, lon_max = 50.0;
    BearingModel model = BearingModel::rhumb();
    std::uint64_t seed = 0;
};

/// Sites uniform in the box, each oriented toward its anchor under the model
/// plus von Mises noise of the given circular standard deviation.
std::vector<Site> synth_sites(const SynthConfig& config);

} // namespace rdgeo
