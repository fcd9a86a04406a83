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

#include <array>
#include <cstdint>
#include <vector>

#include "rdgeo/codebook_search.hpp"
#include "rdgeo/rng.hpp"

namespace rdgeo {

/// Multinomial(n, uniform) multiplicities: one resample with replacement.
std::vector<std::uint32_t> resample_weights(std::size_t n, Rng& rng);

struct BootstrapCloud {
    std::vector<GeoPoint> replicates;
    std::size_t n_resamples = 0;
    std::size_t n_failures = 0;
    std::uint64_t seed = 0;
};

struct BootstrapConfig {
    std::size_t n_resamples = 10000;
    std::uint64_t seed = 0;
    SearchConfig search;                  // slope, tolerances for the frozen-anchor case
    std::vector<GeoPoint> frozen_points;  // optional anchors held fixed per replicate
    double max_failure_fraction = 0.01;
};

/// One optimal reconstruction point per resample, each optimization started
/// from the full-data optimum. With frozen anchors the free point is refined
/// jointly against them and kept alone in the cloud.
BootstrapCloud bootstrap_cloud(const std::vector<Site>& sites, const BearingModel& model,
                               const BootstrapConfig& config);

struct ConfidenceEllipse {
    double center_lat = 0.0;
    double center_lon = 0.0;
    std::array<double, 4> covariance{}; // row-major 2x2, (lat, lon) in degrees^2
    double level = 0.95;
    double quantile = 0.0;             // chi-square(2) inverse CDF at level
    std::vector<GeoPoint> boundary;    // >= 64 vertices
    bool degenerate = false;           // covariance eigenvalue below 1e-12
    double semi_major_deg = 0.0;
    double semi_minor_deg = 0.0;
    double orientation_deg = 0.0;      // major axis, clockwise from north
};

/// chi-square(2 df) inverse CDF; closed form -2 ln(1 - p).
double chi_square2_quantile(double level);

ConfidenceEllipse fit_ellipse(const BootstrapCloud& cloud, double level = 0.95);

/// Quadratic form (v - center)^T Sigma^{-1} (v - center); inside when <= quantile.
double ellipse_mahalanobis2(const ConfidenceEllipse& e, double lat, double lon);

} // namespace rdgeo
