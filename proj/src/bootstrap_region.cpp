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

#include "rdgeo/bootstrap_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace rdgeo {

std::vector<std::uint32_t> resample_weights(std::size_t n, Rng& rng) {
    if (n < 1) fail(errc::invalid_argument, "resample size must be >= 1");
    std::vector<std::uint32_t> mult(n, 0);
    for (std::size_t i = 0; i < n; ++i) ++mult[rng.uniform_index(n)];
    return mult;
}

namespace {

// Free reconstruction point refined against frozen anchors; empty optional on
// failure (pruned away or not converged).
std::optional<GeoPoint> frozen_replicate(const std::vector<Site>& sites,
                                         const std::vector<double>& weights,
                                         const BearingModel& model, const SearchConfig& cfg,
                                         const std::vector<GeoPoint>& frozen,
                                         const GeoPoint& free_start) {
    Codebook cb;
    for (const auto& p : frozen) cb.push(p, true);
    cb.push(free_start, false);
    auto source = weighted_distribution(sites, weights);
    try {
        const RdSolution sol = refine(source, model, cfg, cb);
        for (std::size_t y = 0; y < sol.codebook.size(); ++y)
            if (!sol.codebook.frozen[y]) return sol.codebook.points[y];
        return std::nullopt;
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace

BootstrapCloud bootstrap_cloud(const std::vector<Site>& sites, const BearingModel& model,
                               const BootstrapConfig& config) {
    if (sites.size() < 2) fail(errc::empty_dataset, "bootstrap needs at least two sites");
    if (config.n_resamples < 1) fail(errc::invalid_argument, "n_resamples must be >= 1");
    const std::size_t n = sites.size();

    // Full-data optimum: replicate objectives are small perturbations of it,
    // so every replicate starts there.
    const std::vector<double> uniform(n, 1.0);
    GeoPoint start;
    if (config.frozen_points.empty()) {
        start = optimal_point(sites, uniform, model, suggest_start(sites, uniform, model)).point;
    } else {
        const auto full =
            frozen_replicate(sites, uniform, model, config.search, config.frozen_points,
                             optimal_point(sites, uniform, model, suggest_start(sites, uniform, model)).point);
        if (!full) fail(errc::did_not_converge, "full-data frozen-anchor refinement failed");
        start = *full;
    }

    BootstrapCloud cloud;
    cloud.n_resamples = config.n_resamples;
    cloud.seed = config.seed;
    cloud.replicates.reserve(config.n_resamples);

    for (std::size_t r = 0; r < config.n_resamples; ++r) {
        Rng rng(mix_seed(config.seed, r));
        const auto mult = resample_weights(n, rng);
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(mult[i]);

        if (config.frozen_points.empty()) {
            const auto res = optimal_point(sites, w, model, start);
            if (res.converged) {
                cloud.replicates.push_back(res.point);
            } else {
                ++cloud.n_failures;
            }
        } else {
            const auto p = frozen_replicate(sites, w, model, config.search, config.frozen_points, start);
            if (p) {
                cloud.replicates.push_back(*p);
            } else {
                ++cloud.n_failures;
            }
        }
    }

    if (static_cast<double>(cloud.n_failures) >
        config.max_failure_fraction * static_cast<double>(config.n_resamples))
        fail(errc::too_many_failures,
             std::to_string(cloud.n_failures) + " of " + std::to_string(config.n_resamples) +
                 " bootstrap replicates failed");
    return cloud;
}

double chi_square2_quantile(double level) {
    if (!(level > 0.0 && level < 1.0)) fail(errc::domain, "level must lie in (0, 1)");
    return -2.0 * std::log1p(-level);
}

ConfidenceEllipse fit_ellipse(const BootstrapCloud& cloud, double level) {
    const std::size_t n = cloud.replicates.size();
    if (n < 3) fail(errc::insufficient_points, "ellipse fit needs at least three replicates");

    ConfidenceEllipse e;
    e.level = level;
    e.quantile = chi_square2_quantile(level);

    double mlat = 0.0, mlon = 0.0;
    for (const auto& p : cloud.replicates) {
        mlat += p.lat;
        mlon += p.lon;
    }
    mlat /= static_cast<double>(n);
    mlon /= static_cast<double>(n);
    e.center_lat = mlat;
    e.center_lon = mlon;

    double saa = 0.0, sab = 0.0, sbb = 0.0;
    for (const auto& p : cloud.replicates) {
        const double da = p.lat - mlat;
        const double db = p.lon - mlon;
        saa += da * da;
        sab += da * db;
        sbb += db * db;
    }
    const double denom = static_cast<double>(n - 1);
    const double a = saa / denom, b = sab / denom, c = sbb / denom;
    e.covariance = {a, b, b, c};

    // closed-form symmetric 2x2 eigendecomposition
    const double mean = 0.5 * (a + c);
    const double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    const double l1 = mean + disc;
    const double l2 = std::max(mean - disc, 0.0);
    e.degenerate = l2 < 1e-12;

    double v1_lat, v1_lon;
    if (std::fabs(b) > 1e-300) {
        v1_lat = l1 - c;
        v1_lon = b;
    } else if (a >= c) {
        v1_lat = 1.0;
        v1_lon = 0.0;
    } else {
        v1_lat = 0.0;
        v1_lon = 1.0;
    }
    const double v1n = std::hypot(v1_lat, v1_lon);
    v1_lat /= v1n;
    v1_lon /= v1n;
    const double v2_lat = -v1_lon;
    const double v2_lon = v1_lat;

    const double rq = std::sqrt(e.quantile);
    e.semi_major_deg = rq * std::sqrt(l1);
    e.semi_minor_deg = rq * std::sqrt(l2);
    e.orientation_deg = wrap_deg_360(std::atan2(v1_lon, v1_lat) * 180.0 / M_PI);
    if (e.orientation_deg >= 180.0) e.orientation_deg -= 180.0; // axis, not direction

    const int n_vertices = 128;
    e.boundary.reserve(n_vertices + 1);
    for (int i = 0; i <= n_vertices; ++i) { // closed ring
        const double theta = 2.0 * M_PI * static_cast<double>(i) / n_vertices;
        const double u = std::cos(theta) * std::sqrt(l1);
        const double w = std::sin(theta) * std::sqrt(l2);
        GeoPoint p;
        p.lat = mlat + rq * (u * v1_lat + w * v2_lat);
        p.lon = mlon + rq * (u * v1_lon + w * v2_lon);
        e.boundary.push_back(p);
    }
    return e;
}

double ellipse_mahalanobis2(const ConfidenceEllipse& e, double lat, double lon) {
    const double a = e.covariance[0], b = e.covariance[1], c = e.covariance[3];
    const double det = a * c - b * b;
    if (det <= 0.0) return std::numeric_limits<double>::infinity();
    const double da = lat - e.center_lat;
    const double db = lon - e.center_lon;
    return (c * da * da - 2.0 * b * da * db + a * db * db) / det;
}

} // namespace rdgeo
