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

#include "rdgeo/rd_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rdgeo/circular.hpp"

namespace rdgeo {

DistortionMatrix build_distortion_matrix(const std::vector<Site>& sites, const Codebook& codebook,
                                         const BearingModel& model) {
    if (codebook.size() == 0) fail(errc::empty_codebook, "codebook is empty");
    DistortionMatrix m;
    m.n_sites = sites.size();
    m.n_points = codebook.size();
    m.entries.resize(m.n_sites * m.n_points);
    for (std::size_t x = 0; x < m.n_sites; ++x) {
        for (std::size_t y = 0; y < m.n_points; ++y) {
            double d;
            try {
                const double b = bearing(model, sites[x].location, codebook.points[y]);
                d = versin_distortion(sites[x].orientation_deg, b);
            } catch (const Error&) {
                d = 2.0; // undefined bearing: maximal distortion by convention
            }
            m.entries[x * m.n_points + y] = d;
        }
    }
    return m;
}

namespace {

void finish_stats(const SourceDistribution& source, const DistortionMatrix& dmat, Coupling& c) {
    const std::size_t n = c.n_sites;
    const std::size_t m = c.n_points;
    double rate = 0.0;
    double dist = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        const double px = source.probabilities[x];
        for (std::size_t y = 0; y < m; ++y) {
            const double q = c.conditional[x * m + y];
            if (q > 0.0 && c.marginal[y] > 0.0)
                rate += px * q * std::log(q / c.marginal[y]);
            dist += px * q * dmat.at(x, y);
        }
    }
    c.rate_nats = std::max(rate, 0.0);
    c.mean_distortion = dist;
    if (!std::isfinite(c.rate_nats) || !std::isfinite(c.mean_distortion))
        fail(errc::non_finite, "non-finite rate or distortion");
}

// Degenerate coupling putting all mass on one point.
Coupling point_mass(const SourceDistribution& source, const DistortionMatrix& dmat,
                    std::size_t y_star, double slope) {
    Coupling c;
    c.n_sites = dmat.n_sites;
    c.n_points = dmat.n_points;
    c.slope = slope;
    c.conditional.assign(c.n_sites * c.n_points, 0.0);
    c.marginal.assign(c.n_points, 0.0);
    c.marginal[y_star] = 1.0;
    for (std::size_t x = 0; x < c.n_sites; ++x) c.conditional[x * c.n_points + y_star] = 1.0;
    finish_stats(source, dmat, c);
    return c;
}

} // namespace

Coupling blahut_arimoto(const SourceDistribution& source, const DistortionMatrix& dmat,
                        double slope, double tol, int max_sweeps) {
    const std::size_t n = dmat.n_sites;
    const std::size_t m = dmat.n_points;
    if (n == 0) fail(errc::empty_dataset, "no sites");
    if (source.probabilities.size() != n)
        fail(errc::invalid_argument, "source size does not match distortion matrix");
    if (!(slope <= 0.0)) fail(errc::invalid_argument, "slope must be <= 0");
    if (!(tol > 0.0)) fail(errc::invalid_argument, "tol must be positive");

    // At slope 0 every marginal is a fixed point of the updates; the zero-rate
    // optimum is the single best point.
    if (slope == 0.0 || m == 1) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t y = 0; y < m; ++y) {
            double d = 0.0;
            for (std::size_t x = 0; x < n; ++x) d += source.probabilities[x] * dmat.at(x, y);
            if (d < best_d) {
                best_d = d;
                best = y;
            }
        }
        return point_mass(source, dmat, best, slope);
    }

    Coupling c;
    c.n_sites = n;
    c.n_points = m;
    c.slope = slope;
    c.conditional.assign(n * m, 0.0);
    c.marginal.assign(m, 1.0 / static_cast<double>(m));

    double prev_f = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        // q(y|x) <- q(y) exp(s d) / Z_x, shifted per row so the largest
        // exponent is 0 (s = -83 with d near 2 underflows unshifted).
        for (std::size_t x = 0; x < n; ++x) {
            double shift = -std::numeric_limits<double>::infinity();
            for (std::size_t y = 0; y < m; ++y) {
                if (c.marginal[y] > 0.0) shift = std::max(shift, slope * dmat.at(x, y));
            }
            double z = 0.0;
            for (std::size_t y = 0; y < m; ++y) {
                const double v = c.marginal[y] > 0.0
                                     ? c.marginal[y] * std::exp(slope * dmat.at(x, y) - shift)
                                     : 0.0;
                c.conditional[x * m + y] = v;
                z += v;
            }
            if (!(z > 0.0) || !std::isfinite(z)) fail(errc::non_finite, "degenerate row in BA update");
            for (std::size_t y = 0; y < m; ++y) c.conditional[x * m + y] /= z;
        }
        // q(y) <- sum_x p(x) q(y|x)
        std::fill(c.marginal.begin(), c.marginal.end(), 0.0);
        for (std::size_t x = 0; x < n; ++x) {
            const double px = source.probabilities[x];
            for (std::size_t y = 0; y < m; ++y) c.marginal[y] += px * c.conditional[x * m + y];
        }

        finish_stats(source, dmat, c);
        const double f = c.lagrangian();
        if (!std::isfinite(f)) fail(errc::non_finite, "non-finite Lagrangian");
        if (f > prev_f + 1e-9) fail(errc::non_finite, "Lagrangian increased during BA sweep");
        if (prev_f - f < tol) break;
        prev_f = f;
    }
    return c;
}

HardAssignment evaluate_fixed(const SourceDistribution& source, const DistortionMatrix& dmat) {
    const std::size_t n = dmat.n_sites;
    const std::size_t m = dmat.n_points;
    HardAssignment h;
    h.assignment.resize(n);
    h.point_weight.assign(m, 0.0);
    h.point_distortion.assign(m, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t best = 0;
        for (std::size_t y = 1; y < m; ++y) {
            if (dmat.at(x, y) < dmat.at(x, best)) best = y; // ties keep the lower index
        }
        h.assignment[x] = best;
        const double px = source.probabilities[x];
        h.point_weight[best] += px;
        h.point_distortion[best] += px * dmat.at(x, best);
        h.mean_distortion += px * dmat.at(x, best);
    }
    for (std::size_t y = 0; y < m; ++y) {
        if (h.point_weight[y] > 0.0) h.point_distortion[y] /= h.point_weight[y];
    }
    return h;
}

} // namespace rdgeo
