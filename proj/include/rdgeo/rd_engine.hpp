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

#include <vector>

#include "rdgeo/dataset.hpp"
#include "rdgeo/geodesy.hpp"

namespace rdgeo {

/// Weighted list of reconstruction points. Frozen points are never moved,
/// pruned, or merged by the search.
struct Codebook {
    std::vector<GeoPoint> points;
    std::vector<bool> frozen; // same length as points

    std::size_t size() const { return points.size(); }
    void push(GeoPoint p, bool is_frozen = false) {
        points.push_back(p);
        frozen.push_back(is_frozen);
    }
};

/// d(x, y) = versin(o_x - b(x -> y)) for every site/point pair, in [0, 2].
/// Pairs whose bearing is undefined (coincident, pole, ambiguous bisector)
/// get the maximal distortion 2.
struct DistortionMatrix {
    std::size_t n_sites = 0;
    std::size_t n_points = 0;
    std::vector<double> entries; // row-major, n_sites x n_points

    double at(std::size_t x, std::size_t y) const { return entries[x * n_points + y]; }
};

DistortionMatrix build_distortion_matrix(const std::vector<Site>& sites, const Codebook& codebook,
                                         const BearingModel& model);

/// Conditional coupling q(y|x) together with its marginal, rate, and mean
/// distortion at a given slope.
struct Coupling {
    std::vector<double> conditional; // row-major, n_sites x n_points, rows sum to 1
    std::vector<double> marginal;    // length n_points
    std::size_t n_sites = 0;
    std::size_t n_points = 0;
    double rate_nats = 0.0;
    double mean_distortion = 0.0;
    double slope = 0.0;

    double q(std::size_t x, std::size_t y) const { return conditional[x * n_points + y]; }
    double lagrangian() const { return rate_nats - slope * mean_distortion; }
};

/// Alternating-minimization solve at a fixed codebook and slope, starting
/// from a uniform marginal. Stops when the Lagrangian F = R - s*D improves by
/// less than tol between sweeps.
Coupling blahut_arimoto(const SourceDistribution& source, const DistortionMatrix& dmat,
                        double slope, double tol, int max_sweeps = 200000);

/// Zero-temperature evaluation: every site goes to its minimum-distortion
/// point (ties to the lower index). Rate contribution is ignored; this is the
/// fixed-model comparison primitive.
struct HardAssignment {
    std::vector<std::size_t> assignment;       // per site
    std::vector<double> point_weight;          // summed site probability per point
    std::vector<double> point_distortion;      // conditional mean distortion per point
    double mean_distortion = 0.0;
};

HardAssignment evaluate_fixed(const SourceDistribution& source, const DistortionMatrix& dmat);

} // namespace rdgeo
