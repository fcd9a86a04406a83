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

#include "rdgeo/rd_engine.hpp"

namespace rdgeo {

struct SearchConfig {
    double slope = 0.0;
    int n_init = 64;              // Dirichlet restarts for the initial codebook
    double dirichlet_alpha = 1.0;
    double outer_tol = 1e-6;      // nats, stopping rule on the rate
    double prune_weight = 1e-4;   // points below this marginal are dropped
    double merge_distance = 0.05; // total-variation threshold on p(x|y) pairs
    int max_outer_iters = 200;
    std::uint64_t seed = 0;
};

struct OptimalPointResult {
    GeoPoint point;
    double objective = 0.0;
    bool converged = true;
};

/// A reasonable simplex start for the weighted objective: candidates are
/// projected forward from the heaviest site plus the weighted centroid.
GeoPoint suggest_start(const std::vector<Site>& sites, const std::vector<double>& weights,
                       const BearingModel& model);

/// Local minimizer of f(y) = sum_x w_x versin(o_x - b(x -> y)) by downhill
/// simplex over (lat, lon), started at `start`. Never returns a point worse
/// than the start.
OptimalPointResult optimal_point(const std::vector<Site>& sites, const std::vector<double>& weights,
                                 const BearingModel& model, const GeoPoint& start);

struct PerPointStats {
    double weight = 0.0;     // q(y)
    double distortion = 0.0; // conditional mean distortion given y
};

struct RdSolution {
    Codebook codebook;
    Coupling coupling;
    std::vector<PerPointStats> per_point;
    bool converged = true;
    int outer_iters = 0;
};

/// The adaptive search: random Dirichlet restarts propose points, then
/// alternate BA / prune / merge / re-optimize until the rate stalls.
RdSolution search(const SourceDistribution& source, const BearingModel& model,
                  const SearchConfig& config);

/// Same, but the given points are present in every codebook and never moved,
/// pruned, or merged.
RdSolution search_with_frozen(const SourceDistribution& source, const BearingModel& model,
                              const SearchConfig& config, const std::vector<GeoPoint>& frozen_points);

/// Refinement without restarts: alternate BA and per-point re-optimization on
/// an explicit starting codebook. Used for bootstrap replicates.
RdSolution refine(const SourceDistribution& source, const BearingModel& model,
                  const SearchConfig& config, const Codebook& start);

} // namespace rdgeo
