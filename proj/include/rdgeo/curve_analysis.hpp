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

#include <optional>
#include <string>
#include <vector>

#include "rdgeo/codebook_search.hpp"

namespace rdgeo {

struct RdCurvePoint {
    double slope = 0.0;
    double rate_nats = 0.0;
    double distortion = 0.0;
    std::size_t codebook_size = 0;
    std::optional<RdSolution> solution; // absent when the solve failed
    std::string error;                  // non-empty when the solve failed
};

/// One independent search per slope (fresh restarts, per-slope seeds derived
/// from the config seed). Failures are recorded per point, not thrown.
std::vector<RdCurvePoint> sweep(const SourceDistribution& source, const BearingModel& model,
                                const std::vector<double>& slopes, const SearchConfig& config);

/// Convexity envelopes around the achieved (D, R) set: tangents from below,
/// chords from above.
struct CurveBounds {
    struct Tangent {
        double slope;
        double rate;
        double distortion;
    };
    std::vector<Tangent> tangents;                    // lower = max of tangent lines
    std::vector<std::pair<double, double>> chords;    // (D, R) sorted by D
    double d_min = 0.0;
    double d_max = 0.0;

    double lower_at(double d) const;
    double upper_at(double d) const; // valid on [d_min, d_max]
    /// Vertices of the lower-envelope polyline on [d_min, d_max].
    std::vector<std::pair<double, double>> lower_polyline() const;
};

CurveBounds bounds(const std::vector<RdCurvePoint>& points);

/// Compression-based model comparison. Intervals are in rate (nats); within
/// them one model's chord upper bound lies strictly below the other's tangent
/// lower bound when both are mapped to distortion-at-rate.
struct ModelComparison {
    struct Interval {
        double rate_lo;
        double rate_hi;
    };
    std::vector<Interval> a_better;
    std::vector<Interval> b_better;
    std::string verdict; // "A", "B", or "inconclusive"
};

ModelComparison compare_models(const SourceDistribution& source, const BearingModel& model_a,
                               const BearingModel& model_b, const std::vector<double>& slopes,
                               const SearchConfig& config);

struct BifurcationReport {
    struct Entry {
        double slope;
        std::size_t codebook_size;
        double min_separation_deg; // infinity for a single point
        double min_weight;
        bool flagged;
    };
    std::vector<Entry> entries;
    std::vector<double> flagged_slopes;
};

/// Flags slopes where the codebook grows only by sprouting a low-weight point
/// right next to an existing one: compression of noise, not signal.
BifurcationReport bifurcation_scan(const SourceDistribution& source, const BearingModel& model,
                                   const std::vector<double>& slopes, const SearchConfig& config,
                                   double geo_delta_deg = 1.0, double weight_cap = 0.01);

BifurcationReport bifurcation_scan(const std::vector<RdCurvePoint>& points,
                                   double geo_delta_deg = 1.0, double weight_cap = 0.01);

} // namespace rdgeo
