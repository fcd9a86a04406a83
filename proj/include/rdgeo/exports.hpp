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

#include <string>
#include <vector>

#include "rdgeo/bootstrap_region.hpp"
#include "rdgeo/curve_analysis.hpp"
#include "rdgeo/diagnostics.hpp"

namespace rdgeo {

// solution.json: codebook with per-point lat/lon/weight/distortion, rate,
// mean distortion, sigma.
void write_solution_json(const std::string& path, const SourceDistribution& source,
                         const RdSolution& solution);

// points.geojson: reconstruction points as a FeatureCollection (lon, lat order).
void write_points_geojson(const std::string& path, const RdSolution& solution);

// classification.csv / aligned text table
void write_classification_csv(const std::string& path, const ClassificationTable& table);
void write_classification_text(const std::string& path, const ClassificationTable& table);

void write_outliers_json(const std::string& path, const OutlierReport& report);

// curve.csv: slope,rate_nats,distortion,codebook_size
void write_curve_csv(const std::string& path, const std::vector<RdCurvePoint>& points);

// bounds.json: polyline vertices for the tangent lower and chord upper bound
void write_bounds_json(const std::string& path, const CurveBounds& bounds);

void write_bifurcations_json(const std::string& path, const BifurcationReport& report);

void write_comparison_json(const std::string& path, const ModelComparison& comparison,
                           const std::string& name_a, const std::string& name_b);

// cloud.csv: replicate,lat,lon
void write_cloud_csv(const std::string& path, const BootstrapCloud& cloud);

// ellipse.geojson: boundary Polygon plus center Point
void write_ellipse_geojson(const std::string& path, const ConfidenceEllipse& ellipse);

void write_bootstrap_summary_json(const std::string& path, const BootstrapCloud& cloud,
                                  const ConfidenceEllipse& ellipse);

} // namespace rdgeo
