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

#include "rdgeo/exports.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>

#include <json.hpp>

#include "rdgeo/circular.hpp"

namespace rdgeo {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

void dump_to(const std::string& path, const ordered& j) {
    std::ofstream out(path);
    if (!out) fail(errc::io, "cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) fail(errc::io, "write failed: " + path);
}

ordered point_feature(double lat, double lon, ordered properties) {
    ordered f;
    f["type"] = "Feature";
    f["geometry"]["type"] = "Point";
    f["geometry"]["coordinates"] = {lon, lat};
    f["properties"] = std::move(properties);
    return f;
}

} // namespace

void write_solution_json(const std::string& path, const SourceDistribution& source,
                         const RdSolution& solution) {
    (void)source;
    ordered j;
    j["slope"] = solution.coupling.slope;
    j["rate_nats"] = solution.coupling.rate_nats;
    j["mean_distortion"] = solution.coupling.mean_distortion;
    if (solution.coupling.mean_distortion < 1.0)
        j["sigma_deg"] = variance_to_sigma(solution.coupling.mean_distortion);
    else
        j["sigma_deg"] = nullptr; // sigma diverges at variance >= 1
    j["converged"] = solution.converged;
    j["outer_iters"] = solution.outer_iters;
    const auto labels = point_labels(solution.codebook);
    j["points"] = ordered::array();
    for (std::size_t y = 0; y < solution.codebook.size(); ++y) {
        ordered p;
        p["id"] = labels[y];
        p["lat"] = solution.codebook.points[y].lat;
        p["lon"] = solution.codebook.points[y].lon;
        p["weight"] = solution.per_point[y].weight;
        p["distortion"] = solution.per_point[y].distortion;
        p["frozen"] = static_cast<bool>(solution.codebook.frozen[y]);
        j["points"].push_back(std::move(p));
    }
    dump_to(path, j);
}

void write_points_geojson(const std::string& path, const RdSolution& solution) {
    ordered j;
    j["type"] = "FeatureCollection";
    j["features"] = ordered::array();
    const auto labels = point_labels(solution.codebook);
    for (std::size_t y = 0; y < solution.codebook.size(); ++y) {
        ordered props;
        props["id"] = labels[y];
        props["weight"] = solution.per_point[y].weight;
        props["distortion"] = solution.per_point[y].distortion;
        props["frozen"] = static_cast<bool>(solution.codebook.frozen[y]);
        j["features"].push_back(point_feature(solution.codebook.points[y].lat,
                                              solution.codebook.points[y].lon, std::move(props)));
    }
    dump_to(path, j);
}

void write_classification_csv(const std::string& path, const ClassificationTable& table) {
    std::ofstream out(path);
    if (!out) fail(errc::io, "cannot write " + path);
    out << "site";
    for (const auto& l : table.point_labels) out << ',' << l;
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < table.site_ids.size(); ++i) {
        out << table.site_ids[i];
        for (const double v : table.rows_percent[i]) {
            std::snprintf(buf, sizeof(buf), "%.4f", v);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) fail(errc::io, "write failed: " + path);
}

void write_classification_text(const std::string& path, const ClassificationTable& table) {
    std::ofstream out(path);
    if (!out) fail(errc::io, "cannot write " + path);
    std::size_t width = 4;
    for (const auto& id : table.site_ids) width = std::max(width, id.size());
    out << std::left << std::setw(static_cast<int>(width) + 2) << "Site";
    for (const auto& l : table.point_labels) out << std::right << std::setw(8) << l;
    out << '\n';
    for (std::size_t i = 0; i < table.site_ids.size(); ++i) {
        out << std::left << std::setw(static_cast<int>(width) + 2) << table.site_ids[i];
        char buf[32];
        for (const double v : table.rows_percent[i]) {
            std::snprintf(buf, sizeof(buf), "%.1f", v);
            out << std::right << std::setw(8) << buf;
        }
        out << '\n';
    }
    if (!out) fail(errc::io, "write failed: " + path);
}

void write_outliers_json(const std::string& path, const OutlierReport& report) {
    ordered j;
    j["points"] = ordered::array();
    for (const auto& p : report.points) {
        ordered e;
        e["point"] = p.point_label;
        e["weight"] = p.weight;
        e["top_sites"] = ordered::array();
        for (std::size_t i = 0; i < p.top_site_ids.size(); ++i) {
            ordered s;
            s["id"] = p.top_site_ids[i];
            s["support"] = p.top_site_mass[i];
            e["top_sites"].push_back(std::move(s));
        }
        e["top_mass"] = p.top_mass;
        e["flagged"] = p.flagged;
        j["points"].push_back(std::move(e));
    }
    j["outlier_candidates"] = report.outlier_candidates;
    dump_to(path, j);
}

void write_curve_csv(const std::string& path, const std::vector<RdCurvePoint>& points) {
    std::ofstream out(path);
    if (!out) fail(errc::io, "cannot write " + path);
    out << "slope,rate_nats,distortion,codebook_size\n";
    char buf[160];
    for (const auto& p : points) {
        if (!p.error.empty()) continue;
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%zu\n", p.slope, p.rate_nats,
                      p.distortion, p.codebook_size);
        out << buf;
    }
    if (!out) fail(errc::io, "write failed: " + path);
}

void write_bounds_json(const std::string& path, const CurveBounds& bounds) {
    ordered j;
    j["distortion_range"] = {bounds.d_min, bounds.d_max};
    j["lower"] = ordered::array();
    for (const auto& [d, r] : bounds.lower_polyline()) j["lower"].push_back({d, r});
    j["upper"] = ordered::array();
    for (const auto& [d, r] : bounds.chords) j["upper"].push_back({d, r});
    dump_to(path, j);
}

void write_bifurcations_json(const std::string& path, const BifurcationReport& report) {
    ordered j;
    j["entries"] = ordered::array();
    for (const auto& e : report.entries) {
        ordered x;
        x["slope"] = e.slope;
        x["codebook_size"] = e.codebook_size;
        x["min_separation_deg"] =
            std::isfinite(e.min_separation_deg) ? ordered(e.min_separation_deg) : ordered(nullptr);
        x["min_weight"] = e.min_weight;
        x["flagged"] = e.flagged;
        j["entries"].push_back(std::move(x));
    }
    j["flagged_slopes"] = report.flagged_slopes;
    dump_to(path, j);
}

void write_comparison_json(const std::string& path, const ModelComparison& comparison,
                           const std::string& name_a, const std::string& name_b) {
    ordered j;
    j["model_a"] = name_a;
    j["model_b"] = name_b;
    const auto intervals = [](const std::vector<ModelComparison::Interval>& v) {
        ordered arr = ordered::array();
        for (const auto& iv : v) arr.push_back({iv.rate_lo, iv.rate_hi});
        return arr;
    };
    j["a_better_rate_intervals"] = intervals(comparison.a_better);
    j["b_better_rate_intervals"] = intervals(comparison.b_better);
    j["verdict"] = comparison.verdict == "A"   ? name_a
                   : comparison.verdict == "B" ? name_b
                                               : comparison.verdict;
    dump_to(path, j);
}

void write_cloud_csv(const std::string& path, const BootstrapCloud& cloud) {
    std::ofstream out(path);
    if (!out) fail(errc::io, "cannot write " + path);
    out << "replicate,lat,lon\n";
    char buf[96];
    for (std::size_t i = 0; i < cloud.replicates.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i, cloud.replicates[i].lat,
                      cloud.replicates[i].lon);
        out << buf;
    }
    if (!out) fail(errc::io, "write failed: " + path);
}

void write_ellipse_geojson(const std::string& path, const ConfidenceEllipse& ellipse) {
    ordered j;
    j["type"] = "FeatureCollection";
    j["features"] = ordered::array();

    ordered ring = ordered::array();
    for (const auto& v : ellipse.boundary) ring.push_back({v.lon, v.lat});
    ordered poly;
    poly["type"] = "Feature";
    poly["geometry"]["type"] = "Polygon";
    poly["geometry"]["coordinates"] = ordered::array({ring});
    poly["properties"]["role"] = "confidence-boundary";
    poly["properties"]["level"] = ellipse.level;
    j["features"].push_back(std::move(poly));

    ordered props;
    props["role"] = "center";
    j["features"].push_back(point_feature(ellipse.center_lat, ellipse.center_lon, std::move(props)));
    dump_to(path, j);
}

void write_bootstrap_summary_json(const std::string& path, const BootstrapCloud& cloud,
                                  const ConfidenceEllipse& ellipse) {
    ordered j;
    j["n_resamples"] = cloud.n_resamples;
    j["n_failures"] = cloud.n_failures;
    j["seed"] = cloud.seed;
    j["center"] = {{"lat", ellipse.center_lat}, {"lon", ellipse.center_lon}};
    j["covariance_deg2"] = {{"lat_lat", ellipse.covariance[0]},
                            {"lat_lon", ellipse.covariance[1]},
                            {"lon_lon", ellipse.covariance[3]}};
    j["level"] = ellipse.level;
    j["chi_square_quantile"] = ellipse.quantile;
    j["semi_major_deg"] = ellipse.semi_major_deg;
    j["semi_minor_deg"] = ellipse.semi_minor_deg;
    j["orientation_deg"] = ellipse.orientation_deg;
    j["degenerate"] = ellipse.degenerate;
    dump_to(path, j);
}

} // namespace rdgeo
