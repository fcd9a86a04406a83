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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rdgeo/curve_analysis.hpp"
#include "rdgeo/synth.hpp"

using namespace rdgeo;

namespace {

// Points sampled exactly from the convex curve R(D) = -ln D, whose tangent
// slope at D is -1/D.
std::vector<RdCurvePoint> log_curve_points(const std::vector<double>& dists) {
    std::vector<RdCurvePoint> pts;
    for (const double d : dists) {
        RdCurvePoint p;
        p.distortion = d;
        p.rate_nats = -std::log(d);
        p.slope = -1.0 / d;
        p.codebook_size = 1;
        pts.push_back(p);
    }
    return pts;
}

RdCurvePoint scan_point(double slope, const std::vector<GeoPoint>& points,
                        const std::vector<double>& weights) {
    RdCurvePoint p;
    p.slope = slope;
    p.codebook_size = points.size();
    RdSolution sol;
    for (const auto& gp : points) sol.codebook.push(gp);
    for (const double w : weights) sol.per_point.push_back({w, 0.0});
    sol.coupling.slope = slope;
    p.solution = std::move(sol);
    return p;
}

} // namespace

TEST_CASE("bounds bracket a convex curve") {
    const auto pts = log_curve_points({0.1, 0.2, 0.35, 0.5, 0.7, 0.9});
    const auto b = bounds(pts);
    CHECK(b.d_min == doctest::Approx(0.1));
    CHECK(b.d_max == doctest::Approx(0.9));
    for (int i = 0; i <= 200; ++i) {
        const double d = 0.1 + (0.9 - 0.1) * i / 200.0;
        const double lo = b.lower_at(d);
        const double hi = b.upper_at(d);
        const double truth = -std::log(d);
        CHECK(lo <= hi + 1e-12);
        CHECK(lo <= truth + 1e-12);
        CHECK(hi >= truth - 1e-12);
    }
    // at the sampled knots both bounds touch the curve
    for (const auto& p : pts) {
        CHECK(b.lower_at(p.distortion) == doctest::Approx(p.rate_nats).epsilon(1e-12));
        CHECK(b.upper_at(p.distortion) == doctest::Approx(p.rate_nats).epsilon(1e-12));
    }
}

TEST_CASE("lower polyline matches the envelope evaluation") {
    const auto b = bounds(log_curve_points({0.15, 0.3, 0.6, 0.85}));
    const auto poly = b.lower_polyline();
    REQUIRE(poly.size() >= 2);
    CHECK(poly.front().first == doctest::Approx(b.d_min));
    CHECK(poly.back().first == doctest::Approx(b.d_max));
    for (const auto& [d, r] : poly) CHECK(r == doctest::Approx(b.lower_at(d)).epsilon(1e-9));
}

TEST_CASE("bounds need at least two distinct distortions") {
    CHECK_THROWS_AS(bounds(log_curve_points({0.4})), Error);
    auto flat = log_curve_points({0.4, 0.4});
    CHECK_THROWS_AS(bounds(flat), Error);
    std::vector<RdCurvePoint> none;
    CHECK_THROWS_AS(bounds(none), Error);
}

TEST_CASE("failed sweep entries are ignored by bounds") {
    auto pts = log_curve_points({0.2, 0.5, 0.8});
    RdCurvePoint bad;
    bad.error = "did not converge";
    bad.distortion = 0.01;
    bad.rate_nats = 99.0;
    pts.push_back(bad);
    const auto b = bounds(pts);
    CHECK(b.d_min == doctest::Approx(0.2));
}

TEST_CASE("sweep runs one search per slope") {
    SynthConfig sc;
    sc.anchors = {GeoPoint(50.0, 35.0)};
    sc.sites_per_anchor = 10;
    sc.sigma_deg = 6.0;
    sc.seed = 4;
    const auto source = uniform_distribution(synth_sites(sc));
    SearchConfig config;
    config.n_init = 8;
    config.seed = 21;
    const std::vector<double> slopes = {-2.0, -10.0, -40.0};
    const auto pts = sweep(source, BearingModel::rhumb(), slopes, config);
    REQUIRE(pts.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(pts[i].slope == slopes[i]);
        CHECK(pts[i].error.empty());
        CHECK(pts[i].solution.has_value());
        CHECK(pts[i].codebook_size >= 1);
    }
    // more negative slope never increases distortion on this easy instance
    CHECK(pts[2].distortion <= pts[0].distortion + 1e-9);
}

TEST_CASE("model comparison prefers the generating model") {
    SynthConfig sc;
    sc.anchors = {GeoPoint(45.0, 10.0)};
    sc.sites_per_anchor = 14;
    sc.sigma_deg = 3.0;
    sc.seed = 12;
    const auto source = uniform_distribution(synth_sites(sc)); // rhumb-generated
    SearchConfig config;
    config.n_init = 8;
    config.seed = 33;
    const std::vector<double> slopes = {-5.0, -15.0, -45.0};
    // a bisector of two far-away anchors explains none of the orientation
    const auto bad = BearingModel::bisector(GeoPoint(-40.0, -120.0), GeoPoint(-40.0, 120.0));
    const auto cmp = compare_models(source, BearingModel::rhumb(), bad, slopes, config);
    CHECK(cmp.verdict == "A");
    CHECK(!cmp.a_better.empty());
    for (const auto& iv : cmp.a_better) CHECK(iv.rate_lo <= iv.rate_hi);
}

TEST_CASE("bifurcation flags a sprouting twin") {
    std::vector<RdCurvePoint> pts;
    pts.push_back(scan_point(-40.0, {GeoPoint(30.0, 36.0)}, {1.0}));
    pts.push_back(scan_point(-80.0, {GeoPoint(30.0, 36.0), GeoPoint(30.3, 36.2)}, {0.995, 0.005}));
    const auto rep = bifurcation_scan(pts, 1.0, 0.01);
    REQUIRE(rep.entries.size() == 2);
    CHECK_FALSE(rep.entries[0].flagged);
    CHECK(rep.entries[1].flagged);
    CHECK(rep.entries[1].min_weight == doctest::Approx(0.005));
    CHECK(rep.entries[1].min_separation_deg < 1.0);
    REQUIRE(rep.flagged_slopes.size() == 1);
    CHECK(rep.flagged_slopes[0] == -80.0);
}

TEST_CASE("distant or heavy new points are not bifurcations") {
    std::vector<RdCurvePoint> pts;
    pts.push_back(scan_point(-40.0, {GeoPoint(30.0, 36.0)}, {1.0}));
    // new point far away: a genuine second cluster, not noise
    pts.push_back(scan_point(-80.0, {GeoPoint(30.0, 36.0), GeoPoint(10.0, 20.0)}, {0.6, 0.4}));
    // grows again, nearby but with substantial weight
    pts.push_back(scan_point(-120.0,
                             {GeoPoint(30.0, 36.0), GeoPoint(10.0, 20.0), GeoPoint(30.4, 36.0)},
                             {0.4, 0.4, 0.2}));
    const auto rep = bifurcation_scan(pts, 1.0, 0.01);
    CHECK(rep.flagged_slopes.empty());
    // shrinking codebooks never flag either
    std::vector<RdCurvePoint> shrink;
    shrink.push_back(scan_point(-40.0, {GeoPoint(30.0, 36.0), GeoPoint(30.2, 36.1)}, {0.99, 0.01}));
    shrink.push_back(scan_point(-80.0, {GeoPoint(30.0, 36.0)}, {1.0}));
    CHECK(bifurcation_scan(shrink, 1.0, 0.01).flagged_slopes.empty());
}
