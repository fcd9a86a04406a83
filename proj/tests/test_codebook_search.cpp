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

#include "rdgeo/circular.hpp"
#include "rdgeo/codebook_search.hpp"
#include "rdgeo/synth.hpp"

using namespace rdgeo;

namespace {

// Sites scattered around a target, each oriented exactly at it. The global
// optimum is one codebook point at the target with zero distortion.
SourceDistribution aimed_source(const GeoPoint& target, const BearingModel& model) {
    std::vector<Site> sites;
    const double lats[] = {5.0, 8.0, 12.0, 15.0, 18.0, 21.0};
    const double lons[] = {28.0, 44.0, 30.0, 42.0, 32.0, 40.0};
    for (int i = 0; i < 6; ++i) {
        Site s;
        s.id = "s" + std::to_string(i);
        s.location = GeoPoint(lats[i], lons[i]);
        s.orientation_deg = bearing(model, s.location, target);
        sites.push_back(s);
    }
    return uniform_distribution(sites);
}

SearchConfig quick_config(double slope, std::uint64_t seed) {
    SearchConfig c;
    c.slope = slope;
    c.n_init = 16;
    c.seed = seed;
    return c;
}

double objective(const std::vector<Site>& sites, const std::vector<double>& weights,
                 const BearingModel& model, const GeoPoint& y) {
    double f = 0.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        double d = 2.0;
        try {
            d = versin_distortion(sites[i].orientation_deg, bearing(model, sites[i].location, y));
        } catch (const Error&) {
        }
        f += weights[i] * d;
    }
    return f;
}

bool same_solution(const RdSolution& a, const RdSolution& b) {
    if (a.codebook.size() != b.codebook.size()) return false;
    for (std::size_t y = 0; y < a.codebook.size(); ++y) {
        if (a.codebook.points[y].lat != b.codebook.points[y].lat) return false;
        if (a.codebook.points[y].lon != b.codebook.points[y].lon) return false;
    }
    return a.coupling.rate_nats == b.coupling.rate_nats &&
           a.coupling.mean_distortion == b.coupling.mean_distortion;
}

} // namespace

TEST_CASE("optimal point never regresses from its start") {
    const auto model = BearingModel::rhumb();
    const GeoPoint target(30.0, 36.0);
    const auto source = aimed_source(target, model);
    const std::vector<double> w(source.sites.size(), 1.0 / 6.0);
    for (const GeoPoint start : {GeoPoint(25.0, 30.0), GeoPoint(40.0, 50.0), GeoPoint(28.0, 36.0)}) {
        const auto r = optimal_point(source.sites, w, model, start);
        const double f0 = objective(source.sites, w, model, start);
        CHECK(r.objective <= f0 + 1e-15);
        CHECK(r.objective == doctest::Approx(objective(source.sites, w, model, r.point)));
    }
}

TEST_CASE("optimal point finds a consistent target") {
    const auto model = BearingModel::rhumb();
    const GeoPoint target(30.0, 36.0);
    const auto source = aimed_source(target, model);
    const std::vector<double> w(source.sites.size(), 1.0 / 6.0);
    const auto r = optimal_point(source.sites, w, model, GeoPoint(27.0, 34.0));
    CHECK(r.objective < 1e-10);
}

TEST_CASE("suggest start is finite and sane") {
    const auto model = BearingModel::rhumb();
    const auto source = aimed_source(GeoPoint(30.0, 36.0), model);
    const std::vector<double> w(source.sites.size(), 1.0 / 6.0);
    const auto p = suggest_start(source.sites, w, model);
    CHECK(std::isfinite(p.lat));
    CHECK(std::isfinite(p.lon));
    CHECK(std::fabs(p.lat) <= 90.0);
}

TEST_CASE("search solves the zero-distortion construction") {
    const auto model = BearingModel::rhumb();
    const GeoPoint target(30.0, 36.0);
    const auto source = aimed_source(target, model);
    const auto sol = search(source, model, quick_config(-50.0, 1));
    CHECK(sol.converged);
    REQUIRE(sol.codebook.size() == 1);
    CHECK(sol.coupling.mean_distortion < 1e-9);
    CHECK(sol.coupling.rate_nats < 1e-9);
    CHECK(std::fabs(sol.codebook.points[0].lat - target.lat) < 0.05);
    CHECK(std::fabs(sol.codebook.points[0].lon - target.lon) < 0.05);
}

TEST_CASE("search output invariants") {
    SynthConfig sc;
    sc.anchors = {GeoPoint(50.0, 35.0), GeoPoint(-10.0, 10.0)};
    sc.sites_per_anchor = 12;
    sc.sigma_deg = 4.0;
    sc.seed = 9;
    const auto source = uniform_distribution(synth_sites(sc));
    const auto config = quick_config(-30.0, 3);
    const auto sol = search(source, BearingModel::rhumb(), config);

    REQUIRE(sol.codebook.size() >= 1);
    REQUIRE(sol.per_point.size() == sol.codebook.size());
    double total = 0.0;
    for (const auto& pp : sol.per_point) {
        CHECK(pp.weight >= config.prune_weight * 0.999);
        CHECK(pp.distortion >= 0.0);
        total += pp.weight;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.coupling.rate_nats >= -1e-12);
    CHECK(sol.coupling.rate_nats <= std::log(static_cast<double>(source.sites.size())) + 1e-9);

    double mean = 0.0;
    for (std::size_t y = 0; y < sol.codebook.size(); ++y)
        mean += sol.per_point[y].weight * sol.per_point[y].distortion;
    CHECK(mean == doctest::Approx(sol.coupling.mean_distortion).epsilon(1e-9));
}

TEST_CASE("search is deterministic in the seed") {
    const auto model = BearingModel::rhumb();
    const auto source = aimed_source(GeoPoint(30.0, 36.0), model);
    const auto a = search(source, model, quick_config(-20.0, 77));
    const auto b = search(source, model, quick_config(-20.0, 77));
    CHECK(same_solution(a, b));
}

TEST_CASE("frozen points survive untouched") {
    const auto model = BearingModel::rhumb();
    const auto source = aimed_source(GeoPoint(30.0, 36.0), model);
    const GeoPoint anchor(21.4225, 39.8262);
    const auto sol = search_with_frozen(source, model, quick_config(-30.0, 5), {anchor});
    REQUIRE(sol.codebook.size() >= 1);
    CHECK(sol.codebook.frozen[0]);
    CHECK(sol.codebook.points[0].lat == anchor.lat);
    CHECK(sol.codebook.points[0].lon == anchor.lon);
    bool has_free = false;
    for (std::size_t y = 0; y < sol.codebook.size(); ++y)
        if (!sol.codebook.frozen[y]) has_free = true;
    CHECK(has_free);
}

TEST_CASE("refine improves an explicit start") {
    const auto model = BearingModel::rhumb();
    const GeoPoint target(30.0, 36.0);
    const auto source = aimed_source(target, model);
    Codebook start;
    start.push(GeoPoint(26.0, 33.0));
    const auto sol = refine(source, model, quick_config(-50.0, 0), start);
    REQUIRE(sol.codebook.size() == 1);
    CHECK(sol.coupling.mean_distortion < 1e-8);
    CHECK(std::fabs(sol.codebook.points[0].lat - target.lat) < 0.1);
}

TEST_CASE("bad configs are rejected") {
    const auto model = BearingModel::rhumb();
    const auto source = aimed_source(GeoPoint(30.0, 36.0), model);
    SearchConfig c = quick_config(1.0, 0); // positive slope
    CHECK_THROWS_AS(search(source, model, c), Error);
    c = quick_config(-10.0, 0);
    c.n_init = 0;
    CHECK_THROWS_AS(search(source, model, c), Error);
}
