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

#include "rdgeo/bootstrap_region.hpp"
#include "rdgeo/synth.hpp"

using namespace rdgeo;

namespace {

BootstrapCloud gaussian_cloud(std::size_t n, double clat, double clon, double s1, double s2,
                              double angle_deg, std::uint64_t seed) {
    const double a = angle_deg * M_PI / 180.0;
    Rng rng(seed);
    BootstrapCloud cloud;
    cloud.n_resamples = n;
    cloud.seed = seed;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = s1 * rng.normal();
        const double v = s2 * rng.normal();
        GeoPoint p;
        p.lat = clat + u * std::cos(a) - v * std::sin(a);
        p.lon = clon + u * std::sin(a) + v * std::cos(a);
        cloud.replicates.push_back(p);
    }
    return cloud;
}

} // namespace

TEST_CASE("resample weights form a multinomial draw") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const auto w = resample_weights(17, rng);
        REQUIRE(w.size() == 17);
        std::uint32_t sum = 0;
        for (const auto c : w) sum += c;
        CHECK(sum == 17);
    }
    Rng a(5), b(5);
    CHECK(resample_weights(40, a) == resample_weights(40, b));
}

TEST_CASE("chi-square quantile with two degrees of freedom") {
    CHECK(std::fabs(chi_square2_quantile(0.95) - 5.9915) < 1e-3);
    CHECK(chi_square2_quantile(0.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    // inverse of the closed-form CDF 1 - exp(-x/2)
    for (const double p : {0.5, 0.9, 0.95, 0.99}) {
        const double x = chi_square2_quantile(p);
        CHECK(1.0 - std::exp(-x / 2.0) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK_THROWS_AS(chi_square2_quantile(0.0), Error);
    CHECK_THROWS_AS(chi_square2_quantile(1.0), Error);
}

TEST_CASE("ellipse fit recovers a synthetic Gaussian") {
    const auto cloud = gaussian_cloud(20000, 30.0, 36.0, 0.5, 0.2, 30.0, 88);
    const auto e = fit_ellipse(cloud, 0.95);
    CHECK(std::fabs(e.center_lat - 30.0) < 0.02);
    CHECK(std::fabs(e.center_lon - 36.0) < 0.02);
    CHECK_FALSE(e.degenerate);
    CHECK(e.semi_major_deg > e.semi_minor_deg);

    // covariance equals the textbook sample covariance computed here
    double mlat = 0.0, mlon = 0.0;
    for (const auto& p : cloud.replicates) {
        mlat += p.lat;
        mlon += p.lon;
    }
    mlat /= cloud.replicates.size();
    mlon /= cloud.replicates.size();
    double cll = 0.0, clo = 0.0, coo = 0.0;
    for (const auto& p : cloud.replicates) {
        cll += (p.lat - mlat) * (p.lat - mlat);
        clo += (p.lat - mlat) * (p.lon - mlon);
        coo += (p.lon - mlon) * (p.lon - mlon);
    }
    const double denom = static_cast<double>(cloud.replicates.size() - 1);
    CHECK(e.covariance[0] == doctest::Approx(cll / denom).epsilon(1e-12));
    CHECK(e.covariance[1] == doctest::Approx(clo / denom).epsilon(1e-12));
    CHECK(e.covariance[3] == doctest::Approx(coo / denom).epsilon(1e-12));

    // every boundary vertex sits on the quantile contour
    REQUIRE(e.boundary.size() >= 65);
    CHECK(e.boundary.front().lat == doctest::Approx(e.boundary.back().lat));
    CHECK(e.boundary.front().lon == doctest::Approx(e.boundary.back().lon));
    for (const auto& v : e.boundary)
        CHECK(ellipse_mahalanobis2(e, v.lat, v.lon) == doctest::Approx(e.quantile).epsilon(1e-6));
}

TEST_CASE("degenerate clouds are reported, not fitted") {
    BootstrapCloud cloud;
    cloud.n_resamples = 100;
    for (int i = 0; i < 100; ++i) cloud.replicates.push_back(GeoPoint(30.0, 36.0));
    const auto e = fit_ellipse(cloud, 0.95);
    CHECK(e.degenerate);
    BootstrapCloud tiny;
    tiny.replicates = {GeoPoint(1, 1), GeoPoint(2, 2)};
    CHECK_THROWS_AS(fit_ellipse(tiny, 0.95), Error);
}

TEST_CASE("bootstrap cloud on a synthetic cluster") {
    SynthConfig sc;
    sc.anchors = {GeoPoint(30.0, 36.0)};
    sc.sites_per_anchor = 12;
    sc.sigma_deg = 5.0;
    sc.seed = 31;
    const auto sites = synth_sites(sc);

    BootstrapConfig bc;
    bc.n_resamples = 60;
    bc.seed = 500;
    bc.search.slope = -40.0;
    bc.search.n_init = 8;
    bc.search.seed = 500;

    const auto cloud = bootstrap_cloud(sites, BearingModel::rhumb(), bc);
    CHECK(cloud.n_resamples == 60);
    CHECK(cloud.replicates.size() + cloud.n_failures == 60);
    for (const auto& p : cloud.replicates) {
        CHECK(std::isfinite(p.lat));
        CHECK(std::fabs(p.lat - 30.0) < 10.0);
        CHECK(std::fabs(p.lon - 36.0) < 10.0);
    }
    const auto again = bootstrap_cloud(sites, BearingModel::rhumb(), bc);
    REQUIRE(again.replicates.size() == cloud.replicates.size());
    for (std::size_t i = 0; i < cloud.replicates.size(); ++i) {
        CHECK(again.replicates[i].lat == cloud.replicates[i].lat);
        CHECK(again.replicates[i].lon == cloud.replicates[i].lon);
    }
}

TEST_CASE("bootstrap refuses undersized inputs") {
    SynthConfig sc;
    sc.anchors = {GeoPoint(30.0, 36.0)};
    sc.sites_per_anchor = 1;
    sc.seed = 2;
    const auto sites = synth_sites(sc);
    BootstrapConfig bc;
    bc.n_resamples = 10;
    bc.search.slope = -10.0;
    bc.search.n_init = 4;
    CHECK_THROWS_AS(bootstrap_cloud(sites, BearingModel::rhumb(), bc), Error);
}
