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

#include "rdgeo/circular.hpp"
#include "rdgeo/rng.hpp"

using namespace rdgeo;

TEST_CASE("versin distortion basics") {
    CHECK(versin_distortion(90.0, 90.0) == 0.0);
    CHECK(versin_distortion(0.0, 90.0) == doctest::Approx(1.0));
    CHECK(versin_distortion(0.0, 180.0) == doctest::Approx(2.0));
    CHECK(versin_distortion(10.0, 370.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(versin_distortion(30.0, 75.0) == versin_distortion(75.0, 30.0));
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const double o = rng.uniform(-720.0, 720.0);
        const double b = rng.uniform(-720.0, 720.0);
        const double d = versin_distortion(o, b);
        CHECK(d >= 0.0);
        CHECK(d <= 2.0);
        CHECK(versin_distortion(o + 360.0, b) == doctest::Approx(d).epsilon(1e-9));
    }
}

TEST_CASE("dispersion to circular standard deviation") {
    CHECK(variance_to_sigma(0.00481) == doctest::Approx(5.6).epsilon(0.009));
    CHECK(std::fabs(variance_to_sigma(0.00481) - 5.6) < 0.05);
    CHECK(std::fabs(variance_to_sigma(0.01329) - 9.4) < 0.05);
    CHECK(variance_to_sigma(0.0) == 0.0);
}

TEST_CASE("sigma conversion round trip") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const double v = rng.uniform(0.0, 0.999);
        CHECK(sigma_to_variance(variance_to_sigma(v)) == doctest::Approx(v).epsilon(1e-12));
    }
    for (int i = 0; i < 500; ++i) {
        const double s = rng.uniform(0.0, 120.0);
        CHECK(variance_to_sigma(sigma_to_variance(s)) == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("sigma conversion domain") {
    CHECK_THROWS_AS(variance_to_sigma(1.0), Error);
    CHECK_THROWS_AS(variance_to_sigma(-0.01), Error);
    CHECK_THROWS_AS(variance_to_sigma(std::nan("")), Error);
    CHECK_THROWS_AS(sigma_to_variance(-1.0), Error);
}
