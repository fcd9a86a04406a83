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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "rdgeo/dataset.hpp"

using namespace rdgeo;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path((std::filesystem::temp_directory_path() / name).string()) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kGood =
    "id,name,latitude,longitude,orientation,year_ce\n"
    "a1,Alpha,30.5,35.25,147.0,680\n"
    "b2,\"Beta, the second\",21.4,39.8,-10.0,710\n"
    "c3,Gamma,34.0,44.0,200.5,\n";

} // namespace

TEST_CASE("CSV loading") {
    TempFile f("rdgeo_sites_good.csv", kGood);
    const auto sites = load_sites(f.path);
    REQUIRE(sites.size() == 3);
    CHECK(sites[0].id == "a1");
    CHECK(sites[0].name == "Alpha");
    CHECK(sites[0].location.lat == doctest::Approx(30.5));
    CHECK(sites[0].location.lon == doctest::Approx(35.25));
    CHECK(sites[0].orientation_deg == doctest::Approx(147.0));
    CHECK(sites[0].year_ce == 680);
    CHECK(sites[1].name == "Beta, the second");
    CHECK(sites[1].orientation_deg == doctest::Approx(350.0)); // wrapped into [0, 360)
    CHECK_FALSE(sites[2].year_ce.has_value());
}

TEST_CASE("year filter drops undated sites") {
    TempFile f("rdgeo_sites_year.csv", kGood);
    SiteFilter filter;
    filter.year_before = 700;
    const auto sites = load_sites(f.path, filter);
    REQUIRE(sites.size() == 1);
    CHECK(sites[0].id == "a1");
}

TEST_CASE("exclusion filter") {
    TempFile f("rdgeo_sites_excl.csv", kGood);
    SiteFilter filter;
    filter.exclude_ids = {"b2"};
    const auto sites = load_sites(f.path, filter);
    REQUIRE(sites.size() == 2);
    CHECK(sites[0].id == "a1");
    CHECK(sites[1].id == "c3");
}

TEST_CASE("exclusion file format") {
    TempFile f("rdgeo_excl.txt", "# comment\na1\n\n  c3  \n");
    const auto ids = load_exclusions(f.path);
    CHECK(ids == std::set<std::string>{"a1", "c3"});
}

TEST_CASE("malformed input is rejected") {
    TempFile bad_header("rdgeo_bad1.csv", "id,name,lat,lon,orientation,year_ce\nx,X,0,0,0,\n");
    CHECK_THROWS_AS(load_sites(bad_header.path), Error);

    TempFile dup("rdgeo_bad2.csv",
                 "id,name,latitude,longitude,orientation,year_ce\n"
                 "a,A,0,0,0,\na,B,1,1,1,\n");
    try {
        load_sites(dup.path);
        FAIL("expected duplicate-id error");
    } catch (const Error& e) {
        CHECK(e.code() == errc::duplicate_id);
    }

    TempFile range("rdgeo_bad3.csv",
                   "id,name,latitude,longitude,orientation,year_ce\na,A,95,0,0,\n");
    CHECK_THROWS_AS(load_sites(range.path), Error);

    TempFile fields("rdgeo_bad4.csv",
                    "id,name,latitude,longitude,orientation,year_ce\na,A,0,0\n");
    CHECK_THROWS_AS(load_sites(fields.path), Error);

    CHECK_THROWS_AS(load_sites("/nonexistent/rdgeo.csv"), Error);
}

TEST_CASE("save then load round trip") {
    TempFile f("rdgeo_sites_rt.csv", kGood);
    const auto sites = load_sites(f.path);
    const std::string out = (std::filesystem::temp_directory_path() / "rdgeo_rt_out.csv").string();
    save_sites(out, sites);
    const auto again = load_sites(out);
    std::remove(out.c_str());
    REQUIRE(again.size() == sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        CHECK(again[i].id == sites[i].id);
        CHECK(again[i].name == sites[i].name);
        CHECK(again[i].location.lat == doctest::Approx(sites[i].location.lat).epsilon(1e-9));
        CHECK(again[i].orientation_deg ==
              doctest::Approx(sites[i].orientation_deg).epsilon(1e-9));
        CHECK(again[i].year_ce == sites[i].year_ce);
    }
}

TEST_CASE("source distributions") {
    TempFile f("rdgeo_sites_dist.csv", kGood);
    auto sites = load_sites(f.path);

    const auto u = uniform_distribution(sites);
    REQUIRE(u.probabilities.size() == 3);
    for (const double p : u.probabilities) CHECK(p == doctest::Approx(1.0 / 3.0));

    const auto w = weighted_distribution(sites, {2.0, 1.0, 1.0});
    CHECK(w.probabilities[0] == doctest::Approx(0.5));
    CHECK(w.probabilities[1] == doctest::Approx(0.25));

    CHECK_THROWS_AS(uniform_distribution({}), Error);
    CHECK_THROWS_AS(weighted_distribution(sites, {1.0}), Error);
    CHECK_THROWS_AS(weighted_distribution(sites, {0.0, 0.0, 0.0}), Error);
}
