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
#include <set>
#include <string>
#include <vector>

#include "rdgeo/geodesy.hpp"

namespace rdgeo {

/// One oriented location: the source alphabet element.
struct Site {
    std::string id;
    std::string name;
    GeoPoint location;
    double orientation_deg = 0.0; // clockwise from geographic north, [0, 360)
    std::optional<int> year_ce;
    double weight = 1.0;
};

struct SiteFilter {
    std::optional<int> year_before;   // keep sites with year_ce < year_before
    std::set<std::string> exclude_ids;
};

/// Parse the site CSV (header: id,name,latitude,longitude,orientation,year_ce),
/// validate, and apply the filter. Sites without a year are dropped by any
/// year filter. Order is preserved.
std::vector<Site> load_sites(const std::string& path, const SiteFilter& filter = {});

/// Write sites back in the same CSV schema.
void save_sites(const std::string& path, const std::vector<Site>& sites);

/// One id per line; '#' starts a comment line.
std::set<std::string> load_exclusions(const std::string& path);

struct SourceDistribution {
    std::vector<Site> sites;
    std::vector<double> probabilities; // nonnegative, sums to 1
};

/// Probability 1/n on every site.
SourceDistribution uniform_distribution(std::vector<Site> sites);

/// Probabilities proportional to the sites' weight fields.
SourceDistribution weighted_distribution(std::vector<Site> sites);

/// Probabilities proportional to explicit weights (e.g. bootstrap
/// multiplicities); same length as sites.
SourceDistribution weighted_distribution(std::vector<Site> sites, const std::vector<double>& weights);

} // namespace rdgeo
