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

#include "rdgeo/codebook_search.hpp"

namespace rdgeo {

/// Per-site soft classification q(y|x) in percent.
struct ClassificationTable {
    std::vector<std::string> site_ids;
    std::vector<std::string> point_labels;
    std::vector<std::vector<double>> rows_percent; // site-major, sums to 100
};

ClassificationTable classify(const SourceDistribution& source, const RdSolution& solution);

/// Reconstruction points whose mass rests on very few sites.
struct OutlierReport {
    struct PointSupport {
        std::string point_label;
        double weight = 0.0;
        std::vector<std::string> top_site_ids; // descending p(x|y)
        std::vector<double> top_site_mass;
        double top_mass = 0.0; // combined p(x|y) of the listed sites
        bool flagged = false;
    };
    std::vector<PointSupport> points;
    std::vector<std::string> outlier_candidates; // sites dominating flagged points
};

OutlierReport screen_outliers(const SourceDistribution& source, const RdSolution& solution,
                              double support_threshold = 0.90, int max_support_count = 2);

/// Label P1..Pn for free points, F1..Fk for frozen ones.
std::vector<std::string> point_labels(const Codebook& codebook);

} // namespace rdgeo
