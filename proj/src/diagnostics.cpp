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

#include "rdgeo/diagnostics.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rdgeo {

std::vector<std::string> point_labels(const Codebook& codebook) {
    std::vector<std::string> labels;
    int free_n = 0;
    int frozen_n = 0;
    for (std::size_t y = 0; y < codebook.size(); ++y) {
        labels.push_back(codebook.frozen[y] ? "F" + std::to_string(++frozen_n)
                                            : "P" + std::to_string(++free_n));
    }
    return labels;
}

ClassificationTable classify(const SourceDistribution& source, const RdSolution& solution) {
    ClassificationTable t;
    t.point_labels = point_labels(solution.codebook);
    const Coupling& c = solution.coupling;
    for (std::size_t x = 0; x < c.n_sites; ++x) {
        t.site_ids.push_back(source.sites[x].id);
        std::vector<double> row(c.n_points);
        for (std::size_t y = 0; y < c.n_points; ++y) row[y] = 100.0 * c.q(x, y);
        t.rows_percent.push_back(std::move(row));
    }
    return t;
}

OutlierReport screen_outliers(const SourceDistribution& source, const RdSolution& solution,
                              double support_threshold, int max_support_count) {
    if (!(support_threshold > 0.0 && support_threshold < 1.0))
        fail(errc::invalid_argument, "support_threshold must lie in (0, 1)");
    if (max_support_count < 1) fail(errc::invalid_argument, "max_support_count must be >= 1");

    const Coupling& c = solution.coupling;
    OutlierReport rep;
    const auto labels = point_labels(solution.codebook);
    std::set<std::string> candidates;

    for (std::size_t y = 0; y < c.n_points; ++y) {
        OutlierReport::PointSupport ps;
        ps.point_label = labels[y];
        ps.weight = c.marginal[y];
        if (c.marginal[y] <= 0.0) {
            rep.points.push_back(std::move(ps));
            continue;
        }
        std::vector<std::size_t> order(c.n_sites);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::vector<double> post(c.n_sites);
        for (std::size_t x = 0; x < c.n_sites; ++x)
            post[x] = source.probabilities[x] * c.q(x, y) / c.marginal[y];
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return post[a] > post[b]; });
        const std::size_t k = std::min<std::size_t>(max_support_count, c.n_sites);
        for (std::size_t i = 0; i < k; ++i) {
            ps.top_site_ids.push_back(source.sites[order[i]].id);
            ps.top_site_mass.push_back(post[order[i]]);
            ps.top_mass += post[order[i]];
        }
        ps.flagged = ps.top_mass >= support_threshold;
        if (ps.flagged) {
            // the minimal prefix of dominating sites is what gets reported
            double cum = 0.0;
            for (std::size_t i = 0; i < ps.top_site_ids.size(); ++i) {
                candidates.insert(ps.top_site_ids[i]);
                cum += ps.top_site_mass[i];
                if (cum >= support_threshold) break;
            }
        }
        rep.points.push_back(std::move(ps));
    }
    rep.outlier_candidates.assign(candidates.begin(), candidates.end());
    return rep;
}

} // namespace rdgeo
