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

#include "rdgeo/curve_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace rdgeo {

std::vector<RdCurvePoint> sweep(const SourceDistribution& source, const BearingModel& model,
                                const std::vector<double>& slopes, const SearchConfig& config) {
    std::vector<RdCurvePoint> out;
    out.reserve(slopes.size());
    for (const double s : slopes) {
        RdCurvePoint p;
        p.slope = s;
        SearchConfig c = config;
        c.slope = s;
        try {
            RdSolution sol = search(source, model, c);
            p.rate_nats = sol.coupling.rate_nats;
            p.distortion = sol.coupling.mean_distortion;
            p.codebook_size = sol.codebook.size();
            p.solution = std::move(sol);
        } catch (const Error& e) {
            p.error = e.what();
        }
        out.push_back(std::move(p));
    }
    return out;
}

double CurveBounds::lower_at(double d) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& t : tangents) best = std::max(best, t.rate + t.slope * (d - t.distortion));
    return std::max(best, 0.0);
}

double CurveBounds::upper_at(double d) const {
    if (chords.empty()) return std::numeric_limits<double>::infinity();
    if (d <= chords.front().first) return chords.front().second;
    if (d >= chords.back().first) return chords.back().second;
    for (std::size_t i = 1; i < chords.size(); ++i) {
        if (d <= chords[i].first) {
            const auto& [d0, r0] = chords[i - 1];
            const auto& [d1, r1] = chords[i];
            const double t = (d - d0) / (d1 - d0);
            return r0 + t * (r1 - r0);
        }
    }
    return chords.back().second;
}

std::vector<std::pair<double, double>> CurveBounds::lower_polyline() const {
    // Upper envelope of the tangent lines R = a + s*D with a = rate - slope*distortion.
    struct Line {
        double s;
        double a;
    };
    std::vector<Line> lines;
    for (const auto& t : tangents) lines.push_back({t.slope, t.rate - t.slope * t.distortion});
    std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
        return x.s < y.s || (x.s == y.s && x.a > y.a);
    });
    // drop duplicate slopes (keep largest intercept), then dominated lines
    std::vector<Line> hull;
    const auto isect = [](const Line& p, const Line& q) { return (q.a - p.a) / (p.s - q.s); };
    for (const auto& l : lines) {
        if (!hull.empty() && hull.back().s == l.s) continue;
        while (hull.size() >= 2 && isect(hull[hull.size() - 2], l) <= isect(hull[hull.size() - 2], hull.back()))
            hull.pop_back();
        hull.push_back(l);
    }
    std::vector<std::pair<double, double>> poly;
    const auto eval = [this](double d) { return lower_at(d); };
    poly.emplace_back(d_min, eval(d_min));
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const double x = isect(hull[i - 1], hull[i]);
        if (x > d_min && x < d_max) poly.emplace_back(x, eval(x));
    }
    poly.emplace_back(d_max, eval(d_max));
    return poly;
}

CurveBounds bounds(const std::vector<RdCurvePoint>& points) {
    CurveBounds b;
    std::map<double, double> best_rate_at; // distortion -> min rate
    for (const auto& p : points) {
        if (!p.error.empty()) continue;
        b.tangents.push_back({p.slope, p.rate_nats, p.distortion});
        const auto it = best_rate_at.find(p.distortion);
        if (it == best_rate_at.end() || p.rate_nats < it->second)
            best_rate_at[p.distortion] = p.rate_nats;
    }
    if (best_rate_at.size() < 2)
        fail(errc::insufficient_points, "need at least two points with distinct distortions");
    for (const auto& [d, r] : best_rate_at) b.chords.emplace_back(d, r);
    b.d_min = b.chords.front().first;
    b.d_max = b.chords.back().first;
    return b;
}

namespace {

struct AchievedSet {
    // Pareto-convexified achievable (rate, distortion) pairs plus tangents.
    std::vector<std::pair<double, double>> hull; // (R, D), R ascending, D descending
    std::vector<CurveBounds::Tangent> tangents;

    // smallest distortion provably achievable with rate budget r
    double distortion_upper(double r) const {
        if (hull.empty() || r < hull.front().first) return std::numeric_limits<double>::infinity();
        if (r >= hull.back().first) return hull.back().second;
        for (std::size_t i = 1; i < hull.size(); ++i) {
            if (r <= hull[i].first) {
                const auto& [r0, d0] = hull[i - 1];
                const auto& [r1, d1] = hull[i];
                const double t = (r - r0) / (r1 - r0);
                return d0 + t * (d1 - d0);
            }
        }
        return hull.back().second;
    }

    // largest distortion floor implied by the tangent bounds at rate r
    double distortion_lower(double r) const {
        double best = 0.0;
        for (const auto& t : tangents) {
            if (t.slope >= 0.0) continue;
            best = std::max(best, t.distortion + (r - t.rate) / t.slope);
        }
        return best;
    }
};

AchievedSet achieved_set(const std::vector<RdCurvePoint>& points) {
    AchievedSet a;
    std::vector<std::pair<double, double>> pts; // (R, D)
    for (const auto& p : points) {
        if (!p.error.empty()) continue;
        pts.emplace_back(p.rate_nats, p.distortion);
        a.tangents.push_back({p.slope, p.rate_nats, p.distortion});
    }
    std::sort(pts.begin(), pts.end());
    // Pareto frontier: ascending rate, strictly decreasing distortion
    std::vector<std::pair<double, double>> pareto;
    for (const auto& p : pts) {
        if (!pareto.empty() && p.second >= pareto.back().second) continue;
        pareto.push_back(p);
    }
    // convexify: time sharing makes the lower hull achievable
    for (const auto& p : pareto) {
        while (a.hull.size() >= 2) {
            const auto& p0 = a.hull[a.hull.size() - 2];
            const auto& p1 = a.hull.back();
            // drop p1 if it lies on or above segment p0-p
            if ((p1.second - p0.second) * (p.first - p0.first) >=
                (p.second - p0.second) * (p1.first - p0.first))
                a.hull.pop_back();
            else
                break;
        }
        a.hull.push_back(p);
    }
    return a;
}

std::vector<ModelComparison::Interval> grid_intervals(const std::vector<double>& rates,
                                                      const std::vector<bool>& mask) {
    std::vector<ModelComparison::Interval> out;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) continue;
        std::size_t j = i;
        while (j + 1 < mask.size() && mask[j + 1]) ++j;
        out.push_back({rates[i], rates[j]});
        i = j;
    }
    return out;
}

} // namespace

ModelComparison compare_models(const SourceDistribution& source, const BearingModel& model_a,
                               const BearingModel& model_b, const std::vector<double>& slopes,
                               const SearchConfig& config) {
    const auto pts_a = sweep(source, model_a, slopes, config);
    const auto pts_b = sweep(source, model_b, slopes, config);
    const AchievedSet a = achieved_set(pts_a);
    const AchievedSet b = achieved_set(pts_b);

    double r_max = 0.0;
    if (!a.hull.empty()) r_max = std::max(r_max, a.hull.back().first);
    if (!b.hull.empty()) r_max = std::max(r_max, b.hull.back().first);
    if (r_max <= 0.0) r_max = 1.0;

    const int n_grid = 400;
    std::vector<double> rates(n_grid);
    std::vector<bool> a_wins(n_grid, false);
    std::vector<bool> b_wins(n_grid, false);
    for (int i = 0; i < n_grid; ++i) {
        const double r = r_max * static_cast<double>(i) / (n_grid - 1);
        rates[i] = r;
        a_wins[i] = a.distortion_upper(r) < b.distortion_lower(r);
        b_wins[i] = b.distortion_upper(r) < a.distortion_lower(r);
    }

    ModelComparison cmp;
    cmp.a_better = grid_intervals(rates, a_wins);
    cmp.b_better = grid_intervals(rates, b_wins);
    const auto total = [](const std::vector<ModelComparison::Interval>& v) {
        double t = 0.0;
        for (const auto& iv : v) t += iv.rate_hi - iv.rate_lo;
        return t;
    };
    const double ta = total(cmp.a_better);
    const double tb = total(cmp.b_better);
    cmp.verdict = ta > tb ? "A" : (tb > ta ? "B" : "inconclusive");
    return cmp;
}

BifurcationReport bifurcation_scan(const std::vector<RdCurvePoint>& points, double geo_delta_deg,
                                   double weight_cap) {
    BifurcationReport rep;
    const RdCurvePoint* prev = nullptr;
    for (const auto& p : points) {
        if (!p.error.empty() || !p.solution) {
            prev = nullptr;
            continue;
        }
        BifurcationReport::Entry e;
        e.slope = p.slope;
        e.codebook_size = p.codebook_size;
        e.min_separation_deg = std::numeric_limits<double>::infinity();
        e.min_weight = std::numeric_limits<double>::infinity();
        e.flagged = false;
        const auto& cb = p.solution->codebook;
        for (std::size_t i = 0; i < cb.size(); ++i) {
            e.min_weight = std::min(e.min_weight, p.solution->per_point[i].weight);
            for (std::size_t j = i + 1; j < cb.size(); ++j)
                e.min_separation_deg =
                    std::min(e.min_separation_deg,
                             angular_separation_rad(cb.points[i], cb.points[j]) * 180.0 / M_PI);
        }

        if (prev && prev->solution && p.codebook_size > prev->codebook_size) {
            // greedy-match previous points to their nearest current point;
            // leftovers are the freshly sprouted ones
            const auto& prev_cb = prev->solution->codebook;
            std::vector<bool> claimed(cb.size(), false);
            for (std::size_t i = 0; i < prev_cb.size(); ++i) {
                std::size_t best = cb.size();
                double best_d = std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < cb.size(); ++j) {
                    if (claimed[j]) continue;
                    const double d = angular_separation_rad(prev_cb.points[i], cb.points[j]);
                    if (d < best_d) {
                        best_d = d;
                        best = j;
                    }
                }
                if (best < cb.size()) claimed[best] = true;
            }
            bool all_near = true;
            bool some_light = false;
            bool any_new = false;
            for (std::size_t j = 0; j < cb.size(); ++j) {
                if (claimed[j]) continue;
                any_new = true;
                double nearest = std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < cb.size(); ++k) {
                    if (!claimed[k]) continue;
                    nearest = std::min(nearest,
                                       angular_separation_rad(cb.points[j], cb.points[k]) * 180.0 / M_PI);
                }
                if (nearest > geo_delta_deg) all_near = false;
                if (p.solution->per_point[j].weight < weight_cap) some_light = true;
            }
            e.flagged = any_new && all_near && some_light;
        }
        if (e.flagged) rep.flagged_slopes.push_back(p.slope);
        rep.entries.push_back(e);
        prev = &p;
    }
    return rep;
}

BifurcationReport bifurcation_scan(const SourceDistribution& source, const BearingModel& model,
                                   const std::vector<double>& slopes, const SearchConfig& config,
                                   double geo_delta_deg, double weight_cap) {
    return bifurcation_scan(sweep(source, model, slopes, config), geo_delta_deg, weight_cap);
}

} // namespace rdgeo
