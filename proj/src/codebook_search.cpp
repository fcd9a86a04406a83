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

#include "rdgeo/codebook_search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "rdgeo/circular.hpp"
#include "rdgeo/rng.hpp"

namespace rdgeo {

namespace {

constexpr double kLatClamp = 89.999;
constexpr double kInitDedupRad = 0.05 * M_PI / 180.0; // restart duplicates
constexpr int kNmMaxIters = 500;
constexpr double kNmSpreadTol = 1e-12;

GeoPoint clamp_params(double lat, double lon) {
    return GeoPoint(std::clamp(lat, -kLatClamp, kLatClamp), wrap_lon(lon));
}

double objective(const std::vector<Site>& sites, const std::vector<double>& weights,
                 const BearingModel& model, double lat, double lon) {
    const GeoPoint y = clamp_params(lat, lon);
    double f = 0.0;
    for (std::size_t x = 0; x < sites.size(); ++x) {
        if (weights[x] == 0.0) continue;
        double d;
        try {
            d = versin_distortion(sites[x].orientation_deg, bearing(model, sites[x].location, y));
        } catch (const Error&) {
            d = 2.0;
        }
        f += weights[x] * d;
    }
    return f;
}

// Great-circle destination point; used only to seed starting candidates.
GeoPoint destination(const GeoPoint& from, double bearing_deg, double distance_deg) {
    const double d2r = M_PI / 180.0;
    const double phi1 = from.lat * d2r;
    const double theta = bearing_deg * d2r;
    const double delta = distance_deg * d2r;
    const double phi2 =
        std::asin(std::sin(phi1) * std::cos(delta) + std::cos(phi1) * std::sin(delta) * std::cos(theta));
    const double lam2 = from.lon * d2r +
                        std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                                   std::cos(delta) - std::sin(phi1) * std::sin(phi2));
    return GeoPoint(std::clamp(phi2 / d2r, -kLatClamp, kLatClamp), wrap_lon(lam2 / d2r));
}

} // namespace

GeoPoint suggest_start(const std::vector<Site>& sites, const std::vector<double>& weights,
                       const BearingModel& model) {
    std::vector<GeoPoint> candidates;
    // project forward from the heaviest site along its orientation
    std::size_t top = 0;
    for (std::size_t x = 1; x < sites.size(); ++x)
        if (weights[x] > weights[top]) top = x;
    for (const double dist : {2.0, 5.0, 10.0, 20.0, 40.0})
        candidates.push_back(destination(sites[top].location, sites[top].orientation_deg, dist));
    // weighted centroid
    double wsum = 0.0, lat = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t x = 0; x < sites.size(); ++x) {
        wsum += weights[x];
        lat += weights[x] * sites[x].location.lat;
        cx += weights[x] * std::cos(sites[x].location.lon * M_PI / 180.0);
        cy += weights[x] * std::sin(sites[x].location.lon * M_PI / 180.0);
    }
    if (wsum > 0.0)
        candidates.push_back(
            GeoPoint(std::clamp(lat / wsum, -kLatClamp, kLatClamp),
                     wrap_lon(std::atan2(cy, cx) * 180.0 / M_PI)));

    GeoPoint best = candidates.front();
    double best_f = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
        const double f = objective(sites, weights, model, c.lat, c.lon);
        if (f < best_f) {
            best_f = f;
            best = c;
        }
    }
    return best;
}


OptimalPointResult optimal_point(const std::vector<Site>& sites, const std::vector<double>& weights,
                                 const BearingModel& model, const GeoPoint& start) {
    if (sites.empty()) fail(errc::empty_dataset, "no sites");
    if (weights.size() != sites.size())
        fail(errc::invalid_argument, "weights length does not match site count");
    double wsum = 0.0;
    for (const double w : weights) wsum += w;
    if (!(wsum > 0.0)) fail(errc::invalid_argument, "weights must have positive sum");

    const auto f = [&](const std::array<double, 2>& p) {
        return objective(sites, weights, model, p[0], p[1]);
    };

    // Downhill simplex, standard coefficients (1, 2, 0.5, 0.5).
    std::array<std::array<double, 2>, 3> v = {{{start.lat, start.lon},
                                               {start.lat + 0.5, start.lon},
                                               {start.lat, start.lon + 0.5}}};
    std::array<double, 3> fv = {f(v[0]), f(v[1]), f(v[2])};

    bool converged = false;
    for (int iter = 0; iter < kNmMaxIters; ++iter) {
        std::array<int, 3> order = {0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int lo = order[0], mid = order[1], hi = order[2];
        if (fv[hi] - fv[lo] < kNmSpreadTol) {
            converged = true;
            break;
        }
        const std::array<double, 2> centroid = {(v[lo][0] + v[mid][0]) / 2.0,
                                                (v[lo][1] + v[mid][1]) / 2.0};
        const auto blend = [&](double t) {
            return std::array<double, 2>{centroid[0] + t * (v[hi][0] - centroid[0]),
                                         centroid[1] + t * (v[hi][1] - centroid[1])};
        };
        const auto refl = blend(-1.0);
        const double f_refl = f(refl);
        if (f_refl < fv[lo]) {
            const auto exp_p = blend(-2.0);
            const double f_exp = f(exp_p);
            if (f_exp < f_refl) {
                v[hi] = exp_p;
                fv[hi] = f_exp;
            } else {
                v[hi] = refl;
                fv[hi] = f_refl;
            }
        } else if (f_refl < fv[mid]) {
            v[hi] = refl;
            fv[hi] = f_refl;
        } else {
            const auto con = f_refl < fv[hi] ? blend(-0.5) : blend(0.5);
            const double f_con = f(con);
            if (f_con < std::min(f_refl, fv[hi])) {
                v[hi] = con;
                fv[hi] = f_con;
            } else {
                // shrink toward the best vertex
                for (int i : {mid, hi}) {
                    v[i] = {v[lo][0] + 0.5 * (v[i][0] - v[lo][0]),
                            v[lo][1] + 0.5 * (v[i][1] - v[lo][1])};
                    fv[i] = f(v[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (fv[i] < fv[best]) best = i;

    OptimalPointResult r;
    const double f_start = objective(sites, weights, model, start.lat, start.lon);
    if (fv[best] <= f_start) {
        r.point = clamp_params(v[best][0], v[best][1]);
        r.objective = fv[best];
    } else {
        r.point = clamp_params(start.lat, start.lon);
        r.objective = f_start;
    }
    r.converged = converged;
    return r;
}

namespace {

std::vector<double> posterior_column(const SourceDistribution& source, const Coupling& c,
                                     std::size_t y) {
    std::vector<double> p(c.n_sites, 0.0);
    if (c.marginal[y] <= 0.0) return p;
    for (std::size_t x = 0; x < c.n_sites; ++x)
        p[x] = source.probabilities[x] * c.q(x, y) / c.marginal[y];
    return p;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double tv = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) tv += std::fabs(a[i] - b[i]);
    return 0.5 * tv;
}

// The outer loop shared by search, search_with_frozen, and refine:
// BA -> prune -> merge -> re-optimize, until the rate stalls.
RdSolution run_outer(const SourceDistribution& source, const BearingModel& model,
                     const SearchConfig& config, Codebook cb) {
    const double inner_tol = config.outer_tol / 10.0;
    double prev_rate = std::numeric_limits<double>::quiet_NaN();
    double prev_f = std::numeric_limits<double>::infinity();
    // pruning or merging may raise F by design; the descent invariant only
    // holds across iterations that kept the codebook structure
    bool structure_changed = true;

    RdSolution sol;
    sol.converged = false;
    int iter = 0;
    for (; iter < config.max_outer_iters; ++iter) {
        const DistortionMatrix dmat = build_distortion_matrix(source.sites, cb, model);
        Coupling c = blahut_arimoto(source, dmat, config.slope, inner_tol);
        const double f = c.lagrangian();
        // BA stops on the per-sweep improvement, so successive F values carry
        // noise of a few inner tolerances. A genuine rise without a structural
        // change means the loop is oscillating (typical near critical slopes);
        // settle for the current iterate instead of chasing the oscillation.
        const bool stalled = !structure_changed && f > prev_f + 100.0 * config.outer_tol;
        prev_f = f;

        // prune: unfrozen points with near-zero weight
        std::vector<std::size_t> kept;
        for (std::size_t y = 0; y < cb.size(); ++y) {
            if (cb.frozen[y] || c.marginal[y] >= config.prune_weight) kept.push_back(y);
        }
        if (kept.empty()) fail(errc::empty_codebook, "pruning removed every reconstruction point");

        // merge: drop one of any pair whose posteriors nearly coincide
        std::vector<std::vector<double>> post(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) post[i] = posterior_column(source, c, kept[i]);
        std::vector<bool> dead(kept.size(), false);
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (dead[i]) continue;
            for (std::size_t j = i + 1; j < kept.size(); ++j) {
                if (dead[j]) continue;
                const bool fi = cb.frozen[kept[i]];
                const bool fj = cb.frozen[kept[j]];
                if (fi && fj) continue;
                if (total_variation(post[i], post[j]) >= config.merge_distance) continue;
                std::size_t drop;
                if (fi) {
                    drop = j;
                } else if (fj) {
                    drop = i;
                } else {
                    const double wi = c.marginal[kept[i]];
                    const double wj = c.marginal[kept[j]];
                    drop = wi < wj ? i : (wj < wi ? j : std::max(i, j));
                }
                dead[drop] = true;
                if (drop == i) break;
            }
        }
        std::vector<std::size_t> survivors;
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (!dead[i]) survivors.push_back(kept[i]);

        const bool changed = survivors.size() != cb.size();
        const double rate = c.rate_nats;
        if (!changed && (stalled || (!std::isnan(prev_rate) &&
                                     std::fabs(rate - prev_rate) < config.outer_tol))) {
            sol.converged = true;
            sol.codebook = std::move(cb);
            sol.coupling = std::move(c);
            break;
        }
        prev_rate = rate;
        structure_changed = changed;

        // re-optimize unfrozen survivors against the joint distribution
        Codebook next;
        for (const std::size_t y : survivors) {
            if (cb.frozen[y]) {
                next.push(cb.points[y], true);
                continue;
            }
            std::vector<double> w(c.n_sites);
            for (std::size_t x = 0; x < c.n_sites; ++x)
                w[x] = source.probabilities[x] * c.q(x, y);
            double wsum = 0.0;
            for (const double wi : w) wsum += wi;
            if (wsum <= 0.0) {
                next.push(cb.points[y], false);
                continue;
            }
            next.push(optimal_point(source.sites, w, model, cb.points[y]).point, false);
        }
        cb = std::move(next);
    }

    if (!sol.converged) {
        // iteration cap: report the best-so-far state with the flag cleared
        const DistortionMatrix dmat = build_distortion_matrix(source.sites, cb, model);
        sol.coupling = blahut_arimoto(source, dmat, config.slope, inner_tol);
        sol.codebook = std::move(cb);
    }
    sol.outer_iters = iter;

    sol.per_point.resize(sol.codebook.size());
    const DistortionMatrix dmat = build_distortion_matrix(source.sites, sol.codebook, model);
    for (std::size_t y = 0; y < sol.codebook.size(); ++y) {
        double num = 0.0;
        for (std::size_t x = 0; x < sol.coupling.n_sites; ++x)
            num += source.probabilities[x] * sol.coupling.q(x, y) * dmat.at(x, y);
        sol.per_point[y].weight = sol.coupling.marginal[y];
        sol.per_point[y].distortion =
            sol.coupling.marginal[y] > 0.0 ? num / sol.coupling.marginal[y] : 0.0;
    }
    return sol;
}

} // namespace

RdSolution search_with_frozen(const SourceDistribution& source, const BearingModel& model,
                              const SearchConfig& config,
                              const std::vector<GeoPoint>& frozen_points) {
    if (source.sites.empty()) fail(errc::empty_dataset, "no sites");
    if (!(config.slope <= 0.0)) fail(errc::invalid_argument, "slope must be nonpositive");
    if (config.n_init < 0 || (config.n_init == 0 && frozen_points.empty()))
        fail(errc::invalid_argument, "n_init must be positive");
    for (std::size_t i = 0; i < frozen_points.size(); ++i)
        for (std::size_t j = i + 1; j < frozen_points.size(); ++j)
            if (angular_separation_rad(frozen_points[i], frozen_points[j]) < kCoincidenceTolRad)
                fail(errc::invalid_argument, "frozen points coincide");

    Codebook cb;
    for (const auto& p : frozen_points) cb.push(p, true);

    for (int i = 0; i < config.n_init; ++i) {
        Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(i)));
        const auto w = rng.dirichlet(source.sites.size(), config.dirichlet_alpha);
        const GeoPoint start = suggest_start(source.sites, w, model);
        const GeoPoint p = optimal_point(source.sites, w, model, start).point;
        bool dup = false;
        for (const auto& q : cb.points) {
            if (angular_separation_rad(p, q) < kInitDedupRad) {
                dup = true;
                break;
            }
        }
        if (!dup) cb.push(p, false);
    }
    return run_outer(source, model, config, std::move(cb));
}

RdSolution search(const SourceDistribution& source, const BearingModel& model,
                  const SearchConfig& config) {
    return search_with_frozen(source, model, config, {});
}

RdSolution refine(const SourceDistribution& source, const BearingModel& model,
                  const SearchConfig& config, const Codebook& start) {
    if (start.size() == 0) fail(errc::empty_codebook, "empty starting codebook");
    return run_outer(source, model, config, start);
}

} // namespace rdgeo
