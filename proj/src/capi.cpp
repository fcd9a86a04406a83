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

#include "rdgeo.h"

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "rdgeo/bootstrap_region.hpp"
#include "rdgeo/circular.hpp"
#include "rdgeo/codebook_search.hpp"
#include "rdgeo/curve_analysis.hpp"
#include "rdgeo/dataset.hpp"
#include "rdgeo/diagnostics.hpp"
#include "rdgeo/exports.hpp"
#include "rdgeo/synth.hpp"

using namespace rdgeo;

namespace {

thread_local std::string g_last_error;

rdgeo_status status_of(errc code) {
    switch (code) {
    case errc::io: return RDGEO_ERR_IO;
    case errc::parse: return RDGEO_ERR_PARSE;
    case errc::validation:
    case errc::duplicate_id: return RDGEO_ERR_VALIDATION;
    case errc::empty_dataset:
    case errc::empty_codebook: return RDGEO_ERR_EMPTY;
    case errc::coincident_points:
    case errc::pole_undefined:
    case errc::antipodal_bearings:
    case errc::domain: return RDGEO_ERR_DOMAIN;
    case errc::non_finite: return RDGEO_ERR_NUMERIC;
    case errc::did_not_converge:
    case errc::too_many_failures: return RDGEO_ERR_CONVERGENCE;
    case errc::insufficient_points:
    case errc::degenerate_covariance:
    case errc::invalid_argument: return RDGEO_ERR_INVALID_ARG;
    }
    return RDGEO_ERR_NUMERIC;
}

template <typename Fn>
rdgeo_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return RDGEO_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RDGEO_ERR_NUMERIC;
    }
}

BearingModel to_model(const rdgeo_model* m) {
    if (m == nullptr) return BearingModel::rhumb();
    switch (m->kind) {
    case RDGEO_MODEL_GREAT_CIRCLE: return BearingModel::great_circle();
    case RDGEO_MODEL_RHUMB: return BearingModel::rhumb();
    case RDGEO_MODEL_BISECTOR:
        return BearingModel::bisector(GeoPoint(m->anchor_a_lat, m->anchor_a_lon),
                                      GeoPoint(m->anchor_b_lat, m->anchor_b_lon),
                                      m->bisector_base == RDGEO_MODEL_GREAT_CIRCLE
                                          ? ModelKind::GreatCircle
                                          : ModelKind::RhumbLine);
    }
    fail(errc::invalid_argument, "unknown model kind");
}

SearchConfig to_config(const rdgeo_search_params* p) {
    SearchConfig c;
    if (p == nullptr) return c;
    c.slope = p->slope;
    c.n_init = p->n_init;
    c.dirichlet_alpha = p->dirichlet_alpha;
    c.outer_tol = p->outer_tol;
    c.prune_weight = p->prune_weight;
    c.merge_distance = p->merge_distance;
    c.max_outer_iters = p->max_outer_iters;
    c.seed = p->seed;
    return c;
}

std::vector<GeoPoint> to_points(const double* latlon, size_t n) {
    if (latlon == nullptr && n > 0) fail(errc::invalid_argument, "null coordinate array");
    std::vector<GeoPoint> pts;
    pts.reserve(n);
    for (size_t i = 0; i < n; ++i) pts.emplace_back(latlon[2 * i], latlon[2 * i + 1]);
    return pts;
}

void require(bool ok) {
    if (!ok) fail(errc::invalid_argument, "null argument");
}

} // namespace

struct rdgeo_dataset {
    std::vector<Site> sites;
};

struct rdgeo_solution {
    SourceDistribution source;
    RdSolution solution;
};

struct rdgeo_curve {
    std::vector<RdCurvePoint> points;
};

struct rdgeo_bootstrap {
    BootstrapCloud cloud;
    ConfidenceEllipse ellipse;
};

extern "C" {

const char* rdgeo_last_error(void) { return g_last_error.c_str(); }

void rdgeo_model_init(rdgeo_model* m) {
    m->kind = RDGEO_MODEL_RHUMB;
    m->bisector_base = RDGEO_MODEL_RHUMB;
    m->anchor_a_lat = m->anchor_a_lon = 0.0;
    m->anchor_b_lat = m->anchor_b_lon = 0.0;
}

void rdgeo_search_params_init(rdgeo_search_params* p) {
    const SearchConfig c;
    p->slope = c.slope;
    p->n_init = c.n_init;
    p->dirichlet_alpha = c.dirichlet_alpha;
    p->outer_tol = c.outer_tol;
    p->prune_weight = c.prune_weight;
    p->merge_distance = c.merge_distance;
    p->max_outer_iters = c.max_outer_iters;
    p->seed = c.seed;
}

rdgeo_status rdgeo_dataset_load(const char* csv_path, const char* exclude_path, int year_before,
                                rdgeo_dataset** out) {
    return guarded([&] {
        require(csv_path != nullptr && out != nullptr);
        SiteFilter f;
        if (year_before >= 0) f.year_before = year_before;
        if (exclude_path != nullptr) f.exclude_ids = load_exclusions(exclude_path);
        auto d = std::make_unique<rdgeo_dataset>();
        d->sites = load_sites(csv_path, f);
        *out = d.release();
    });
}

size_t rdgeo_dataset_size(const rdgeo_dataset* d) { return d == nullptr ? 0 : d->sites.size(); }

void rdgeo_dataset_free(rdgeo_dataset* d) { delete d; }

rdgeo_status rdgeo_synth_write_csv(const char* csv_path, const double* anchors_latlon,
                                   size_t n_anchors, int sites_per_anchor, double sigma_deg,
                                   double lat_min, double lat_max, double lon_min, double lon_max,
                                   const rdgeo_model* model, uint64_t seed) {
    return guarded([&] {
        require(csv_path != nullptr);
        SynthConfig cfg;
        cfg.anchors = to_points(anchors_latlon, n_anchors);
        cfg.sites_per_anchor = sites_per_anchor;
        cfg.sigma_deg = sigma_deg;
        cfg.lat_min = lat_min;
        cfg.lat_max = lat_max;
        cfg.lon_min = lon_min;
        cfg.lon_max = lon_max;
        cfg.model = to_model(model);
        cfg.seed = seed;
        save_sites(csv_path, synth_sites(cfg));
    });
}

rdgeo_status rdgeo_compress(const rdgeo_dataset* d, const rdgeo_model* model,
                            const rdgeo_search_params* params, const double* fixed_latlon,
                            size_t n_fixed, rdgeo_solution** out) {
    return guarded([&] {
        require(d != nullptr && out != nullptr);
        auto s = std::make_unique<rdgeo_solution>();
        s->source = uniform_distribution(d->sites);
        s->solution = search_with_frozen(s->source, to_model(model), to_config(params),
                                         to_points(fixed_latlon, n_fixed));
        *out = s.release();
    });
}

size_t rdgeo_solution_point_count(const rdgeo_solution* s) {
    return s == nullptr ? 0 : s->solution.codebook.size();
}

rdgeo_status rdgeo_solution_point(const rdgeo_solution* s, size_t index, double* lat, double* lon,
                                  double* weight, double* distortion, int* frozen) {
    return guarded([&] {
        require(s != nullptr);
        if (index >= s->solution.codebook.size())
            fail(errc::invalid_argument, "point index out of range");
        if (lat != nullptr) *lat = s->solution.codebook.points[index].lat;
        if (lon != nullptr) *lon = s->solution.codebook.points[index].lon;
        if (weight != nullptr) *weight = s->solution.per_point[index].weight;
        if (distortion != nullptr) *distortion = s->solution.per_point[index].distortion;
        if (frozen != nullptr) *frozen = s->solution.codebook.frozen[index] ? 1 : 0;
    });
}

double rdgeo_solution_rate(const rdgeo_solution* s) {
    return s == nullptr ? NAN : s->solution.coupling.rate_nats;
}

double rdgeo_solution_distortion(const rdgeo_solution* s) {
    return s == nullptr ? NAN : s->solution.coupling.mean_distortion;
}

double rdgeo_solution_sigma_deg(const rdgeo_solution* s) {
    if (s == nullptr || !(s->solution.coupling.mean_distortion < 1.0)) return NAN;
    return variance_to_sigma(s->solution.coupling.mean_distortion);
}

int rdgeo_solution_converged(const rdgeo_solution* s) {
    return s != nullptr && s->solution.converged ? 1 : 0;
}

void rdgeo_solution_free(rdgeo_solution* s) { delete s; }

rdgeo_status rdgeo_solution_write_json(const rdgeo_solution* s, const char* path) {
    return guarded([&] {
        require(s != nullptr && path != nullptr);
        write_solution_json(path, s->source, s->solution);
    });
}

rdgeo_status rdgeo_solution_write_geojson(const rdgeo_solution* s, const char* path) {
    return guarded([&] {
        require(s != nullptr && path != nullptr);
        write_points_geojson(path, s->solution);
    });
}

rdgeo_status rdgeo_classification_write_csv(const rdgeo_solution* s, const char* path) {
    return guarded([&] {
        require(s != nullptr && path != nullptr);
        write_classification_csv(path, classify(s->source, s->solution));
    });
}

rdgeo_status rdgeo_classification_write_text(const rdgeo_solution* s, const char* path) {
    return guarded([&] {
        require(s != nullptr && path != nullptr);
        write_classification_text(path, classify(s->source, s->solution));
    });
}

rdgeo_status rdgeo_outliers_write_json(const rdgeo_solution* s, double support_threshold,
                                       int max_support_count, const char* path) {
    return guarded([&] {
        require(s != nullptr && path != nullptr);
        write_outliers_json(path,
                            screen_outliers(s->source, s->solution, support_threshold, max_support_count));
    });
}

rdgeo_status rdgeo_sweep(const rdgeo_dataset* d, const rdgeo_model* model,
                         const rdgeo_search_params* params, const double* slopes, size_t n_slopes,
                         rdgeo_curve** out) {
    return guarded([&] {
        require(d != nullptr && out != nullptr && (slopes != nullptr || n_slopes == 0));
        auto c = std::make_unique<rdgeo_curve>();
        const auto source = uniform_distribution(d->sites);
        c->points = sweep(source, to_model(model), std::vector<double>(slopes, slopes + n_slopes),
                          to_config(params));
        *out = c.release();
    });
}

size_t rdgeo_curve_point_count(const rdgeo_curve* c) { return c == nullptr ? 0 : c->points.size(); }

rdgeo_status rdgeo_curve_point(const rdgeo_curve* c, size_t index, double* slope, double* rate,
                               double* distortion, size_t* codebook_size) {
    return guarded([&] {
        require(c != nullptr);
        if (index >= c->points.size()) fail(errc::invalid_argument, "curve index out of range");
        const auto& p = c->points[index];
        if (!p.error.empty()) fail(errc::did_not_converge, p.error);
        if (slope != nullptr) *slope = p.slope;
        if (rate != nullptr) *rate = p.rate_nats;
        if (distortion != nullptr) *distortion = p.distortion;
        if (codebook_size != nullptr) *codebook_size = p.codebook_size;
    });
}

rdgeo_status rdgeo_curve_write_csv(const rdgeo_curve* c, const char* path) {
    return guarded([&] {
        require(c != nullptr && path != nullptr);
        write_curve_csv(path, c->points);
    });
}

rdgeo_status rdgeo_curve_write_bounds_json(const rdgeo_curve* c, const char* path) {
    return guarded([&] {
        require(c != nullptr && path != nullptr);
        write_bounds_json(path, bounds(c->points));
    });
}

rdgeo_status rdgeo_curve_write_bifurcations_json(const rdgeo_curve* c, double geo_delta_deg,
                                                 double weight_cap, const char* path) {
    return guarded([&] {
        require(c != nullptr && path != nullptr);
        write_bifurcations_json(path, bifurcation_scan(c->points, geo_delta_deg, weight_cap));
    });
}

void rdgeo_curve_free(rdgeo_curve* c) { delete c; }

rdgeo_status rdgeo_compare_models(const rdgeo_dataset* d, const rdgeo_model* model_a,
                                  const rdgeo_model* model_b, const rdgeo_search_params* params,
                                  const double* slopes, size_t n_slopes, const char* name_a,
                                  const char* name_b, const char* out_json_path) {
    return guarded([&] {
        require(d != nullptr && name_a != nullptr && name_b != nullptr &&
                out_json_path != nullptr && (slopes != nullptr || n_slopes == 0));
        const auto source = uniform_distribution(d->sites);
        const auto cmp =
            compare_models(source, to_model(model_a), to_model(model_b),
                           std::vector<double>(slopes, slopes + n_slopes), to_config(params));
        write_comparison_json(out_json_path, cmp, name_a, name_b);
    });
}

rdgeo_status rdgeo_bootstrap_run(const rdgeo_dataset* d, const rdgeo_model* model,
                                 const rdgeo_search_params* params, size_t n_resamples,
                                 double level, const double* fixed_latlon, size_t n_fixed,
                                 rdgeo_bootstrap** out) {
    return guarded([&] {
        require(d != nullptr && out != nullptr);
        BootstrapConfig cfg;
        cfg.n_resamples = n_resamples;
        cfg.search = to_config(params);
        cfg.seed = cfg.search.seed;
        cfg.frozen_points = to_points(fixed_latlon, n_fixed);
        auto b = std::make_unique<rdgeo_bootstrap>();
        b->cloud = bootstrap_cloud(d->sites, to_model(model), cfg);
        b->ellipse = fit_ellipse(b->cloud, level);
        *out = b.release();
    });
}

size_t rdgeo_bootstrap_replicate_count(const rdgeo_bootstrap* b) {
    return b == nullptr ? 0 : b->cloud.replicates.size();
}

rdgeo_status rdgeo_bootstrap_center(const rdgeo_bootstrap* b, double* lat, double* lon) {
    return guarded([&] {
        require(b != nullptr);
        if (lat != nullptr) *lat = b->ellipse.center_lat;
        if (lon != nullptr) *lon = b->ellipse.center_lon;
    });
}

rdgeo_status rdgeo_bootstrap_write_cloud_csv(const rdgeo_bootstrap* b, const char* path) {
    return guarded([&] {
        require(b != nullptr && path != nullptr);
        write_cloud_csv(path, b->cloud);
    });
}

rdgeo_status rdgeo_bootstrap_write_ellipse_geojson(const rdgeo_bootstrap* b, const char* path) {
    return guarded([&] {
        require(b != nullptr && path != nullptr);
        write_ellipse_geojson(path, b->ellipse);
    });
}

rdgeo_status rdgeo_bootstrap_write_summary_json(const rdgeo_bootstrap* b, const char* path) {
    return guarded([&] {
        require(b != nullptr && path != nullptr);
        write_bootstrap_summary_json(path, b->cloud, b->ellipse);
    });
}

void rdgeo_bootstrap_free(rdgeo_bootstrap* b) { delete b; }

} // extern "C"
