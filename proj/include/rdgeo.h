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

/* C interface to the rdgeo core. All heavy objects are opaque handles; every
 * fallible call returns an rdgeo_status and leaves a message readable through
 * rdgeo_last_error() (thread local). */

#ifndef RDGEO_H
#define RDGEO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rdgeo_status {
    RDGEO_OK = 0,
    RDGEO_ERR_IO = 1,
    RDGEO_ERR_PARSE = 2,
    RDGEO_ERR_VALIDATION = 3,
    RDGEO_ERR_DOMAIN = 4,
    RDGEO_ERR_EMPTY = 5,
    RDGEO_ERR_CONVERGENCE = 6,
    RDGEO_ERR_NUMERIC = 7,
    RDGEO_ERR_INVALID_ARG = 8
} rdgeo_status;

const char* rdgeo_last_error(void);

typedef struct rdgeo_dataset rdgeo_dataset;
typedef struct rdgeo_solution rdgeo_solution;
typedef struct rdgeo_curve rdgeo_curve;
typedef struct rdgeo_bootstrap rdgeo_bootstrap;

typedef enum rdgeo_model_kind {
    RDGEO_MODEL_GREAT_CIRCLE = 0,
    RDGEO_MODEL_RHUMB = 1,
    RDGEO_MODEL_BISECTOR = 2
} rdgeo_model_kind;

typedef struct rdgeo_model {
    rdgeo_model_kind kind;
    rdgeo_model_kind bisector_base; /* great-circle or rhumb */
    double anchor_a_lat, anchor_a_lon;
    double anchor_b_lat, anchor_b_lon;
} rdgeo_model;

void rdgeo_model_init(rdgeo_model* m); /* rhumb defaults */

typedef struct rdgeo_search_params {
    double slope;
    int n_init;
    double dirichlet_alpha;
    double outer_tol;
    double prune_weight;
    double merge_distance;
    int max_outer_iters;
    uint64_t seed;
} rdgeo_search_params;

void rdgeo_search_params_init(rdgeo_search_params* p);

/* -------- datasets -------- */

/* exclude_path may be NULL; year_before < 0 disables the year filter. */
rdgeo_status rdgeo_dataset_load(const char* csv_path, const char* exclude_path, int year_before,
                                rdgeo_dataset** out);
size_t rdgeo_dataset_size(const rdgeo_dataset* d);
void rdgeo_dataset_free(rdgeo_dataset* d);

/* Synthetic dataset generator; anchors_latlon is lat,lon pairs. */
rdgeo_status rdgeo_synth_write_csv(const char* csv_path, const double* anchors_latlon,
                                   size_t n_anchors, int sites_per_anchor, double sigma_deg,
                                   double lat_min, double lat_max, double lon_min, double lon_max,
                                   const rdgeo_model* model, uint64_t seed);

/* -------- compression at one slope -------- */

/* fixed_latlon: lat,lon pairs of frozen reconstruction points (may be NULL). */
rdgeo_status rdgeo_compress(const rdgeo_dataset* d, const rdgeo_model* model,
                            const rdgeo_search_params* params, const double* fixed_latlon,
                            size_t n_fixed, rdgeo_solution** out);
size_t rdgeo_solution_point_count(const rdgeo_solution* s);
rdgeo_status rdgeo_solution_point(const rdgeo_solution* s, size_t index, double* lat, double* lon,
                                  double* weight, double* distortion, int* frozen);
double rdgeo_solution_rate(const rdgeo_solution* s);
double rdgeo_solution_distortion(const rdgeo_solution* s);
double rdgeo_solution_sigma_deg(const rdgeo_solution* s);
int rdgeo_solution_converged(const rdgeo_solution* s);
void rdgeo_solution_free(rdgeo_solution* s);

rdgeo_status rdgeo_solution_write_json(const rdgeo_solution* s, const char* path);
rdgeo_status rdgeo_solution_write_geojson(const rdgeo_solution* s, const char* path);
rdgeo_status rdgeo_classification_write_csv(const rdgeo_solution* s, const char* path);
rdgeo_status rdgeo_classification_write_text(const rdgeo_solution* s, const char* path);
rdgeo_status rdgeo_outliers_write_json(const rdgeo_solution* s, double support_threshold,
                                       int max_support_count, const char* path);

/* -------- slope sweeps -------- */

rdgeo_status rdgeo_sweep(const rdgeo_dataset* d, const rdgeo_model* model,
                         const rdgeo_search_params* params, const double* slopes, size_t n_slopes,
                         rdgeo_curve** out);
size_t rdgeo_curve_point_count(const rdgeo_curve* c);
rdgeo_status rdgeo_curve_point(const rdgeo_curve* c, size_t index, double* slope, double* rate,
                               double* distortion, size_t* codebook_size);
rdgeo_status rdgeo_curve_write_csv(const rdgeo_curve* c, const char* path);
rdgeo_status rdgeo_curve_write_bounds_json(const rdgeo_curve* c, const char* path);
rdgeo_status rdgeo_curve_write_bifurcations_json(const rdgeo_curve* c, double geo_delta_deg,
                                                 double weight_cap, const char* path);
void rdgeo_curve_free(rdgeo_curve* c);

rdgeo_status rdgeo_compare_models(const rdgeo_dataset* d, const rdgeo_model* model_a,
                                  const rdgeo_model* model_b, const rdgeo_search_params* params,
                                  const double* slopes, size_t n_slopes, const char* name_a,
                                  const char* name_b, const char* out_json_path);

/* -------- bootstrap confidence regions -------- */

rdgeo_status rdgeo_bootstrap_run(const rdgeo_dataset* d, const rdgeo_model* model,
                                 const rdgeo_search_params* params, size_t n_resamples,
                                 double level, const double* fixed_latlon, size_t n_fixed,
                                 rdgeo_bootstrap** out);
size_t rdgeo_bootstrap_replicate_count(const rdgeo_bootstrap* b);
rdgeo_status rdgeo_bootstrap_center(const rdgeo_bootstrap* b, double* lat, double* lon);
rdgeo_status rdgeo_bootstrap_write_cloud_csv(const rdgeo_bootstrap* b, const char* path);
rdgeo_status rdgeo_bootstrap_write_ellipse_geojson(const rdgeo_bootstrap* b, const char* path);
rdgeo_status rdgeo_bootstrap_write_summary_json(const rdgeo_bootstrap* b, const char* path);
void rdgeo_bootstrap_free(rdgeo_bootstrap* b);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RDGEO_H */
