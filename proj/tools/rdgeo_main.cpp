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

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdgeo.h"

namespace {

namespace fs = std::filesystem;

// exit codes: 0 ok, 1 input/data error, 2 numerical/convergence trouble
int exit_code_of(rdgeo_status s) {
    switch (s) {
    case RDGEO_OK: return 0;
    case RDGEO_ERR_IO:
    case RDGEO_ERR_PARSE:
    case RDGEO_ERR_VALIDATION:
    case RDGEO_ERR_EMPTY:
    case RDGEO_ERR_INVALID_ARG: return 1;
    default: return 2;
    }
}

[[noreturn]] void die(rdgeo_status s, const std::string& context) {
    std::fprintf(stderr, "rdgeo: %s: %s\n", context.c_str(), rdgeo_last_error());
    std::exit(exit_code_of(s));
}

void check(rdgeo_status s, const std::string& context) {
    if (s != RDGEO_OK) die(s, context);
}

struct CommonOpts {
    std::string input;
    std::string exclude;
    int year_before = -1;
    std::string model = "rhumb";
    std::string bisector_base = "rhumb";
    std::vector<double> anchor_a;
    std::vector<double> anchor_b;
    std::string out_dir = ".";
    rdgeo_search_params params{};
    std::vector<std::string> fix_points;
};

void add_model_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--model", o.model, "bearing model: great-circle|rhumb|bisector")
        ->check(CLI::IsMember({"great-circle", "rhumb", "bisector"}));
    cmd->add_option("--bisector-base", o.bisector_base,
                    "base model for bisector anchor bearings")
        ->check(CLI::IsMember({"great-circle", "rhumb"}));
    cmd->add_option("--anchor-a", o.anchor_a, "bisector anchor A as LAT LON")->expected(2);
    cmd->add_option("--anchor-b", o.anchor_b, "bisector anchor B as LAT LON")->expected(2);
}

void add_data_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--input", o.input, "site CSV (id,name,latitude,longitude,orientation,year_ce)")
        ->required();
    cmd->add_option("--exclude", o.exclude, "exclusion file, one site id per line");
    cmd->add_option("--year-before", o.year_before, "keep only sites dated before this year");
    cmd->add_option("--out", o.out_dir, "output directory");
}

void add_search_flags(CLI::App* cmd, CommonOpts& o, bool with_slope) {
    if (with_slope)
        cmd->add_option("--slope", o.params.slope, "rate-distortion slope (<= 0)")->required();
    cmd->add_option("--n-init", o.params.n_init, "number of Dirichlet restarts");
    cmd->add_option("--dirichlet-alpha", o.params.dirichlet_alpha, "Dirichlet concentration");
    cmd->add_option("--outer-tol", o.params.outer_tol, "outer stopping tolerance (nats)");
    cmd->add_option("--prune-weight", o.params.prune_weight, "prune points below this weight");
    cmd->add_option("--merge-distance", o.params.merge_distance,
                    "total-variation merge threshold");
    cmd->add_option("--max-outer-iters", o.params.max_outer_iters, "outer iteration cap");
    cmd->add_option("--seed", o.params.seed, "random seed (required, no implicit default)")
        ->required();
    cmd->add_option("--fix-point", o.fix_points, "frozen reconstruction point LAT,LON (repeatable)");
}

rdgeo_model make_model(const CommonOpts& o, const std::string& which) {
    rdgeo_model m;
    rdgeo_model_init(&m);
    const std::string& name = which.empty() ? o.model : which;
    if (name == "great-circle") {
        m.kind = RDGEO_MODEL_GREAT_CIRCLE;
    } else if (name == "rhumb") {
        m.kind = RDGEO_MODEL_RHUMB;
    } else if (name == "bisector") {
        m.kind = RDGEO_MODEL_BISECTOR;
        if (o.anchor_a.size() != 2 || o.anchor_b.size() != 2) {
            std::fprintf(stderr, "rdgeo: bisector model needs --anchor-a and --anchor-b\n");
            std::exit(1);
        }
        m.bisector_base = o.bisector_base == "great-circle" ? RDGEO_MODEL_GREAT_CIRCLE
                                                            : RDGEO_MODEL_RHUMB;
        m.anchor_a_lat = o.anchor_a[0];
        m.anchor_a_lon = o.anchor_a[1];
        m.anchor_b_lat = o.anchor_b[0];
        m.anchor_b_lon = o.anchor_b[1];
    } else {
        std::fprintf(stderr, "rdgeo: unknown model '%s'\n", name.c_str());
        std::exit(1);
    }
    return m;
}

std::vector<double> parse_fix_points(const std::vector<std::string>& specs) {
    std::vector<double> latlon;
    for (const auto& s : specs) {
        const auto comma = s.find(',');
        if (comma == std::string::npos) {
            std::fprintf(stderr, "rdgeo: --fix-point expects LAT,LON, got '%s'\n", s.c_str());
            std::exit(1);
        }
        try {
            latlon.push_back(std::stod(s.substr(0, comma)));
            latlon.push_back(std::stod(s.substr(comma + 1)));
        } catch (const std::exception&) {
            std::fprintf(stderr, "rdgeo: --fix-point expects LAT,LON, got '%s'\n", s.c_str());
            std::exit(1);
        }
    }
    return latlon;
}

using DatasetPtr = std::unique_ptr<rdgeo_dataset, decltype(&rdgeo_dataset_free)>;

DatasetPtr load_dataset(const CommonOpts& o) {
    rdgeo_dataset* d = nullptr;
    check(rdgeo_dataset_load(o.input.c_str(), o.exclude.empty() ? nullptr : o.exclude.c_str(),
                             o.year_before, &d),
          "loading " + o.input);
    if (rdgeo_dataset_size(d) == 0) {
        std::fprintf(stderr, "rdgeo: %s: no sites after filtering\n", o.input.c_str());
        rdgeo_dataset_free(d);
        std::exit(1);
    }
    return DatasetPtr(d, rdgeo_dataset_free);
}

std::string out_path(const CommonOpts& o, const char* name) {
    fs::create_directories(o.out_dir);
    return (fs::path(o.out_dir) / name).string();
}

std::vector<double> make_slopes(const std::vector<double>& list, double from, double to,
                                double step) {
    if (!list.empty()) return list;
    std::vector<double> slopes;
    if (step == 0.0 || (to - from) * step < 0.0) {
        std::fprintf(stderr, "rdgeo: bad slope range\n");
        std::exit(1);
    }
    const int n = static_cast<int>((to - from) / step) + 1;
    for (int i = 0; i < n; ++i) slopes.push_back(from + i * step);
    return slopes;
}

int run_compress(const CommonOpts& o, double support_threshold, int max_support) {
    const auto d = load_dataset(o);
    const rdgeo_model m = make_model(o, "");
    const auto fixed = parse_fix_points(o.fix_points);
    rdgeo_solution* sol = nullptr;
    const rdgeo_status st =
        rdgeo_compress(d.get(), &m, &o.params, fixed.empty() ? nullptr : fixed.data(),
                       fixed.size() / 2, &sol);
    if (st != RDGEO_OK) die(st, "compress");
    check(rdgeo_solution_write_json(sol, out_path(o, "solution.json").c_str()), "solution.json");
    check(rdgeo_classification_write_csv(sol, out_path(o, "classification.csv").c_str()),
          "classification.csv");
    check(rdgeo_outliers_write_json(sol, support_threshold, max_support,
                                    out_path(o, "outliers.json").c_str()),
          "outliers.json");
    check(rdgeo_solution_write_geojson(sol, out_path(o, "points.geojson").c_str()),
          "points.geojson");
    const int rc = rdgeo_solution_converged(sol) ? 0 : 2;
    if (rc != 0) std::fprintf(stderr, "rdgeo: warning: search hit the outer iteration cap\n");
    rdgeo_solution_free(sol);
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rate-distortion analysis of oriented geographic sites"};
    app.require_subcommand(1);

    CommonOpts o;
    rdgeo_search_params_init(&o.params);
    double support_threshold = 0.90;
    int max_support = 2;
    std::vector<double> slopes_list;
    double slope_from = 0.0, slope_to = 0.0, slope_step = 0.0;
    double geo_delta = 1.0, weight_cap = 0.01;
    std::string model_b = "great-circle";
    std::size_t n_resamples = 10000;
    double level = 0.95;
    std::string format = "csv";

    // synth options
    std::vector<double> synth_anchors;
    int sites_per_anchor = 30;
    double sigma_deg = 5.0;
    std::vector<double> region = {0.0, 30.0, 20.0, 50.0};
    std::string synth_out = "synthetic.csv";
    std::uint64_t synth_seed = 0;
    bool synth_seed_set = false;

    auto* compress = app.add_subcommand("compress", "solve at one slope, write solution tables");
    add_data_flags(compress, o);
    add_model_flags(compress, o);
    add_search_flags(compress, o, true);
    compress->add_option("--support-threshold", support_threshold, "outlier support threshold");
    compress->add_option("--max-support-count", max_support, "sites allowed to carry a point");

    auto* classify_cmd = app.add_subcommand("classify", "soft-classification table only");
    add_data_flags(classify_cmd, o);
    add_model_flags(classify_cmd, o);
    add_search_flags(classify_cmd, o, true);
    classify_cmd->add_option("--format", format, "csv|text")
        ->check(CLI::IsMember({"csv", "text"}));

    auto* curve = app.add_subcommand("curve", "slope sweep with bounds and bifurcation report");
    add_data_flags(curve, o);
    add_model_flags(curve, o);
    add_search_flags(curve, o, false);
    curve->add_option("--slopes", slopes_list, "explicit slope list");
    curve->add_option("--slope-from", slope_from, "sweep start slope");
    curve->add_option("--slope-to", slope_to, "sweep end slope");
    curve->add_option("--slope-step", slope_step, "sweep slope step");
    curve->add_option("--geo-delta", geo_delta, "bifurcation distance threshold (deg)");
    curve->add_option("--weight-cap", weight_cap, "bifurcation weight threshold");

    auto* compare = app.add_subcommand("compare-models", "best-compression model comparison");
    add_data_flags(compare, o);
    add_model_flags(compare, o);
    add_search_flags(compare, o, false);
    compare->add_option("--model-b", model_b, "second model: great-circle|rhumb|bisector")
        ->check(CLI::IsMember({"great-circle", "rhumb", "bisector"}));
    compare->add_option("--slopes", slopes_list, "explicit slope list");
    compare->add_option("--slope-from", slope_from, "sweep start slope");
    compare->add_option("--slope-to", slope_to, "sweep end slope");
    compare->add_option("--slope-step", slope_step, "sweep slope step");

    auto* bifurcation = app.add_subcommand("bifurcation-scan", "codebook splitting report");
    add_data_flags(bifurcation, o);
    add_model_flags(bifurcation, o);
    add_search_flags(bifurcation, o, false);
    bifurcation->add_option("--slopes", slopes_list, "explicit slope list");
    bifurcation->add_option("--slope-from", slope_from, "sweep start slope");
    bifurcation->add_option("--slope-to", slope_to, "sweep end slope");
    bifurcation->add_option("--slope-step", slope_step, "sweep slope step");
    bifurcation->add_option("--geo-delta", geo_delta, "bifurcation distance threshold (deg)");
    bifurcation->add_option("--weight-cap", weight_cap, "bifurcation weight threshold");

    auto* bootstrap = app.add_subcommand("bootstrap", "descriptive confidence region");
    add_data_flags(bootstrap, o);
    add_model_flags(bootstrap, o);
    add_search_flags(bootstrap, o, false);
    bootstrap->add_option("--slope", o.params.slope, "slope for frozen-anchor refinement");
    bootstrap->add_option("--n-resamples", n_resamples, "bootstrap resample count");
    bootstrap->add_option("--level", level, "confidence level in (0,1)");

    auto* synth = app.add_subcommand("synth", "generate a synthetic site CSV");
    synth->add_option("--anchor", synth_anchors, "anchor LAT LON (repeatable)")
        ->expected(-2)
        ->required();
    synth->add_option("--sites-per-anchor", sites_per_anchor, "sites per anchor");
    synth->add_option("--sigma", sigma_deg, "circular standard deviation of the noise (deg)");
    synth->add_option("--region", region, "box LAT_MIN LAT_MAX LON_MIN LON_MAX")->expected(4);
    synth->add_option("--model", o.model, "bearing model")
        ->check(CLI::IsMember({"great-circle", "rhumb"}));
    synth->add_option("--out-csv", synth_out, "output CSV path");
    synth->add_option("--seed", synth_seed, "random seed")->required()->each([&](const std::string&) {
        synth_seed_set = true;
    });

    CLI11_PARSE(app, argc, argv);

    if (compress->parsed()) return run_compress(o, support_threshold, max_support);

    if (classify_cmd->parsed()) {
        const auto d = load_dataset(o);
        const rdgeo_model m = make_model(o, "");
        const auto fixed = parse_fix_points(o.fix_points);
        rdgeo_solution* sol = nullptr;
        const rdgeo_status st =
            rdgeo_compress(d.get(), &m, &o.params, fixed.empty() ? nullptr : fixed.data(),
                           fixed.size() / 2, &sol);
        if (st != RDGEO_OK) die(st, "classify");
        if (format == "text")
            check(rdgeo_classification_write_text(sol, out_path(o, "classification.txt").c_str()),
                  "classification.txt");
        else
            check(rdgeo_classification_write_csv(sol, out_path(o, "classification.csv").c_str()),
                  "classification.csv");
        const int rc = rdgeo_solution_converged(sol) ? 0 : 2;
        rdgeo_solution_free(sol);
        return rc;
    }

    if (curve->parsed() || bifurcation->parsed()) {
        const auto d = load_dataset(o);
        const rdgeo_model m = make_model(o, "");
        const auto slopes = make_slopes(slopes_list, slope_from, slope_to, slope_step);
        rdgeo_curve* c = nullptr;
        check(rdgeo_sweep(d.get(), &m, &o.params, slopes.data(), slopes.size(), &c), "sweep");
        int rc = 0;
        check(rdgeo_curve_write_csv(c, out_path(o, "curve.csv").c_str()), "curve.csv");
        check(rdgeo_curve_write_bifurcations_json(c, geo_delta, weight_cap,
                                                  out_path(o, "bifurcations.json").c_str()),
              "bifurcations.json");
        if (curve->parsed()) {
            const rdgeo_status st =
                rdgeo_curve_write_bounds_json(c, out_path(o, "bounds.json").c_str());
            if (st != RDGEO_OK) {
                std::fprintf(stderr, "rdgeo: bounds.json: %s\n", rdgeo_last_error());
                rc = 2;
            }
        }
        rdgeo_curve_free(c);
        return rc;
    }

    if (compare->parsed()) {
        const auto d = load_dataset(o);
        const rdgeo_model ma = make_model(o, "");
        const rdgeo_model mb = make_model(o, model_b);
        const auto slopes = make_slopes(slopes_list, slope_from, slope_to, slope_step);
        check(rdgeo_compare_models(d.get(), &ma, &mb, &o.params, slopes.data(), slopes.size(),
                                   o.model.c_str(), model_b.c_str(),
                                   out_path(o, "comparison.json").c_str()),
              "compare-models");
        return 0;
    }

    if (bootstrap->parsed()) {
        const auto d = load_dataset(o);
        const rdgeo_model m = make_model(o, "");
        const auto fixed = parse_fix_points(o.fix_points);
        rdgeo_bootstrap* b = nullptr;
        check(rdgeo_bootstrap_run(d.get(), &m, &o.params, n_resamples, level,
                                  fixed.empty() ? nullptr : fixed.data(), fixed.size() / 2, &b),
              "bootstrap");
        check(rdgeo_bootstrap_write_cloud_csv(b, out_path(o, "cloud.csv").c_str()), "cloud.csv");
        check(rdgeo_bootstrap_write_ellipse_geojson(b, out_path(o, "ellipse.geojson").c_str()),
              "ellipse.geojson");
        check(rdgeo_bootstrap_write_summary_json(b, out_path(o, "summary.json").c_str()),
              "summary.json");
        rdgeo_bootstrap_free(b);
        return 0;
    }

    if (synth->parsed()) {
        (void)synth_seed_set;
        const rdgeo_model m = make_model(o, o.model);
        check(rdgeo_synth_write_csv(synth_out.c_str(), synth_anchors.data(),
                                    synth_anchors.size() / 2, sites_per_anchor, sigma_deg,
                                    region[0], region[1], region[2], region[3], &m, synth_seed),
              "synth");
        return 0;
    }

    return 1;
}
