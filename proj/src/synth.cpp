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

#include "rdgeo/synth.hpp"

#include <cmath>

#include "rdgeo/circular.hpp"

namespace rdgeo {

double bessel_i_ratio(double kappa) {
    if (kappa <= 0.0) return 0.0;
    // I1(x)/I0(x) = x / (2 + x^2 / (4 + x^2 / (6 + ...))), evaluated backward
    const int depth = 80;
    double cf = 2.0 * (depth + 1);
    for (int k = depth; k >= 1; --k) cf = 2.0 * k + kappa * kappa / cf;
    return kappa / cf;
}

double kappa_from_sigma(double sigma_deg) {
    if (!(sigma_deg > 0.0)) fail(errc::domain, "sigma must be positive");
    const double target = sigma_to_variance(sigma_deg); // 1 - I1/I0
    double lo = 0.0, hi = 1.0;
    while (1.0 - bessel_i_ratio(hi) > target && hi < 1e12) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (1.0 - bessel_i_ratio(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double sample_von_mises_deg(double kappa, Rng& rng) {
    if (kappa <= 0.0) return rng.uniform(-180.0, 180.0);
    // Best & Fisher wrapped-Cauchy envelope rejection
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
    const double r = (1.0 + rho * rho) / (2.0 * rho);
    for (;;) {
        const double u1 = rng.uniform();
        const double z = std::cos(M_PI * u1);
        const double f = (1.0 + r * z) / (r + z);
        const double c = kappa * (r - f);
        const double u2 = rng.uniform();
        if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
            const double u3 = rng.uniform();
            const double theta = (u3 < 0.5 ? -1.0 : 1.0) * std::acos(f);
            return theta * 180.0 / M_PI;
        }
    }
}

std::vector<Site> synth_sites(const SynthConfig& config) {
    if (!(config.sigma_deg > 0.0)) fail(errc::domain, "sigma_deg must be positive");
    if (config.sites_per_anchor < 0) fail(errc::invalid_argument, "sites_per_anchor must be >= 0");
    if (!(config.lat_min <= config.lat_max && config.lon_min <= config.lon_max))
        fail(errc::invalid_argument, "empty region box");

    std::vector<Site> sites;
    if (config.anchors.empty()) return sites;
    const double kappa = kappa_from_sigma(config.sigma_deg);

    int serial = 0;
    for (std::size_t a = 0; a < config.anchors.size(); ++a) {
        for (int i = 0; i < config.sites_per_anchor; ++i) {
            Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(serial)));
            Site s;
            s.id = "s" + std::to_string(serial);
            s.name = "synthetic " + std::to_string(serial) + " (anchor " + std::to_string(a) + ")";
            // rejection keeps the site clear of its anchor so the bearing exists
            for (;;) {
                s.location = GeoPoint(rng.uniform(config.lat_min, config.lat_max),
                                      rng.uniform(config.lon_min, config.lon_max));
                if (angular_separation_rad(s.location, config.anchors[a]) > 1e-6) break;
            }
            const double b = bearing(config.model, s.location, config.anchors[a]);
            s.orientation_deg = wrap_deg_360(b + sample_von_mises_deg(kappa, rng));
            sites.push_back(std::move(s));
            ++serial;
        }
    }
    return sites;
}

} // namespace rdgeo
