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

#include "rdgeo/geodesy.hpp"

#include <array>
#include <cmath>

namespace rdgeo {

namespace {

constexpr double kDegToRad = M_PI / 180.0;
constexpr double kRadToDeg = 180.0 / M_PI;

using Vec3 = std::array<double, 3>;

Vec3 to_unit(const GeoPoint& p) {
    const double lat = p.lat * kDegToRad;
    const double lon = p.lon * kDegToRad;
    return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

} // namespace

double wrap_deg_360(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    if (r >= 360.0) r = 0.0; // fmod can land exactly on 360 after the add
    return r;
}

double wrap_deg_180(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r > 180.0) r -= 360.0;
    if (r <= -180.0) r += 360.0;
    return r;
}

double wrap_lon(double deg) { return wrap_deg_180(deg); }

GeoPoint::GeoPoint(double lat_deg, double lon_deg) {
    if (!(lat_deg >= -90.0 && lat_deg <= 90.0))
        fail(errc::validation, "latitude out of range [-90, 90]: " + std::to_string(lat_deg));
    if (!std::isfinite(lon_deg))
        fail(errc::validation, "longitude is not finite");
    lat = lat_deg;
    lon = wrap_lon(lon_deg);
}

BearingModel BearingModel::bisector(GeoPoint a, GeoPoint b, ModelKind base) {
    if (base == ModelKind::Bisector)
        fail(errc::invalid_argument, "bisector base model must be great-circle or rhumb");
    if (angular_separation_rad(a, b) < kCoincidenceTolRad)
        fail(errc::coincident_points, "bisector anchors coincide");
    BearingModel m;
    m.kind = ModelKind::Bisector;
    m.bisector_base = base;
    m.anchor_a = a;
    m.anchor_b = b;
    return m;
}

double angular_separation_rad(const GeoPoint& a, const GeoPoint& b) {
    const Vec3 u = to_unit(a);
    const Vec3 v = to_unit(b);
    // atan2 form is accurate for both tiny and near-antipodal separations
    return std::atan2(norm(cross(u, v)), dot(u, v));
}

double great_circle_bearing(const GeoPoint& from, const GeoPoint& to) {
    if (angular_separation_rad(from, to) < kCoincidenceTolRad)
        fail(errc::coincident_points, "bearing undefined between coincident points");

    const Vec3 a = to_unit(from);
    const Vec3 b = to_unit(to);
    constexpr Vec3 pole = {0.0, 0.0, 1.0};

    // Local frame at `from`; at the poles east/north degenerate together with
    // the azimuth itself, which the separation check does not exclude, so the
    // tangent is taken toward the target's meridian plane instead.
    Vec3 east = cross(pole, a);
    const double east_len = norm(east);
    if (east_len < 1e-15) {
        // from is a pole: every direction is south (or north); report the
        // azimuth measured along the target meridian, the usual convention.
        return from.lat > 0.0 ? wrap_deg_360(180.0) : 0.0;
    }
    for (auto& c : east) c /= east_len;
    const Vec3 north = cross(a, east);

    const Vec3 t = cross(cross(a, b), a); // tangent at `from` toward `to`
    return wrap_deg_360(std::atan2(dot(t, east), dot(t, north)) * kRadToDeg);
}

double rhumb_bearing(const GeoPoint& from, const GeoPoint& to) {
    if (angular_separation_rad(from, to) < kCoincidenceTolRad)
        fail(errc::coincident_points, "bearing undefined between coincident points");
    if (std::fabs(from.lat) >= 90.0 || std::fabs(to.lat) >= 90.0)
        fail(errc::pole_undefined, "rhumb bearing undefined at a pole");

    // Mercator ordinate via the inverse Gudermannian.
    const double psi1 = std::atanh(std::sin(from.lat * kDegToRad));
    const double psi2 = std::atanh(std::sin(to.lat * kDegToRad));
    const double dlon = wrap_deg_180(to.lon - from.lon) * kDegToRad;
    return wrap_deg_360(std::atan2(dlon, psi2 - psi1) * kRadToDeg);
}

double bisect_bearings(double bearing_a_deg, double bearing_b_deg) {
    const double diff = wrap_deg_180(bearing_b_deg - bearing_a_deg);
    if (std::fabs(std::fabs(diff) - 180.0) < kAntipodalTolDeg)
        fail(errc::antipodal_bearings, "bisector of opposite bearings is ambiguous");
    return wrap_deg_360(bearing_a_deg + diff / 2.0);
}

double bisector_bearing(const GeoPoint& from, const BearingModel& model) {
    const auto base = [&](const GeoPoint& anchor) {
        return model.bisector_base == ModelKind::GreatCircle ? great_circle_bearing(from, anchor)
                                                             : rhumb_bearing(from, anchor);
    };
    return bisect_bearings(base(model.anchor_a), base(model.anchor_b));
}

double bearing(const BearingModel& model, const GeoPoint& from, const GeoPoint& to) {
    switch (model.kind) {
    case ModelKind::GreatCircle: return great_circle_bearing(from, to);
    case ModelKind::RhumbLine: return rhumb_bearing(from, to);
    case ModelKind::Bisector: return bisector_bearing(from, model);
    }
    fail(errc::invalid_argument, "unknown bearing model");
}

} // namespace rdgeo
