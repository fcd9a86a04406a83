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

#include "rdgeo/error.hpp"

namespace rdgeo {

/// Two points closer than this (radians of central angle) are treated as
/// coincident; bearings between them are refused.
inline constexpr double kCoincidenceTolRad = 1e-9;

/// Two bearings within this many degrees of opposite make a bisector
/// ambiguous.
inline constexpr double kAntipodalTolDeg = 1e-9;

double wrap_deg_360(double deg);   // into [0, 360)
double wrap_deg_180(double deg);   // into (-180, 180]
double wrap_lon(double deg);       // alias of wrap_deg_180

/// Point on the unit sphere, degrees. Latitude is validated, longitude is
/// normalized into (-180, 180] on construction.
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;

    GeoPoint() = default;
    GeoPoint(double lat_deg, double lon_deg);
};

enum class ModelKind { GreatCircle, RhumbLine, Bisector };

/// Bearing model: how a site's reference bearing toward a target is computed.
/// The bisector variant assigns each site the half-angle between its bearings
/// to two fixed anchors; the base model for those two bearings defaults to
/// rhumb lines.
struct BearingModel {
    ModelKind kind = ModelKind::RhumbLine;
    ModelKind bisector_base = ModelKind::RhumbLine;
    GeoPoint anchor_a;
    GeoPoint anchor_b;

    static BearingModel great_circle() { return BearingModel{ModelKind::GreatCircle}; }
    static BearingModel rhumb() { return BearingModel{ModelKind::RhumbLine}; }
    static BearingModel bisector(GeoPoint a, GeoPoint b,
                                 ModelKind base = ModelKind::RhumbLine);
};

/// Central angle between two points, radians.
double angular_separation_rad(const GeoPoint& a, const GeoPoint& b);

/// Initial geodesic azimuth from -> to, degrees clockwise from north in
/// [0, 360). Throws CoincidentPoints when the separation is below tolerance.
double great_circle_bearing(const GeoPoint& from, const GeoPoint& to);

/// Constant loxodrome azimuth from -> to with the longitude difference taken
/// along the shorter wrap. Throws CoincidentPoints or PoleUndefined.
double rhumb_bearing(const GeoPoint& from, const GeoPoint& to);

/// Bisector of two bearings along the smaller enclosed arc. Throws
/// AntipodalBearings when they are opposite within tolerance.
double bisect_bearings(double bearing_a_deg, double bearing_b_deg);

/// Bearing a bisector model assigns to `from` (independent of any target).
double bisector_bearing(const GeoPoint& from, const BearingModel& model);

/// Model dispatch: the reference bearing from a site toward a reconstruction
/// point. For bisector models the target is ignored by construction.
double bearing(const BearingModel& model, const GeoPoint& from, const GeoPoint& to);

} // namespace rdgeo
