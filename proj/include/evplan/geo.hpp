#pragma once

#include <cmath>

#include "evplan/common.hpp"

namespace evplan {

/// Mean Earth radius in meters used by all distance computations.
inline constexpr double kEarthRadiusM = 6371000.0;

/// WGS-84 coordinate pair in degrees.
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;

    bool operator==(const GeoPoint&) const = default;
};

inline void validate_geo_point(const GeoPoint& p, const char* where) {
    if (!(p.lat >= -90.0 && p.lat <= 90.0)) {
        throw ValidationError(std::string(where) + ": latitude out of range [-90, 90]");
    }
    if (!(p.lon >= -180.0 && p.lon <= 180.0)) {
        throw ValidationError(std::string(where) + ": longitude out of range [-180, 180]");
    }
}

/// Great-circle (haversine) distance in meters.
inline double haversine_m(const GeoPoint& a, const GeoPoint& b) {
    const double deg = 0.017453292519943295;  // pi / 180
    const double lat1 = a.lat * deg;
    const double lat2 = b.lat * deg;
    const double dlat = (b.lat - a.lat) * deg;
    const double dlon = (b.lon - a.lon) * deg;
    const double s1 = std::sin(dlat / 2.0);
    const double s2 = std::sin(dlon / 2.0);
    const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::min(1.0, h)));
}

}  // namespace evplan
