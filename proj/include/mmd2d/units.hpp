#pragma once

#include <cmath>
#include <numbers>

// All dB <-> linear conversions live here. Internal computation is in linear
// watts and radians.
namespace mmd2d::units {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

inline double per_km2_to_per_m2(double per_km2) { return per_km2 * 1e-6; }
inline double per_m2_to_per_km2(double per_m2) { return per_m2 * 1e6; }

inline double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace mmd2d::units
