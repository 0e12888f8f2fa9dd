#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mmd2d {

enum class Provenance { analytic, simulated };
enum class Abscissa { gamma_db, distance_m };

/// Coverage probability sampled along SINR thresholds (dB) or link distances.
struct CoverageCurve {
  Abscissa kind = Abscissa::gamma_db;
  std::vector<double> abscissa;
  std::vector<double> estimates;
  /// 95% interval; equal to the estimate for analytic curves.
  std::vector<double> ci_low;
  std::vector<double> ci_high;
  Provenance provenance = Provenance::analytic;
  std::uint64_t config_digest = 0;

  std::size_t size() const { return abscissa.size(); }
};

inline std::string to_string(Provenance p) {
  return p == Provenance::analytic ? "analytic" : "simulated";
}

}  // namespace mmd2d
