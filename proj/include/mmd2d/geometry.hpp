#pragma once

#include <span>
#include <vector>

#include "mmd2d/random.hpp"

namespace mmd2d {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point2D a, Point2D b);

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max], meters.
struct Region {
  double x_min = -5000.0;
  double y_min = -5000.0;
  double x_max = 5000.0;
  double y_max = 5000.0;

  double area() const { return (x_max - x_min) * (y_max - y_min); }
  void validate() const;

  /// Square of side `side_m` centered at the origin.
  static Region centered_square(double side_m);
};

/// Rectangular obstacle: `width` along its local x axis, `depth` along local y,
/// rotated by `orientation` about its center.
struct Blockage {
  Point2D center;
  double width = 0.0;
  double depth = 0.0;
  double orientation = 0.0;
};

struct BlockageSizeBounds {
  double min_m = 10.0;
  double max_m = 50.0;
  void validate() const;
};

/// LOS ball: transmitters within radius_m of the receiver are LOS and form a
/// PPP of density lambda_l (per m^2); everything beyond is ignored.
struct LosBall {
  double radius_m = 300.0;
  double lambda_l = 50e-6;
  void validate() const;
};

enum class LosMode { ball, blockage };

/// Homogeneous PPP on `region`: Poisson(intensity * area) points, i.i.d.
/// uniform locations.
std::vector<Point2D> sample_ppp(double intensity, const Region& region, RandomStream& rng);

/// Blockage centers from a PPP; width and depth i.i.d. uniform in `bounds`,
/// orientation uniform in [0, pi).
std::vector<Blockage> sample_blockages(double intensity, const Region& region,
                                       const BlockageSizeBounds& bounds, RandomStream& rng);

/// True iff segment (a, b) misses every blockage rectangle.
bool is_los(Point2D a, Point2D b, std::span<const Blockage> blockages);

/// Interferers seen by `receiver`.
///
/// ball: points within the ball radius, independently retained with
/// probability ball.lambda_l / parent_density (thinning).
/// blockage: points within the ball radius whose segment to the receiver is
/// LOS against `blockages`.
std::vector<Point2D> los_interferers(Point2D receiver, std::span<const Point2D> points,
                                     const LosBall& ball, double parent_density, LosMode mode,
                                     std::span<const Blockage> blockages, RandomStream& rng);

}  // namespace mmd2d
