#include "mmd2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mmd2d/errors.hpp"

namespace mmd2d {

double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

void Region::validate() const {
  if (!(x_max > x_min && y_max > y_min)) throw ValidationError("region: degenerate rectangle");
}

Region Region::centered_square(double side_m) {
  const double h = 0.5 * side_m;
  return Region{-h, -h, h, h};
}

void BlockageSizeBounds::validate() const {
  if (!(min_m > 0.0 && max_m >= min_m)) {
    throw ValidationError("blockage size bounds: require 0 < min <= max");
  }
}

void LosBall::validate() const {
  if (!(radius_m > 0.0)) throw ValidationError("los ball: radius must be > 0");
  if (!(lambda_l >= 0.0)) throw ValidationError("los ball: lambda_l must be >= 0");
}

std::vector<Point2D> sample_ppp(double intensity, const Region& region, RandomStream& rng) {
  std::vector<Point2D> points;
  if (intensity <= 0.0) return points;
  const auto n = rng.poisson(intensity * region.area());
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = rng.uniform(region.x_min, region.x_max);
    const double y = rng.uniform(region.y_min, region.y_max);
    points.push_back({x, y});
  }
  return points;
}

std::vector<Blockage> sample_blockages(double intensity, const Region& region,
                                       const BlockageSizeBounds& bounds, RandomStream& rng) {
  std::vector<Blockage> blockages;
  if (intensity <= 0.0) return blockages;
  const auto n = rng.poisson(intensity * region.area());
  blockages.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Blockage b;
    b.center.x = rng.uniform(region.x_min, region.x_max);
    b.center.y = rng.uniform(region.y_min, region.y_max);
    b.width = rng.uniform(bounds.min_m, bounds.max_m);
    b.depth = rng.uniform(bounds.min_m, bounds.max_m);
    b.orientation = rng.uniform(0.0, std::numbers::pi);
    blockages.push_back(b);
  }
  return blockages;
}

namespace {

// Liang-Barsky clip of the segment p0 + t*d, t in [0, 1], against the box
// |x| <= hx, |y| <= hy in the blockage's local frame.
bool segment_hits_box(Point2D p0, Point2D d, double hx, double hy) {
  double t_enter = 0.0;
  double t_exit = 1.0;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {p0.x + hx, hx - p0.x, p0.y + hy, hy - p0.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t_enter = std::max(t_enter, t);
    } else {
      t_exit = std::min(t_exit, t);
    }
    if (t_enter > t_exit) return false;
  }
  return true;
}

Point2D to_local(Point2D p, const Blockage& b) {
  const double dx = p.x - b.center.x;
  const double dy = p.y - b.center.y;
  const double c = std::cos(b.orientation);
  const double s = std::sin(b.orientation);
  return {c * dx + s * dy, -s * dx + c * dy};
}

}  // namespace

bool is_los(Point2D a, Point2D b, std::span<const Blockage> blockages) {
  for (const auto& block : blockages) {
    const Point2D la = to_local(a, block);
    const Point2D lb = to_local(b, block);
    if (segment_hits_box(la, {lb.x - la.x, lb.y - la.y}, 0.5 * block.width, 0.5 * block.depth)) {
      return false;
    }
  }
  return true;
}

std::vector<Point2D> los_interferers(Point2D receiver, std::span<const Point2D> points,
                                     const LosBall& ball, double parent_density, LosMode mode,
                                     std::span<const Blockage> blockages, RandomStream& rng) {
  std::vector<Point2D> kept;
  if (points.empty()) return kept;

  const double r2 = ball.radius_m * ball.radius_m;
  auto inside = [&](Point2D p) {
    const double dx = p.x - receiver.x;
    const double dy = p.y - receiver.y;
    return dx * dx + dy * dy <= r2;
  };

  if (mode == LosMode::ball) {
    const double keep_probability =
        parent_density > 0.0 ? std::min(1.0, ball.lambda_l / parent_density) : 0.0;
    for (const auto& p : points) {
      if (!inside(p)) continue;
      // Always consume one draw per candidate so the thinning pattern does not
      // depend on keep_probability being exactly 1.
      if (rng.uniform01() < keep_probability) kept.push_back(p);
    }
    return kept;
  }

  // Only rectangles that can reach into the ball matter.
  std::vector<Blockage> nearby;
  for (const auto& b : blockages) {
    const double reach = ball.radius_m + 0.5 * std::hypot(b.width, b.depth);
    if (distance(b.center, receiver) <= reach) nearby.push_back(b);
  }
  for (const auto& p : points) {
    if (inside(p) && is_los(receiver, p, nearby)) kept.push_back(p);
  }
  return kept;
}

}  // namespace mmd2d
