#include "capra/ball_slice.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "capra/errors.hpp"

namespace capra {

std::vector<BallSlicePoint> ball_slice(std::size_t k, const SourceNorm& src,
                                       std::size_t resolution, bool primal, bool dual,
                                       const SolverConfig& cfg) {
  if (k < 1 || k > 2) throw InvalidArgument("ball_slice: k must be 1 or 2 in the plane");
  if (resolution == 0) throw InvalidArgument("ball_slice: resolution must be positive");
  std::vector<BallSlicePoint> out;
  auto sweep = [&](bool is_primal) {
    for (std::size_t j = 0; j < resolution; ++j) {
      const double theta = 2.0 * std::numbers::pi * double(j) / double(resolution);
      const Vector u{std::cos(theta), std::sin(theta)};
      const double g = is_primal ? coordinate_norm(u, k, src, cfg) : dual_coordinate_norm(u, k, src);
      out.push_back({theta, u[0] / g, u[1] / g, is_primal ? "primal" : "dual"});
    }
  };
  if (primal) sweep(true);
  if (dual) sweep(false);
  return out;
}

std::string ball_slice_csv(const std::vector<BallSlicePoint>& points) {
  std::string csv = "theta,x1,x2,ball\n";
  char buf[128];
  for (const BallSlicePoint& p : points) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,", p.theta, p.x1, p.x2);
    csv += buf;
    csv += p.ball;
    csv += '\n';
  }
  return csv;
}

}  // namespace capra
