#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "capra/norms.hpp"
#include "capra/solver.hpp"

namespace capra {

struct BallSlicePoint {
  double theta = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  std::string ball;  // "primal" or "dual"
};

/// Boundary of the planar coordinate-k ball (and/or the dual coordinate-k
/// ball) at `resolution` equally spaced angles: u(theta) / N(u(theta)).
std::vector<BallSlicePoint> ball_slice(std::size_t k, const SourceNorm& src,
                                       std::size_t resolution, bool primal = true,
                                       bool dual = true, const SolverConfig& cfg = {});

/// CSV with header `theta,x1,x2,ball`, %.12g numbers and \n line ends.
std::string ball_slice_csv(const std::vector<BallSlicePoint>& points);

}  // namespace capra
