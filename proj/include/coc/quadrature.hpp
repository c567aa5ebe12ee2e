#pragma once

#include <functional>
#include <span>
#include <vector>

#include "coc/errors.hpp"

namespace coc {

/// Gauss rule order plus uniform dyadic refinement controls.
/// Refinement stops when two successive levels agree to within tol.
struct QuadratureConfig {
  int order = 12;        // Gauss-Legendre points per cell (per axis in 2D)
  int max_depth = 10;    // dyadic levels; level d has 2^d (or 4^d) cells
  double tol = 1e-9;
};

/// Gauss-Legendre nodes/weights on [0,1].  Cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_rule(int order);

/// Integrate f over [0,1].  Deterministic for a fixed config.
/// Throws QuadratureNonConvergence if the dyadic estimates have not
/// settled below tol at max_depth.
double integrate_1d(const std::function<double(double)>& f,
                    const QuadratureConfig& cfg);

/// Integrate f over the unit square [0,1]^2 with tensor-product Gauss
/// cells and uniform dyadic refinement.
double integrate_2d(const std::function<double(double, double)>& f,
                    const QuadratureConfig& cfg);

}  // namespace coc
