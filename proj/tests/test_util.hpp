#pragma once

#include "coc/cocycles.hpp"
#include "coc/config.hpp"

namespace coctest {

using namespace coc;

inline Config circle_config() { return default_config("circle"); }
inline Config sphere_config() { return default_config("sphere"); }

/// Sphere config with a tilted pole: coordinate-axis half turns send the
/// arc midpoints to the +-axes, so pairing with klein4 needs the pole off
/// every coordinate axis.
inline Config tilted_pole_config() {
  Config cfg = default_config("sphere");
  cfg.pole = unitize(Vec3(-1.0, -2.0, -3.0));
  return cfg;
}

inline Cocycles<CircleGeometry> circle_system() {
  const Config cfg = circle_config();
  return Cocycles<CircleGeometry>{
      Zigzag<CircleGeometry>(cfg.circle_geometry(), cfg.snap_tol)};
}

inline Cocycles<SphereGeometry> sphere_system(const Config& cfg) {
  return Cocycles<SphereGeometry>{
      Zigzag<SphereGeometry>(cfg.sphere_geometry(), cfg.snap_tol)};
}

inline Cocycles<SphereGeometry> sphere_system() {
  return sphere_system(sphere_config());
}

/// Spherical triangle solid angle from side lengths (angle-excess formula);
/// the independent oracle for volume integrals of geodesic triangles.
inline double lhuilier_excess(double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  const double t = std::tan(0.5 * s) * std::tan(0.5 * (s - a)) *
                   std::tan(0.5 * (s - b)) * std::tan(0.5 * (s - c));
  return 4.0 * std::atan(std::sqrt(std::max(0.0, t)));
}

}  // namespace coctest
