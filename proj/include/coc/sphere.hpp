#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "coc/errors.hpp"
#include "coc/quadrature.hpp"

namespace coc {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Normalize to the unit sphere; every constructed point goes through this.
Vec3 unitize(const Vec3& v);

/// Robust angle between unit vectors, accurate near 0 and pi.
double sphere_angle(const Vec3& a, const Vec3& b);

/// Constant-speed minimal geodesic; exact endpoints at u = 0, 1.
/// Throws AntipodalDegeneracy if |a+b| < 1e-9.
Vec3 slerp(const Vec3& a, const Vec3& b, double u);

// ---------------------------------------------------------------------------
// Generators and words

/// Rotation about a fixed axis; angle in turns.
struct AxisRotation {
  Vec3 axis;      // unit
  double turns;
};

/// Area-preserving twist about an axis: in cylindrical coordinates (z, phi)
/// about the axis it is (z, phi) |-> (z, phi + 2*pi*h(z)) with h a
/// polynomial in the axial coordinate z in [-1,1].  Area is proportional to
/// dz ^ dphi, so the twist preserves it for any profile.
struct Twist {
  Vec3 axis;                   // unit
  std::vector<double> coeffs;  // h(z) = sum coeffs[j] * z^j, in turns
};

using SphereGenerator = std::variant<AxisRotation, Twist>;

/// Word in closed-form generators; leftmost letter acts last.  Words are
/// kept as written: no cancellation, values must not depend on spelling.
struct SphereWord {
  struct Letter {
    SphereGenerator gen;
    int exponent = 1;
  };
  std::vector<Letter> letters;

  static SphereWord identity() { return {}; }
  static SphereWord rotation(const Vec3& axis, double turns);
  static SphereWord twist(const Vec3& axis, std::vector<double> coeffs);
};

SphereWord compose(const SphereWord& u, const SphereWord& v);
SphereWord invert(const SphereWord& w);

Vec3 apply(const SphereWord& w, const Vec3& p);

/// Image point together with the chain-rule Jacobian of the word at p.
std::pair<Vec3, Mat3> word_jacobian(const SphereWord& w, const Vec3& p);

/// Jacobian only (tangent-space linear map as a 3x3 matrix).
Mat3 word_differential(const SphereWord& w, const Vec3& p);

// ---------------------------------------------------------------------------
// Simplices

/// Base 1-simplex: minimal geodesic between non-antipodal endpoints.
struct SphereArc {
  Vec3 a, b;
};

/// Edge curve of a cone: a base geodesic pushed through a word.  Cones must
/// carry the mapped edge itself (not just its endpoints) so that their
/// boundary reproduces translated arcs term by term.
struct MappedEdge {
  SphereArc base;
  SphereWord prefix;
};

/// Base 2-simplex: geodesic cone from the apex (vertex 0) over the edge.
struct SphereCone {
  Vec3 apex;
  MappedEdge edge;
};

struct SphereSimplex {
  int dim = 0;
  Vec3 point = Vec3::Zero();  // dim 0: evaluated point, no prefix kept
  SphereArc arc{};            // dim 1
  SphereCone cone{};          // dim 2
  SphereWord prefix{};        // dims 1 and 2
};

/// Point and velocity of a mapped 1-simplex at parameter t.
struct CurveSample {
  Vec3 p;
  Vec3 v;
};

/// Point and the two coordinate partials of a mapped 2-simplex at (u, t).
struct SurfaceSample {
  Vec3 p;
  Vec3 du;
  Vec3 dt;
};

/// Fixed branch structure for the primitive 1-form: alpha is smooth away
/// from the pole P, has unit period around P, and d(alpha) equals the
/// normalized volume form.  With n = -P:
///   alpha_p(v) = n . (p x v) / (4*pi*(1 + n . p)).
struct FormConventions {
  Vec3 pole = Vec3(0, 0, -1);
  double orientation_sign = 1.0;  // outward orientation of S^2
  QuadratureConfig quadrature{};
  double epsilon_pole = 1e-6;
};

/// Sphere geometry bundle: conventions + basepoint + all form integrals.
/// Immutable after construction; every operation is pure given the config.
class SphereGeometry {
 public:
  static constexpr int dimension = 2;
  using Scalar = double;
  using Point = Vec3;
  using Word = SphereWord;
  using Simplex = SphereSimplex;

  explicit SphereGeometry(FormConventions conv = {},
                          Vec3 basepoint = Vec3(0.48, 0.64, 0.60))
      : conv_(conv), basepoint_(unitize(basepoint)) {}

  const Vec3& basepoint() const { return basepoint_; }
  const FormConventions& conventions() const { return conv_; }

  static Simplex point_simplex(const Vec3& p);

  /// Minimal geodesic a -> b.  AntipodalDegeneracy if |a+b| < 1e-9.
  static Simplex geodesic_arc(const Vec3& a, const Vec3& b);

  /// Geodesic cone from v0 over the geodesic arc v1 -> v2; boundary is
  /// arc(v1,v2) - arc(v0,v2) + arc(v0,v1).
  static Simplex cone_triangle(const Vec3& v0, const Vec3& v1, const Vec3& v2);

  /// Cone from the apex over an arbitrary mapped 1-simplex (the general
  /// form needed so that boundaries match translated arcs structurally).
  static Simplex cone_over(const Vec3& apex, const Simplex& edge);

  static Simplex reversed(const Simplex& s);
  static Simplex act(const Word& g, const Simplex& s);
  static std::vector<std::pair<std::int64_t, Simplex>> boundary_faces(
      const Simplex& s);

  static CurveSample curve_sample(const Simplex& s, double t);
  static SurfaceSample surface_sample(const Simplex& s, double u, double t);
  static Vec3 at(const Simplex& s, double u, double t = 0.0);

  /// alpha_p(v); throws PoleProximity within epsilon_pole of the pole.
  double alpha_form(const Vec3& p, const Vec3& v) const;

  /// Hard error unless the (optionally word-mapped) curve keeps distance
  /// epsilon_pole from the pole along its whole length.
  void require_pole_clearance(const Simplex& s, const Word* extra = nullptr) const;

  /// Integral of the normalized volume form over a mapped 2-simplex.
  double volume_integral(const Simplex& s) const;

  /// Line integral of alpha along a mapped 1-simplex.
  double alpha_integral(const Simplex& s) const;

  /// Line integral of g^*alpha - alpha along a mapped 1-simplex (single
  /// combined quadrature).
  double beta_integral(const Word& g, const Simplex& s) const;

  /// eta_bar in dimension n-1 = 1: the alpha line integral.
  double eta_bar_value(const Simplex& s) const { return alpha_integral(s); }

  static std::string key(const Simplex& s);

  double epsilon_pole() const { return conv_.epsilon_pole; }

 private:
  QuadratureConfig quad_1d() const { return conv_.quadrature; }
  QuadratureConfig quad_2d() const;

  FormConventions conv_;
  Vec3 basepoint_;
};

/// Octahedron inscribed in the given rotation frame: eight geodesic cone
/// triangles, all oriented outward, covering the sphere.
std::vector<SphereSimplex> octahedral_triangulation(const Mat3& frame);

/// A fixed generic rotation whose octahedron keeps every vertex and edge
/// well away from the default pole (0,0,-1).
Mat3 generic_octahedral_frame();

}  // namespace coc
