#include "coc/sphere.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

namespace coc {

namespace {

constexpr double kAntipodalTol = 1e-9;
constexpr double kDegenerateAngle = 1e-8;
const double kFourPi = 4.0 * std::numbers::pi;
const double kTwoPi = 2.0 * std::numbers::pi;

double horner(const std::vector<double>& coeffs, double z) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
  return v;
}

double horner_derivative(const std::vector<double>& coeffs, double z) {
  double v = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 1;)
    v = v * z + static_cast<double>(j) * coeffs[j];
  return v;
}

Mat3 rodrigues(const Vec3& u, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 ux;
  ux << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
  return c * Mat3::Identity() + s * ux + (1.0 - c) * (u * u.transpose());
}

// One letter of a word: image point and Jacobian at p.
std::pair<Vec3, Mat3> letter_jacobian(const SphereWord::Letter& l,
                                      const Vec3& p) {
  if (const auto* rot = std::get_if<AxisRotation>(&l.gen)) {
    const double angle = kTwoPi * rot->turns * l.exponent;
    Mat3 r = rodrigues(rot->axis, angle);
    return {unitize(r * p), r};
  }
  const auto& tw = std::get<Twist>(l.gen);
  const Vec3& u = tw.axis;
  const double z = u.dot(p);
  const double sign = static_cast<double>(l.exponent);
  const double angle = sign * kTwoPi * horner(tw.coeffs, z);
  const double dangle = sign * kTwoPi * horner_derivative(tw.coeffs, z);
  Mat3 r = rodrigues(u, angle);
  Vec3 rp = r * p;
  // d/dp [R(angle(z)) p] = R + angle'(z) * (u x Rp) u^T;  z = u.p is fixed
  // by the twist itself, so the formula is globally smooth (chart-free).
  Mat3 jac = r + dangle * (u.cross(rp)) * u.transpose();
  return {unitize(rp), jac};
}

Vec3 letter_apply(const SphereWord::Letter& l, const Vec3& p) {
  if (const auto* rot = std::get_if<AxisRotation>(&l.gen)) {
    const double angle = kTwoPi * rot->turns * l.exponent;
    return unitize(rodrigues(rot->axis, angle) * p);
  }
  const auto& tw = std::get<Twist>(l.gen);
  const double z = tw.axis.dot(p);
  const double angle = l.exponent * kTwoPi * horner(tw.coeffs, z);
  return unitize(rodrigues(tw.axis, angle) * p);
}

void append_hex(std::ostringstream& os, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof(bits));
  os << std::hex << bits << std::dec << ',';
}

void append_word(std::ostringstream& os, const SphereWord& w) {
  for (const auto& l : w.letters) {
    os << (l.exponent > 0 ? '+' : '-');
    if (const auto* rot = std::get_if<AxisRotation>(&l.gen)) {
      os << 'R';
      append_hex(os, rot->axis.x());
      append_hex(os, rot->axis.y());
      append_hex(os, rot->axis.z());
      append_hex(os, rot->turns);
    } else {
      const auto& tw = std::get<Twist>(l.gen);
      os << 'T';
      append_hex(os, tw.axis.x());
      append_hex(os, tw.axis.y());
      append_hex(os, tw.axis.z());
      for (double c : tw.coeffs) append_hex(os, c);
    }
    os << ';';
  }
}

}  // namespace

Vec3 unitize(const Vec3& v) {
  const double n = v.norm();
  if (n < 1e-14) throw GeometryError("cannot normalize a near-zero vector");
  return v / n;
}

double sphere_angle(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Vec3 slerp(const Vec3& a, const Vec3& b, double u) {
  if (u == 0.0) return a;
  if (u == 1.0) return b;
  if ((a + b).norm() < kAntipodalTol)
    throw AntipodalDegeneracy("no minimal geodesic between antipodal points");
  const double theta = sphere_angle(a, b);
  if (theta < kDegenerateAngle) return unitize((1.0 - u) * a + u * b);
  const double s = std::sin(theta);
  return (std::sin((1.0 - u) * theta) * a + std::sin(u * theta) * b) / s;
}

SphereWord SphereWord::rotation(const Vec3& axis, double turns) {
  SphereWord w;
  w.letters.push_back({AxisRotation{unitize(axis), turns}, 1});
  return w;
}

SphereWord SphereWord::twist(const Vec3& axis, std::vector<double> coeffs) {
  SphereWord w;
  w.letters.push_back({Twist{unitize(axis), std::move(coeffs)}, 1});
  return w;
}

SphereWord compose(const SphereWord& u, const SphereWord& v) {
  SphereWord w = u;
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return w;
}

SphereWord invert(const SphereWord& w) {
  SphereWord inv;
  inv.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    inv.letters.push_back({it->gen, -it->exponent});
  return inv;
}

Vec3 apply(const SphereWord& w, const Vec3& p) {
  Vec3 q = p;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    q = letter_apply(*it, q);
  return q;
}

std::pair<Vec3, Mat3> word_jacobian(const SphereWord& w, const Vec3& p) {
  Vec3 q = p;
  Mat3 jac = Mat3::Identity();
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    auto [q2, j] = letter_jacobian(*it, q);
    q = q2;
    jac = j * jac;
  }
  return {q, jac};
}

Mat3 word_differential(const SphereWord& w, const Vec3& p) {
  return word_jacobian(w, p).second;
}

// ---------------------------------------------------------------------------

SphereSimplex SphereGeometry::point_simplex(const Vec3& p) {
  Simplex s;
  s.dim = 0;
  s.point = p;
  return s;
}

SphereSimplex SphereGeometry::geodesic_arc(const Vec3& a, const Vec3& b) {
  if ((a + b).norm() < kAntipodalTol)
    throw AntipodalDegeneracy("geodesic_arc: endpoints are antipodal");
  Simplex s;
  s.dim = 1;
  s.arc = SphereArc{a, b};
  return s;
}

SphereSimplex SphereGeometry::cone_triangle(const Vec3& v0, const Vec3& v1,
                                            const Vec3& v2) {
  if ((v1 + v2).norm() < kAntipodalTol || (v0 + v2).norm() < kAntipodalTol ||
      (v0 + v1).norm() < kAntipodalTol)
    throw AntipodalDegeneracy("cone_triangle: antipodal vertex pair");
  Simplex s;
  s.dim = 2;
  s.cone = SphereCone{v0, MappedEdge{SphereArc{v1, v2}, SphereWord::identity()}};
  return s;
}

SphereSimplex SphereGeometry::cone_over(const Vec3& apex, const Simplex& edge) {
  if (edge.dim != 1) throw DimensionMismatch("cone_over needs a 1-simplex");
  Simplex s;
  s.dim = 2;
  s.cone = SphereCone{apex, MappedEdge{edge.arc, edge.prefix}};
  return s;
}

SphereSimplex SphereGeometry::reversed(const Simplex& s) {
  Simplex r = s;
  if (s.dim == 1) std::swap(r.arc.a, r.arc.b);
  if (s.dim == 2) std::swap(r.cone.edge.base.a, r.cone.edge.base.b);
  return r;
}

SphereSimplex SphereGeometry::act(const Word& g, const Simplex& s) {
  Simplex out = s;
  if (s.dim == 0) {
    out.point = apply(g, s.point);
  } else {
    out.prefix = compose(g, s.prefix);
  }
  return out;
}

std::vector<std::pair<std::int64_t, SphereSimplex>>
SphereGeometry::boundary_faces(const Simplex& s) {
  std::vector<std::pair<std::int64_t, Simplex>> faces;
  if (s.dim == 1) {
    // Endpoints evaluated through the prefix: dim-0 simplices carry no word.
    faces.emplace_back(+1, point_simplex(apply(s.prefix, s.arc.b)));
    faces.emplace_back(-1, point_simplex(apply(s.prefix, s.arc.a)));
    return faces;
  }
  if (s.dim == 2) {
    const SphereCone& c = s.cone;
    // Face 0 (opposite the apex): the stored edge, outer prefix composed in.
    Simplex edge;
    edge.dim = 1;
    edge.arc = c.edge.base;
    edge.prefix = compose(s.prefix, c.edge.prefix);
    // Side faces: geodesics from the apex to the edge endpoints, evaluated
    // through the edge prefix only (the outer prefix stays on the face).
    const Vec3 e0 = apply(c.edge.prefix, c.edge.base.a);
    const Vec3 e1 = apply(c.edge.prefix, c.edge.base.b);
    Simplex side1 = geodesic_arc(c.apex, e1);
    side1.prefix = s.prefix;
    Simplex side2 = geodesic_arc(c.apex, e0);
    side2.prefix = s.prefix;
    faces.emplace_back(+1, edge);
    faces.emplace_back(-1, side1);
    faces.emplace_back(+1, side2);
    return faces;
  }
  throw DimensionMismatch("boundary of a 0-simplex");
}

CurveSample SphereGeometry::curve_sample(const Simplex& s, double t) {
  if (s.dim != 1) throw DimensionMismatch("curve_sample needs a 1-simplex");
  const Vec3 &a = s.arc.a, &b = s.arc.b;
  if ((a + b).norm() < kAntipodalTol)
    throw AntipodalDegeneracy("curve through antipodal endpoints");
  const double theta = sphere_angle(a, b);
  Vec3 p, v;
  if (theta < kDegenerateAngle) {
    const Vec3 L = (1.0 - t) * a + t * b;
    const double n = L.norm();
    p = L / n;
    v = (Mat3::Identity() - p * p.transpose()) * (b - a) / n;
  } else {
    const double st = std::sin(theta);
    // Exact endpoints keep structurally equal simplices bitwise equal.
    if (t == 0.0)
      p = a;
    else if (t == 1.0)
      p = b;
    else
      p = (std::sin((1.0 - t) * theta) * a + std::sin(t * theta) * b) / st;
    v = theta * (-std::cos((1.0 - t) * theta) * a + std::cos(t * theta) * b) /
        st;
  }
  if (s.prefix.letters.empty()) return {p, v};
  auto [q, jac] = word_jacobian(s.prefix, p);
  return {q, jac * v};
}

SurfaceSample SphereGeometry::surface_sample(const Simplex& s, double u,
                                             double t) {
  if (s.dim != 2) throw DimensionMismatch("surface_sample needs a 2-simplex");
  const SphereCone& c = s.cone;

  // Edge curve through its own prefix.
  Simplex edge;
  edge.dim = 1;
  edge.arc = c.edge.base;
  edge.prefix = c.edge.prefix;
  CurveSample e = curve_sample(edge, t);

  const Vec3& A = c.apex;
  if ((A + e.p).norm() < kAntipodalTol)
    throw AntipodalDegeneracy("cone edge passes through the apex antipode");
  const double theta = sphere_angle(A, e.p);

  Vec3 F, Fu, Ft;
  if (theta < kDegenerateAngle) {
    const Vec3 L = (1.0 - u) * A + u * e.p;
    const double n = L.norm();
    F = L / n;
    const Mat3 proj = (Mat3::Identity() - F * F.transpose()) / n;
    Fu = proj * (e.p - A);
    Ft = proj * (u * e.v);
  } else {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double su0 = std::sin((1.0 - u) * theta);
    const double su1 = std::sin(u * theta);
    const double cu0 = std::cos((1.0 - u) * theta);
    const double cu1 = std::cos(u * theta);
    F = (su0 * A + su1 * e.p) / st;
    Fu = theta * (-cu0 * A + cu1 * e.p) / st;
    const double dtheta = -A.dot(e.v) / st;
    const double ds0 = ((1.0 - u) * cu0 * st - su0 * ct) / (st * st);
    const double ds1 = (u * cu1 * st - su1 * ct) / (st * st);
    Ft = dtheta * (ds0 * A + ds1 * e.p) + (su1 / st) * e.v;
  }

  if (s.prefix.letters.empty()) return {F, Fu, Ft};
  auto [q, jac] = word_jacobian(s.prefix, F);
  return {q, jac * Fu, jac * Ft};
}

Vec3 SphereGeometry::at(const Simplex& s, double u, double t) {
  if (s.dim == 0) return s.point;
  if (s.dim == 1) return curve_sample(s, u).p;
  return surface_sample(s, u, t).p;
}

namespace {

// Minimum distance from a parametrized curve to a target point: coarse
// sampling plus ternary refinement around every local minimum.  Curves that
// pass exactly through the primitive's pole have finite-looking integrands
// at quadrature nodes but integrate to a spurious half period, so proximity
// must be detected from the geometry, not from node values.
double refined_min_distance(const std::function<Vec3(double)>& pt,
                            const Vec3& target) {
  constexpr int kSamples = 48;
  std::array<double, kSamples + 1> d;
  for (int i = 0; i <= kSamples; ++i)
    d[i] = (pt(static_cast<double>(i) / kSamples) - target).norm();
  double best = d[0];
  for (int i = 0; i <= kSamples; ++i) best = std::min(best, d[i]);
  auto dist = [&](double t) { return (pt(t) - target).norm(); };
  for (int i = 0; i <= kSamples; ++i) {
    const bool left_ok = (i == 0) || d[i] <= d[i - 1];
    const bool right_ok = (i == kSamples) || d[i] <= d[i + 1];
    if (!(left_ok && right_ok)) continue;
    double lo = static_cast<double>(std::max(i - 1, 0)) / kSamples;
    double hi = static_cast<double>(std::min(i + 1, kSamples)) / kSamples;
    for (int it = 0; it < 60; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (dist(m1) < dist(m2))
        hi = m2;
      else
        lo = m1;
    }
    best = std::min(best, dist(0.5 * (lo + hi)));
  }
  return best;
}

}  // namespace

double SphereGeometry::alpha_form(const Vec3& p, const Vec3& v) const {
  const Vec3 n = -conv_.pole;
  const double denom = 1.0 + n.dot(p);
  if (2.0 * denom < conv_.epsilon_pole * conv_.epsilon_pole)
    throw PoleProximity("evaluation point within epsilon_pole of the pole");
  return n.dot(p.cross(v)) / (kFourPi * denom);
}

QuadratureConfig SphereGeometry::quad_2d() const {
  QuadratureConfig q = conv_.quadrature;
  // 4^d cells: cap the dyadic depth so a non-converging surface integral
  // fails fast instead of exhausting memory-bandwidth for minutes.
  if (q.max_depth > 7) q.max_depth = 7;
  return q;
}

double SphereGeometry::volume_integral(const Simplex& s) const {
  if (s.dim != 2)
    throw DimensionMismatch("volume_integral needs a 2-simplex");
  const double sign = conv_.orientation_sign;
  auto f = [&](double u, double t) {
    SurfaceSample smp = surface_sample(s, u, t);
    return sign * smp.p.dot(smp.du.cross(smp.dt)) / kFourPi;
  };
  return integrate_2d(f, quad_2d());
}

void SphereGeometry::require_pole_clearance(const Simplex& s,
                                            const Word* extra) const {
  if (s.dim != 1) throw DimensionMismatch("pole clearance needs a 1-simplex");
  auto pt = [&](double t) {
    const Vec3 p = curve_sample(s, t).p;
    return extra ? apply(*extra, p) : p;
  };
  if (refined_min_distance(pt, conv_.pole) < conv_.epsilon_pole)
    throw PoleProximity("curve passes within epsilon_pole of the pole");
}

double SphereGeometry::alpha_integral(const Simplex& s) const {
  if (s.dim != 1) throw DimensionMismatch("alpha_integral needs a 1-simplex");
  require_pole_clearance(s);
  auto f = [&](double t) {
    CurveSample smp = curve_sample(s, t);
    return alpha_form(smp.p, smp.v);
  };
  return integrate_1d(f, quad_1d());
}

double SphereGeometry::beta_integral(const Word& g, const Simplex& s) const {
  if (s.dim != 1) throw DimensionMismatch("beta_integral needs a 1-simplex");
  require_pole_clearance(s);
  require_pole_clearance(s, &g);
  auto f = [&](double t) {
    CurveSample smp = curve_sample(s, t);
    auto [q, jac] = word_jacobian(g, smp.p);
    return alpha_form(q, jac * smp.v) - alpha_form(smp.p, smp.v);
  };
  return integrate_1d(f, quad_1d());
}

std::vector<SphereSimplex> octahedral_triangulation(const Mat3& frame) {
  std::vector<SphereSimplex> faces;
  faces.reserve(8);
  const Vec3 f0 = frame.col(0), f1 = frame.col(1), f2 = frame.col(2);
  for (int s0 : {1, -1})
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        Vec3 a = s0 * f0, b = s1 * f1, c = s2 * f2;
        if (s0 * s1 * s2 < 0) std::swap(b, c);  // keep outward orientation
        faces.push_back(SphereGeometry::cone_triangle(a, b, c));
      }
  return faces;
}

Mat3 generic_octahedral_frame() {
  return rodrigues(unitize(Vec3(1.0, 2.0, 3.0)), kTwoPi * 0.1);
}

std::string SphereGeometry::key(const Simplex& s) {
  std::ostringstream os;
  os << s.dim << '|';
  if (s.dim == 0) {
    append_hex(os, s.point.x());
    append_hex(os, s.point.y());
    append_hex(os, s.point.z());
    return os.str();
  }
  if (s.dim == 1) {
    append_hex(os, s.arc.a.x());
    append_hex(os, s.arc.a.y());
    append_hex(os, s.arc.a.z());
    append_hex(os, s.arc.b.x());
    append_hex(os, s.arc.b.y());
    append_hex(os, s.arc.b.z());
  } else {
    append_hex(os, s.cone.apex.x());
    append_hex(os, s.cone.apex.y());
    append_hex(os, s.cone.apex.z());
    append_hex(os, s.cone.edge.base.a.x());
    append_hex(os, s.cone.edge.base.a.y());
    append_hex(os, s.cone.edge.base.a.z());
    append_hex(os, s.cone.edge.base.b.x());
    append_hex(os, s.cone.edge.base.b.y());
    append_hex(os, s.cone.edge.base.b.z());
    os << '|';
    append_word(os, s.cone.edge.prefix);
  }
  os << '|';
  append_word(os, s.prefix);
  return os.str();
}

}  // namespace coc
