#include "coc/circle.hpp"

#include <sstream>

namespace coc {

CircleSimplex CircleGeometry::reversed(const Simplex& s) {
  Simplex r = s;
  if (s.dim == 1) {
    r.arc.start = s.arc.start + s.arc.disp;
    r.arc.disp = -s.arc.disp;
  }
  return r;
}

CircleSimplex CircleGeometry::act(const Word& g, const Simplex& s) {
  Simplex out = s;
  if (s.dim == 0) {
    out.point = apply(g, s.point);
  } else {
    out.prefix = compose(g, s.prefix);
  }
  return out;
}

std::vector<std::pair<std::int64_t, CircleSimplex>>
CircleGeometry::boundary_faces(const Simplex& s) {
  if (s.dim < 1) throw DimensionMismatch("boundary of a 0-simplex");
  auto [start, disp] = lifted_range(s);
  std::vector<std::pair<std::int64_t, Simplex>> faces;
  faces.emplace_back(+1, point_simplex(CirclePoint(start + disp)));
  faces.emplace_back(-1, point_simplex(CirclePoint(start)));
  return faces;
}

std::pair<Rational, Rational> CircleGeometry::lifted_range(const Simplex& s) {
  if (s.dim != 1) throw DimensionMismatch("lifted_range needs a 1-simplex");
  Rational start = frac_lift(s.arc.start + s.prefix.total_turns());
  return {start, s.arc.disp};
}

Rational CircleGeometry::volume_integral(const Simplex& s) {
  return lifted_range(s).second;
}

Rational CircleGeometry::eta_bar_value(const Simplex& s) {
  if (s.dim != 0) throw DimensionMismatch("eta_bar on the circle is a 0-cochain");
  return s.point.t;  // already canonical in [0,1)
}

CirclePoint CircleGeometry::at(const Simplex& s, const Rational& u) {
  if (s.dim == 0) return s.point;
  auto [start, disp] = lifted_range(s);
  return CirclePoint(start + u * disp);
}

std::string CircleGeometry::key(const Simplex& s) {
  std::ostringstream os;
  os << s.dim << '|';
  if (s.dim == 0) {
    os << rational_to_string(s.point.t);
  } else {
    os << rational_to_string(s.arc.start) << ','
       << rational_to_string(s.arc.disp) << '|';
    for (const auto& l : s.prefix.letters)
      os << (l.exponent > 0 ? '+' : '-') << rational_to_string(l.gen.turns)
         << ';';
  }
  return os.str();
}

}  // namespace coc
