#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "coc/errors.hpp"
#include "coc/rational.hpp"

namespace coc {

/// Point of the circle, angle in turns, canonical representative in [0,1).
/// All circle arithmetic is exact rational: the integer cochains downstream
/// snap by exact floor/frac, never by rounding.
struct CirclePoint {
  Rational t;  // in [0,1)

  CirclePoint() = default;
  explicit CirclePoint(const Rational& v) : t(frac_lift(v)) {}
  bool operator==(const CirclePoint&) const = default;
};

/// Rotation by a rational number of turns; the only circle generator.
struct CircleRotation {
  Rational turns;
  bool operator==(const CircleRotation&) const = default;
};

/// A word in rotation generators.  Words are never simplified: cocycle
/// values must not depend on the representation, and tests check exactly
/// that.  Leftmost generator acts last (composition order).
struct CircleWord {
  struct Letter {
    CircleRotation gen;
    int exponent = 1;  // +1 or -1
    bool operator==(const Letter&) const = default;
  };
  std::vector<Letter> letters;

  bool operator==(const CircleWord&) const = default;

  static CircleWord identity() { return {}; }
  static CircleWord rotation(const Rational& turns) {
    CircleWord w;
    w.letters.push_back({CircleRotation{turns}, 1});
    return w;
  }

  /// Total signed rotation of the word (exact).
  Rational total_turns() const {
    Rational s = 0;
    for (const auto& l : letters)
      s += (l.exponent > 0) ? l.gen.turns : -l.gen.turns;
    return s;
  }
};

inline CircleWord compose(const CircleWord& u, const CircleWord& v) {
  CircleWord w = u;
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return w;
}

inline CircleWord invert(const CircleWord& w) {
  CircleWord inv;
  inv.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    inv.letters.push_back({it->gen, -it->exponent});
  return inv;
}

inline CirclePoint apply(const CircleWord& w, const CirclePoint& p) {
  Rational t = p.t;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    t += (it->exponent > 0) ? it->gen.turns : -it->gen.turns;
  return CirclePoint(t);
}

/// Derivative of the word at any point: rotations are translations in the
/// angle coordinate, so this is always 1.
inline Rational differential(const CircleWord&, const CirclePoint&) {
  return Rational(1);
}

// ---------------------------------------------------------------------------
// Simplices.  n = 1, so singular dimensions 0 and 1 suffice.

/// Base 1-simplex: traversal t |-> start + t*disp (in turns).  disp >= 0 for
/// arcs built by geodesic_arc (forward-arc convention); reversal negates it.
struct CircleArc {
  Rational start;  // lift of the initial point
  Rational disp;   // signed displacement
  bool operator==(const CircleArc&) const = default;
};

struct CircleSimplex {
  int dim = 0;
  CirclePoint point;  // dim 0: already evaluated, no prefix kept
  CircleArc arc;      // dim 1
  CircleWord prefix;  // dim 1 only
  bool operator==(const CircleSimplex&) const = default;
};

/// Circle geometry + group-action policy consumed by the generic chain and
/// zig-zag machinery.  Scalar arithmetic is exact.
class CircleGeometry {
 public:
  static constexpr int dimension = 1;  // n: top singular dimension
  using Scalar = Rational;
  using Point = CirclePoint;
  using Word = CircleWord;
  using Simplex = CircleSimplex;

  explicit CircleGeometry(CirclePoint basepoint = CirclePoint(Rational(0)))
      : basepoint_(basepoint) {}

  const CirclePoint& basepoint() const { return basepoint_; }

  static Simplex point_simplex(const CirclePoint& p) {
    Simplex s;
    s.dim = 0;
    s.point = p;
    return s;
  }

  /// Forward arc from a by the canonical displacement frac(b - a) in [0,1).
  static Simplex geodesic_arc(const CirclePoint& a, const CirclePoint& b) {
    Simplex s;
    s.dim = 1;
    s.arc = CircleArc{a.t, frac_lift(b.t - a.t)};
    return s;
  }

  /// Same image traversed backwards (negated displacement).
  static Simplex reversed(const Simplex& s);

  /// Left action.  Dim-0 simplices evaluate eagerly (a pushed-forward point
  /// is just a point); higher simplices prepend to the prefix word.
  static Simplex act(const Word& g, const Simplex& s);

  /// Alternating sum of faces as (coefficient, simplex) pairs.
  static std::vector<std::pair<std::int64_t, Simplex>> boundary_faces(
      const Simplex& s);

  /// Lifted traversal of a mapped arc: start in [0,1), signed displacement.
  static std::pair<Rational, Rational> lifted_range(const Simplex& s);

  /// Integral of the normalized volume form dt over a mapped 1-simplex:
  /// the signed displacement.  Exact.
  static Rational volume_integral(const Simplex& s);

  /// eta_bar in dimension 0: canonical lift frac(t) of the evaluated point.
  static Rational eta_bar_value(const Simplex& s);

  static std::string key(const Simplex& s);

  /// Evaluate the mapped simplex at barycentric parameter u (dim 1).
  static CirclePoint at(const Simplex& s, const Rational& u);

 private:
  CirclePoint basepoint_;
};

}  // namespace coc
