#pragma once

#include <cmath>
#include <vector>

#include "coc/chains.hpp"
#include "coc/circle.hpp"
#include "coc/rational.hpp"
#include "coc/sphere.hpp"

namespace coc {

// ---------------------------------------------------------------------------
// Integer snapping

struct SnappedInt {
  long long value = 0;
  double residual = 0.0;
};

inline SnappedInt snap_to_integer(double raw, double tol) {
  const double nearest = std::nearbyint(raw);
  const double res = std::abs(raw - nearest);
  if (!(res <= tol))
    throw SnapFailure("value does not snap to an integer", raw, res);
  return {static_cast<long long>(nearest), res};
}

inline SnappedInt snap_to_integer(const Rational& raw, double tol) {
  const Integer nearest = rational_floor(raw + Rational(1, 2));
  const Rational res = boost::multiprecision::abs(raw - Rational(nearest));
  const double res_d = to_double(res);
  if (!(res_d <= tol))
    throw SnapFailure("value does not snap to an integer", to_double(raw),
                      res_d);
  return {nearest.convert_to<long long>(), res_d};
}

// ---------------------------------------------------------------------------
// Choice data for the zig-zag.
//
// Chain side (left modules), basepoint x:
//   delta_0         = x
//   delta_1(g)      = geodesic arc  x -> g.x
//   delta_2(g1,g2)  = cone from x over g1.(arc x -> g2.x)
// so that (group coboundary of delta_k) = (simplicial boundary of
// delta_{k+1}) holds term by term, structurally.
//
// Cochain side (right modules), n = manifold dimension:
//   w_n             = vol - d(eta_bar_{n-1}), integer valued
//   w_{n-1}, ... solve  (delta w_k) = -(-1)^{n-k+1} d w_{k-1}.
// On the circle (n = 1) everything below is exact rational arithmetic; on
// the sphere w_1 subtracts the mod-1 antiderivative v~ of g^*alpha - alpha
// along basepoint geodesics, and w_0 integrates -(delta w_1) along them.
//
// eta tower (circle coefficients):
//   eta_{n-1}       = eta_bar mod 1           (group degree 0)
//   eta_0(g)        = -v~_g mod 1             (sphere), chosen so that
//   (delta eta_1) = d eta_0 holds mod 1.

/// Raw mod-1 antiderivative of g^*alpha - alpha along the geodesic from the
/// basepoint; representative in [0,1).  Well defined mod 1 because the
/// periods of g^*alpha - alpha are integers.
inline double v_tilde_raw(const SphereGeometry& geom, const SphereWord& g,
                          const Vec3& y) {
  auto geo = SphereGeometry::geodesic_arc(geom.basepoint(), y);
  return frac_lift(geom.beta_integral(g, geo));
}

template <class G>
ChainValued<G> make_delta_cochain(const G& geom, int k) {
  constexpr int n = G::dimension;
  if (k < 0 || k > n) throw DimensionMismatch("delta_k: k out of range");
  const auto x = geom.basepoint();
  if (k == 0) {
    return ChainValued<G>{0, 0, [x](Tuple<G>) {
                            return Chain<G>::single(G::point_simplex(x));
                          }};
  }
  if (k == 1) {
    return ChainValued<G>{1, 1, [x](Tuple<G> t) {
                            return Chain<G>::single(
                                G::geodesic_arc(x, apply(t[0], x)));
                          }};
  }
  if constexpr (n >= 2) {
    return ChainValued<G>{2, 2, [x](Tuple<G> t) {
                            auto edge =
                                G::act(t[0], G::geodesic_arc(x, apply(t[1], x)));
                            return Chain<G>::single(G::cone_over(x, edge));
                          }};
  }
  throw DimensionMismatch("delta_k: k out of range");
}

/// Real-valued lift eta_bar of eta_{n-1}: frac(t) on circle points, the
/// alpha line integral on sphere arcs.
template <class G>
FormValued<G> make_eta_bar_cochain(const G& geom) {
  constexpr int n = G::dimension;
  return FormValued<G>{
      0, n - 1, Coeff::Real, [geom](Tuple<G>) {
        return Evaluator<G>{n - 1, Coeff::Real,
                            [geom](const typename G::Simplex& s) {
                              return geom.eta_bar_value(s);
                            }};
      }};
}

template <class G>
FormValued<G> make_w_cochain(const G& geom, int k) {
  constexpr int n = G::dimension;
  if (k < 0 || k > n) throw DimensionMismatch("w_k: k out of range");

  if (k == n) {
    // w_n(sigma) = vol(sigma) - eta_bar(boundary sigma): integer valued.
    return FormValued<G>{
        0, n, Coeff::Integer, [geom](Tuple<G>) {
          return Evaluator<G>{
              n, Coeff::Integer, [geom](const typename G::Simplex& s) {
                typename G::Scalar total = geom.volume_integral(s);
                for (const auto& [c, f] : G::boundary_faces(s))
                  total -= typename G::Scalar(c) * geom.eta_bar_value(f);
                return total;
              }};
        }};
  }

  if constexpr (G::dimension == 1) {
    // k = 0: w_0(g) = (g^* eta_bar - eta_bar) - frac(s_g); exact rational.
    return FormValued<G>{
        1, 0, Coeff::Integer, [](Tuple<G> t) {
          const Rational shift = frac_lift(t[0].total_turns());
          return Evaluator<G>{0, Coeff::Integer,
                              [shift](const CircleSimplex& s) {
                                const Rational& tt = s.point.t;
                                return frac_lift(tt + shift) - tt - shift;
                              }};
        }};
  } else {
    if (k == 1) {
      // w_1(g)(c) = int_c (g^*alpha - alpha) - (v~_g(end) - v~_g(start)).
      return FormValued<G>{
          1, 1, Coeff::Integer, [geom](Tuple<G> t) {
            const SphereWord g = t[0];
            return Evaluator<G>{
                1, Coeff::Integer, [geom, g](const SphereSimplex& s) {
                  const Vec3 p0 = apply(s.prefix, s.arc.a);
                  const Vec3 p1 = apply(s.prefix, s.arc.b);
                  return geom.beta_integral(g, s) -
                         (v_tilde_raw(geom, g, p1) - v_tilde_raw(geom, g, p0));
                }};
          }};
    }
    // k = 0: w_0(g1,g2)(y) = -(delta w_1)(g1,g2) on the geodesic x -> y,
    // normalized to 0 at the basepoint (the degenerate geodesic).
    return FormValued<G>{
        2, 0, Coeff::Integer, [geom](Tuple<G> t) {
          const std::vector<SphereWord> words(t.begin(), t.end());
          return Evaluator<G>{
              0, Coeff::Integer, [geom, words](const SphereSimplex& s) {
                auto dw1 = group_coboundary(make_w_cochain(geom, 1));
                auto geo = Chain<SphereGeometry>::single(
                    SphereGeometry::geodesic_arc(geom.basepoint(), s.point));
                return -dw1.at(Tuple<SphereGeometry>(words)).eval(geo);
              }};
        }};
  }
}

template <class G>
FormValued<G> make_eta_cochain(const G& geom, int k) {
  constexpr int n = G::dimension;
  if (k < 0 || k > n - 1) throw DimensionMismatch("eta_k: k out of range");
  if (k == n - 1) {
    return FormValued<G>{
        0, n - 1, Coeff::Mod1, [geom](Tuple<G>) {
          return Evaluator<G>{n - 1, Coeff::Mod1,
                              [geom](const typename G::Simplex& s) {
                                return frac_lift(geom.eta_bar_value(s));
                              }};
        }};
  }
  if constexpr (G::dimension >= 2) {
    // k = 0: eta_0(g) = -v~_g mod 1, which is what (delta eta_1) = d eta_0
    // requires (delta eta_1(g) integrates alpha - g^*alpha).
    return FormValued<G>{
        1, 0, Coeff::Mod1, [geom](Tuple<G> t) {
          const SphereWord g = t[0];
          return Evaluator<G>{0, Coeff::Mod1,
                              [geom, g](const SphereSimplex& s) {
                                return frac_lift(-v_tilde_raw(geom, g, s.point));
                              }};
        }};
  }
  throw DimensionMismatch("eta_k: k out of range");
}

// ---------------------------------------------------------------------------

/// The bundle of zig-zag choices for one manifold and one config: basepoint,
/// delta builders, eta towers, w towers, and the snapped operations.
template <class G>
class Zigzag {
 public:
  static constexpr int n = G::dimension;
  using Word = typename G::Word;
  using Simplex = typename G::Simplex;
  using Scalar = typename G::Scalar;

  explicit Zigzag(G geom, double snap_tol = 1e-6)
      : geom_(std::move(geom)), snap_tol_(snap_tol) {}

  const G& geometry() const { return geom_; }
  double snap_tol() const { return snap_tol_; }

  ChainValued<G> delta_cochain(int k) const {
    return make_delta_cochain(geom_, k);
  }
  FormValued<G> w_cochain(int k) const { return make_w_cochain(geom_, k); }
  FormValued<G> eta_bar_cochain() const { return make_eta_bar_cochain(geom_); }
  FormValued<G> eta_cochain(int k) const { return make_eta_cochain(geom_, k); }

  Chain<G> build_delta(int k, Tuple<G> tuple) const {
    return delta_cochain(k).at(tuple);
  }

  Scalar eta_bar(const Simplex& s) const { return geom_.eta_bar_value(s); }

  /// w_n on a top-dimensional simplex, snapped.
  SnappedInt w_top(const Simplex& s) const {
    return snap_to_integer(w_cochain(n).at({}).eval_simplex(s), snap_tol_);
  }

  /// Sphere w_1 on a mapped arc, snapped.
  SnappedInt w_mid(const Word& g, const Simplex& arc) const
    requires(G::dimension == 2)
  {
    std::vector<Word> t{g};
    return snap_to_integer(w_cochain(1).at(Tuple<G>(t)).eval_simplex(arc),
                           snap_tol_);
  }

  /// w_0 at a point, snapped.  Circle: 1-tuples; sphere: 2-tuples.
  SnappedInt w_bottom(Tuple<G> tuple, const typename G::Point& y) const {
    return snap_to_integer(
        w_cochain(0).at(tuple).eval_simplex(G::point_simplex(y)), snap_tol_);
  }

  double v_tilde(const Word& g, const Vec3& y) const
    requires(G::dimension == 2)
  {
    return v_tilde_raw(geom_, g, y);
  }

 private:
  G geom_;
  double snap_tol_;
};

using CircleZigzag = Zigzag<CircleGeometry>;
using SphereZigzag = Zigzag<SphereGeometry>;

}  // namespace coc
