#pragma once

// Out-of-line suite implementations for SuiteRunner: random admissible
// geometry, the stokes / zigzag / leibniz suites, and the random group
// cochains they draw.  Included at the end of cocycles.hpp.

#include <array>

namespace coc {

namespace detail {

inline Vec3 random_unit(Rng& rng) {
  const double z = 2.0 * rng.uniform01() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform01();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

/// Sampled clearance of a mapped curve from the pole (for arcs) and of a
/// cone edge from the apex antipode.  Coarse by construction; evaluation
/// still hard-errors if a curve sneaks closer than epsilon_pole.
inline bool arc_clear_of_pole(const SphereGeometry& geom,
                              const SphereSimplex& s, double margin,
                              int probes = 33) {
  try {
    for (int i = 0; i <= probes; ++i) {
      const double t = static_cast<double>(i) / probes;
      const Vec3 p = SphereGeometry::curve_sample(s, t).p;
      if ((p - geom.conventions().pole).norm() < margin) return false;
    }
  } catch (const GeometryError&) {
    return false;
  }
  return true;
}

inline bool cone_admissible(const SphereGeometry& geom, const SphereSimplex& s,
                            double margin, int probes = 257) {
  try {
    for (const auto& [c, f] : SphereGeometry::boundary_faces(s))
      if (!arc_clear_of_pole(geom, f, margin, probes)) return false;
    // The cone parametrization degenerates where the edge curve (through
    // its own prefix, before the outer word) meets the apex antipode.
    SphereSimplex edge;
    edge.dim = 1;
    edge.arc = s.cone.edge.base;
    edge.prefix = s.cone.edge.prefix;
    for (int i = 0; i <= probes; ++i) {
      const double t = static_cast<double>(i) / probes;
      const Vec3 p = SphereGeometry::curve_sample(edge, t).p;
      if ((p + s.cone.apex).norm() < margin) return false;
    }
  } catch (const GeometryError&) {
    return false;
  }
  return true;
}

template <class G>
typename G::Simplex random_mapped_arc(Rng& rng, const G& geom,
                                      const std::vector<typename G::Word>& pool,
                                      int max_len) {
  if constexpr (G::dimension == 1) {
    (void)geom;
    CircleSimplex s;
    s.dim = 1;
    s.arc = CircleArc{rng.rational(97), rng.rational(97)};
    s.prefix = random_word<G>(rng, pool, max_len);
    return s;
  } else {
    for (int tries = 0; tries < 200; ++tries) {
      const Vec3 a = random_unit(rng);
      const Vec3 b = random_unit(rng);
      if ((a + b).norm() < 0.5) continue;
      SphereSimplex s = SphereGeometry::geodesic_arc(a, b);
      s.prefix = random_word<G>(rng, pool, max_len);
      if (arc_clear_of_pole(geom, s, 0.05, 129)) return s;
    }
    throw GeometryError("random_mapped_arc: no admissible draw");
  }
}

inline SphereSimplex random_mapped_cone(Rng& rng, const SphereGeometry& geom,
                                        const std::vector<SphereWord>& pool,
                                        int max_len) {
  for (int tries = 0; tries < 200; ++tries) {
    const Vec3 v0 = random_unit(rng);
    const Vec3 v1 = random_unit(rng);
    const Vec3 v2 = random_unit(rng);
    if ((v0 + v1).norm() < 0.5 || (v0 + v2).norm() < 0.5 ||
        (v1 + v2).norm() < 0.5)
      continue;
    SphereSimplex s = SphereGeometry::cone_triangle(v0, v1, v2);
    s.prefix = random_word<SphereGeometry>(rng, pool, max_len);
    if (cone_admissible(geom, s, 0.05)) return s;
  }
  throw GeometryError("random_mapped_cone: no admissible draw");
}

}  // namespace detail

template <class G>
SuiteReport SuiteRunner<G>::stokes_suite(int samples, std::uint64_t seed,
                                         int jobs) const {
  SuiteReport rep = make_report("stokes", samples, seed, -1);
  const auto& geom = sys_.geometry();
  Rng rng(seed);
  std::vector<typename G::Simplex> tops;
  for (int i = 0; i < samples; ++i) {
    if constexpr (n == 1)
      tops.push_back(detail::random_mapped_arc(rng, geom, pool_, max_len_));
    else
      tops.push_back(detail::random_mapped_cone(rng, geom, pool_, max_len_));
  }
  auto outcomes = parallel_map<Outcome>(
      tops.size(), jobs, [&](std::size_t i) -> Outcome {
        try {
          const SnappedInt w = sys_.zigzag().w_top(tops[i]);
          return {false, false, w.residual};
        } catch (const GeometryError&) {
          return {false, true, 0.0};
        } catch (const QuadratureNonConvergence&) {
          return {false, true, 0.0};
        } catch (const SnapFailure& e) {
          return {true, false, e.residual};
        }
      });
  reduce(rep, outcomes);

  if constexpr (n == 2) {
    // Total weight of a triangulation of the whole sphere is 1: seven faces
    // carry 0 and the face containing the pole carries 1.
    long long total = 0;
    double vol = 0.0;
    for (const auto& face : octahedral_triangulation(generic_octahedral_frame())) {
      const SnappedInt w = sys_.zigzag().w_top(face);
      total += w.value;
      rep.max_residual = std::max(rep.max_residual, w.residual);
      vol += geom.volume_integral(face);
    }
    ++rep.checked;
    if (total != 1) ++rep.failures;
    rep.stats["octahedral_total"] = static_cast<double>(total);
    rep.stats["octahedral_volume"] = vol;
  } else {
    // Circle analogue: a cyclic partition of the circle has total volume 1.
    Rational total = 0;
    CirclePoint prev(Rational(0));
    std::array<Rational, 4> cuts = {Rational(1, 4), Rational(5, 8),
                                    Rational(3, 4), Rational(0)};
    for (const auto& c : cuts) {
      CirclePoint next(c);
      total += CircleGeometry::volume_integral(
          CircleGeometry::geodesic_arc(prev, next));
      prev = next;
    }
    ++rep.checked;
    if (total != 1) ++rep.failures;
    rep.stats["partition_volume"] = to_double(total);
  }
  return rep;
}

template <class G>
SuiteReport SuiteRunner<G>::zigzag_suite(int samples, std::uint64_t seed,
                                         int jobs) const {
  SuiteReport rep = make_report("zigzag", samples, seed, -1);
  const auto& geom = sys_.geometry();
  const auto& zz = sys_.zigzag();
  Rng rng(seed);

  // Identity kinds: 0 = chain side, 1 = w tower, 2 = eta tower,
  // 3 = d(eta_{n-1}) = volume form mod 1.
  struct Task {
    int kind;
    int k;
    std::vector<Word> tuple;
    typename G::Simplex simplex;
  };
  std::vector<Task> tasks;
  for (int i = 0; i < samples; ++i) {
    for (int k = 0; k < n; ++k)
      tasks.push_back({0, k, random_tuple<G>(rng, pool_, max_len_, k + 1), {}});
    for (int k = n; k >= 1; --k) {
      Task t{1, k, random_tuple<G>(rng, pool_, max_len_, n - k + 1), {}};
      if (k == n) {
        if constexpr (n == 1)
          t.simplex = detail::random_mapped_arc(rng, geom, pool_, max_len_);
        else
          t.simplex = detail::random_mapped_cone(rng, geom, pool_, max_len_);
      } else {
        t.simplex = detail::random_mapped_arc(rng, geom, pool_, max_len_);
      }
      tasks.push_back(std::move(t));
    }
    if constexpr (n == 2) {
      Task t{2, 1, random_tuple<G>(rng, pool_, max_len_, 1), {}};
      t.simplex = detail::random_mapped_arc(rng, geom, pool_, max_len_);
      tasks.push_back(std::move(t));
    }
    Task t{3, n, {}, {}};
    if constexpr (n == 1)
      t.simplex = detail::random_mapped_arc(rng, geom, pool_, max_len_);
    else
      t.simplex = detail::random_mapped_cone(rng, geom, pool_, max_len_);
    tasks.push_back(std::move(t));
  }

  auto outcomes = parallel_map<Outcome>(
      tasks.size(), jobs, [&](std::size_t i) -> Outcome {
        const Task& task = tasks[i];
        try {
          switch (task.kind) {
            case 0: {
              // (group coboundary of delta_k) - (boundary of delta_{k+1})
              // cancels structurally, term by term.
              Chain<G> diff =
                  group_coboundary(zz.delta_cochain(task.k)).at(Tuple<G>(task.tuple));
              diff += -boundary<G>(zz.delta_cochain(task.k + 1).at(Tuple<G>(task.tuple)));
              return {!is_zero_chain(diff), false, 0.0};
            }
            case 1: {
              // (delta w_k) + (-1)^{n-k+1} d w_{k-1} = 0.
              const int sign = detail::alt(n - task.k + 1);
              const Scalar lhs = group_coboundary(zz.w_cochain(task.k))
                                     .at(Tuple<G>(task.tuple))
                                     .eval_simplex(task.simplex);
              const Scalar rhs = zz.w_cochain(task.k - 1)
                                     .at(Tuple<G>(task.tuple))
                                     .eval(boundary<G>(task.simplex));
              const Scalar diff = lhs + Scalar(sign) * rhs;
              const double res = scalar_to_double(abs_scalar(diff));
              const bool fail =
                  snap_to_integer(lhs, zz.snap_tol()).value !=
                  -sign * snap_to_integer(rhs, zz.snap_tol()).value;
              return {fail, false, res};
            }
            case 2: {
              // (delta eta_k) + (-1)^{n-k} d eta_{k-1} = 0 mod 1.
              const int sign = detail::alt(n - task.k);
              const Scalar lhs = group_coboundary(zz.eta_cochain(task.k))
                                     .at(Tuple<G>(task.tuple))
                                     .eval_simplex(task.simplex);
              const Scalar rhs = zz.eta_cochain(task.k - 1)
                                     .at(Tuple<G>(task.tuple))
                                     .eval(boundary<G>(task.simplex));
              const double res = integer_residual(lhs + Scalar(sign) * rhs);
              return {res > zz.snap_tol(), false, res};
            }
            default: {
              // eta_{n-1}(boundary sigma) = volume(sigma) mod 1.
              const Scalar lhs = zz.eta_cochain(n - 1)
                                     .at({})
                                     .eval(boundary<G>(task.simplex));
              const Scalar vol = geom.volume_integral(task.simplex);
              const double res = integer_residual(lhs - vol);
              return {res > zz.snap_tol(), false, res};
            }
          }
        } catch (const GeometryError&) {
          return {false, true, 0.0};
        } catch (const QuadratureNonConvergence&) {
          return {false, true, 0.0};
        } catch (const SnapFailure& e) {
          return {true, false, e.residual};
        }
      });
  reduce(rep, outcomes);
  return rep;
}

// ---------------------------------------------------------------------------
// Random group cochains for the Leibniz suite.  Any deterministic function
// of simplices is a singular cochain, so the atoms here mix the real
// zig-zag data with cheap synthetic evaluators; the identity being tested
// only involves the group-level combinators.

namespace detail {

template <class G>
Evaluator<G> random_evaluator(Rng& rng, const G& geom, int r) {
  if constexpr (G::dimension == 1) {
    (void)geom;
    const Rational q0 = rng.rational(19), q1 = rng.rational(19),
                   q2 = rng.rational(19);
    if (r == 0)
      return Evaluator<G>{0, Coeff::Real, [q0, q1, q2](const CircleSimplex& s) {
                            const Rational& t = s.point.t;
                            return q0 + q1 * t + q2 * t * t;
                          }};
    return Evaluator<G>{1, Coeff::Real, [q0, q1, q2](const CircleSimplex& s) {
                          auto [st, disp] = CircleGeometry::lifted_range(s);
                          return q0 * disp + q1 * st + q2 * st * disp;
                        }};
  } else {
    (void)geom;
    const Vec3 u1 = random_unit(rng), u2 = random_unit(rng);
    const double a1 = rng.uniform(-2.0, 2.0), a2 = rng.uniform(-2.0, 2.0);
    if (r == 0)
      return Evaluator<G>{0, Coeff::Real, [=](const SphereSimplex& s) {
                            const double x1 = s.point.dot(u1);
                            const double x2 = s.point.dot(u2);
                            return a1 * x1 + a2 * x2 * x2;
                          }};
    if (r == 1)
      return Evaluator<G>{1, Coeff::Real, [=](const SphereSimplex& s) {
                            const Vec3 p = SphereGeometry::curve_sample(s, 1.0 / 3).p;
                            const Vec3 q = SphereGeometry::curve_sample(s, 3.0 / 4).p;
                            return a1 * p.dot(u1) + a2 * q.dot(u2) * q.dot(u2);
                          }};
    return Evaluator<G>{2, Coeff::Real, [=](const SphereSimplex& s) {
                          const Vec3 p = SphereGeometry::at(s, 1.0 / 3, 1.0 / 2);
                          const Vec3 q = SphereGeometry::at(s, 2.0 / 3, 1.0 / 4);
                          return a1 * p.dot(u1) + a2 * q.dot(u2) * q.dot(u2);
                        }};
  }
}

/// Cheap multiplicative scalar attached to one word (exact on the circle).
template <class G>
typename G::Scalar word_scalar(const typename G::Word& g, const Vec3& probe,
                               const typename G::Point& base) {
  if constexpr (G::dimension == 1) {
    (void)probe;
    (void)base;
    return Rational(1) + frac_lift(g.total_turns());
  } else {
    return 1.0 + 0.3 * apply(g, base).dot(probe);
  }
}

template <class G>
FormValued<G> random_form(Rng& rng, const Zigzag<G>& zz,
                          const std::vector<typename G::Word>& pool, int p,
                          int r, int depth = 0) {
  constexpr int n = G::dimension;
  const G geom = zz.geometry();

  std::vector<int> options{0};  // separable
  if (p == n - r) options.push_back(1);              // w_r
  if (p == 0 && r == n - 1) options.push_back(2);    // eta_bar
  if (p >= 1 && depth < 2) options.push_back(3);     // coboundary of lower
  if (p >= 1) options.push_back(4);                  // translated separable
  const int choice = options[rng.uniform(options.size())];

  if (choice == 1) return zz.w_cochain(r);
  if (choice == 2) return zz.eta_bar_cochain();
  if (choice == 3)
    return group_coboundary(random_form(rng, zz, pool, p - 1, r, depth + 1));

  const Evaluator<G> f = random_evaluator(rng, geom, r);
  const Vec3 probe = random_unit(rng);
  const auto base = geom.basepoint();
  if (choice == 4) {
    const typename G::Word h = random_word<G>(rng, pool, 2);
    return FormValued<G>{p, r, Coeff::Real, [=](Tuple<G> t) {
                           typename G::Scalar m{1};
                           for (const auto& g : t)
                             m *= word_scalar<G>(g, probe, base);
                           auto shifted = pullback<G>(f, h);
                           return Evaluator<G>{
                               f.dim, f.coeff,
                               [m, shifted](const typename G::Simplex& s) {
                                 return m * shifted.eval_simplex(s);
                               }};
                         }};
  }
  return FormValued<G>{p, r, Coeff::Real, [=](Tuple<G> t) {
                         typename G::Scalar m{1};
                         for (const auto& g : t)
                           m *= word_scalar<G>(g, probe, base);
                         return Evaluator<G>{
                             f.dim, f.coeff,
                             [m, f](const typename G::Simplex& s) {
                               return m * f.eval_simplex(s);
                             }};
                       }};
}

template <class G>
typename G::Simplex random_simplex(Rng& rng, const G& geom,
                                   const std::vector<typename G::Word>& pool,
                                   int r) {
  if constexpr (G::dimension == 1) {
    if (r == 0) return G::point_simplex(CirclePoint(rng.rational(37)));
    return random_mapped_arc(rng, geom, pool, 2);
  } else {
    if (r == 0) return G::point_simplex(random_unit(rng));
    if (r == 1) return random_mapped_arc(rng, geom, pool, 2);
    return random_mapped_cone(rng, geom, pool, 2);
  }
}

template <class G>
std::int64_t word_int(const typename G::Word& g, const Vec3& probe,
                      const typename G::Point& base) {
  if constexpr (G::dimension == 1) {
    (void)probe;
    (void)base;
    return 1 + rational_floor(Rational(3) * frac_lift(g.total_turns()))
                   .template convert_to<std::int64_t>();
  } else {
    return 1 + static_cast<std::int64_t>(
                   std::floor(1.5 * (1.0 + apply(g, base).dot(probe))));
  }
}

template <class G>
ChainValued<G> random_chain_cochain(Rng& rng, const Zigzag<G>& zz,
                                    const std::vector<typename G::Word>& pool,
                                    int q, int r, int depth = 0) {
  constexpr int n = G::dimension;
  const G geom = zz.geometry();

  std::vector<int> options{0};
  if (q == r && r <= n) options.push_back(1);     // delta_r
  if (q >= 1 && depth < 2) options.push_back(2);  // coboundary of lower
  const int choice = options[rng.uniform(options.size())];

  if (choice == 1) return zz.delta_cochain(r);
  if (choice == 2)
    return group_coboundary(
        random_chain_cochain(rng, zz, pool, q - 1, r, depth + 1));

  Chain<G> fixed = Chain<G>::single(random_simplex(rng, geom, pool, r),
                                    1 + static_cast<std::int64_t>(rng.uniform(2)));
  if (rng.coin())
    fixed += Chain<G>::single(random_simplex(rng, geom, pool, r),
                              -1 - static_cast<std::int64_t>(rng.uniform(2)));
  const typename G::Word h = random_word<G>(rng, pool, 2);
  const bool translate = rng.coin();
  const Vec3 probe = random_unit(rng);
  const auto base = geom.basepoint();
  return ChainValued<G>{q, r, [=](Tuple<G> t) {
                          std::int64_t m = 1;
                          for (const auto& g : t)
                            m *= word_int<G>(g, probe, base);
                          Chain<G> out = fixed * m;
                          if (translate) out = act<G>(h, out);
                          return out;
                        }};
}

}  // namespace detail

template <class G>
SuiteReport SuiteRunner<G>::leibniz_suite(int samples, std::uint64_t seed,
                                          int jobs) const {
  SuiteReport rep = make_report("leibniz", samples, seed, -1);
  const auto& zz = sys_.zigzag();
  Rng rng(seed);

  static constexpr std::array<std::pair<int, int>, 10> kSplits{
      {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}, {2, 1}, {1, 2}, {3, 0}, {0, 3}}};

  struct Task {
    FormValued<G> a;
    ChainValued<G> b;
    std::vector<Word> tuple;
  };
  std::vector<Task> tasks;
  tasks.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const auto [p, q] = kSplits[i % kSplits.size()];
    const int r = static_cast<int>(rng.uniform(n + 1));
    Task t{detail::random_form(rng, zz, pool_, p, r),
           detail::random_chain_cochain(rng, zz, pool_, q, r),
           random_tuple<G>(rng, pool_, max_len_, p + q + 1)};
    tasks.push_back(std::move(t));
  }

  auto outcomes = parallel_map<Outcome>(
      tasks.size(), jobs, [&](std::size_t i) -> Outcome {
        const Task& task = tasks[i];
        try {
          const auto paired = pair_cochains(task.a, task.b);
          Scalar lhs{};
          for (const auto& [sign, sub] :
               detail::trivial_delta_terms<G>(Tuple<G>(task.tuple)))
            lhs += Scalar(sign) * paired.at(Tuple<G>(sub));
          const Scalar rhs1 =
              pair_cochains(group_coboundary(task.a), task.b).at(Tuple<G>(task.tuple));
          const Scalar rhs2 =
              pair_cochains(task.a, group_coboundary(task.b)).at(Tuple<G>(task.tuple));
          const Scalar diff =
              lhs - rhs1 - Scalar(detail::alt(task.a.p)) * rhs2;
          const double res = scalar_to_double(abs_scalar(diff));
          return {res > sys_.zigzag().snap_tol(), false, res};
        } catch (const GeometryError&) {
          return {false, true, 0.0};
        } catch (const QuadratureNonConvergence&) {
          return {false, true, 0.0};
        }
      });
  reduce(rep, outcomes);
  return rep;
}

}  // namespace coc
