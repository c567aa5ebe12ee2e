#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coc/parallel.hpp"
#include "coc/rng.hpp"
#include "coc/zigzag.hpp"

namespace coc {

inline double scalar_to_double(double x) { return x; }
inline double scalar_to_double(const Rational& r) { return to_double(r); }

/// Distance to the nearest integer (the mod-1 residual).
inline double integer_residual(double x) {
  return std::abs(x - std::nearbyint(x));
}
inline double integer_residual(const Rational& r) {
  return to_double(boost::multiprecision::abs(r - Rational(rational_floor(r + Rational(1, 2)))));
}

template <class G>
struct CocycleEval {
  typename G::Scalar raw{};
  long long snapped = 0;
  double residual = 0.0;
};

template <class G>
struct Mod1Eval {
  typename G::Scalar raw{};   // representative sum, any real
  typename G::Scalar mod1{};  // canonical representative in [0,1)
};

/// Evaluation front end for the cocycles c_k (integers), b_k (circle
/// values) and the real lift of b_{n-1}, all through the generic pairing.
template <class G>
class Cocycles {
 public:
  static constexpr int n = G::dimension;
  using Word = typename G::Word;
  using Scalar = typename G::Scalar;

  explicit Cocycles(Zigzag<G> zz) : zz_(std::move(zz)) {}

  const Zigzag<G>& zigzag() const { return zz_; }
  const G& geometry() const { return zz_.geometry(); }

  /// c_k = < group-coboundary of w_k , delta_k >, raw (pre-snap) values.
  ScalarValued<G> c_raw(int k) const {
    require_range(k, 0, n, "c_k");
    return pair_cochains(group_coboundary(zz_.w_cochain(k)),
                         zz_.delta_cochain(k));
  }

  /// b_k = < group-coboundary of eta_k , delta_k >, raw representatives.
  ScalarValued<G> b_raw(int k) const {
    require_range(k, 0, n - 1, "b_k");
    return pair_cochains(group_coboundary(zz_.eta_cochain(k)),
                         zz_.delta_cochain(k));
  }

  /// Real lift of b_{n-1} through eta_bar.
  ScalarValued<G> b_lift_raw() const {
    return pair_cochains(group_coboundary(zz_.eta_bar_cochain()),
                         zz_.delta_cochain(n - 1));
  }

  CocycleEval<G> eval_c(int k, Tuple<G> t) const {
    const Scalar raw = c_raw(k).at(t);
    const SnappedInt s = snap_to_integer(raw, zz_.snap_tol());
    return {raw, s.value, s.residual};
  }

  Mod1Eval<G> eval_b(int k, Tuple<G> t) const {
    const Scalar raw = b_raw(k).at(t);
    return {raw, frac_lift(raw)};
  }

  Scalar eval_b_lift(Tuple<G> t) const { return b_lift_raw().at(t); }

  /// c_k as a trivial-coefficient group cochain of exact snapped integers
  /// (what homology pairings consume).
  ScalarValued<G> c_snapped(int k) const {
    require_range(k, 0, n, "c_k");
    auto self = *this;
    return ScalarValued<G>{n + 1, Coeff::Integer, [self, k](Tuple<G> t) {
                             return Scalar(self.eval_c(k, t).snapped);
                           }};
  }

  /// b_k as canonical representatives in [0,1).
  ScalarValued<G> b_mod1(int k) const {
    require_range(k, 0, n - 1, "b_k");
    auto self = *this;
    return ScalarValued<G>{n, Coeff::Mod1, [self, k](Tuple<G> t) {
                             return self.eval_b(k, t).mod1;
                           }};
  }

 private:
  static void require_range(int k, int lo, int hi, const char* what) {
    if (k < lo || k > hi)
      throw DimensionMismatch(std::string(what) + ": k out of range");
  }

  Zigzag<G> zz_;
};

// ---------------------------------------------------------------------------
// Verification suites

struct SuiteReport {
  std::string suite;
  std::string manifold;
  int k = -1;  // -1: all applicable k
  int samples = 0;
  std::uint64_t seed = 0;
  int checked = 0;
  int failures = 0;
  int skipped = 0;  // geometry degeneracies hit by random draws
  double max_residual = 0.0;
  std::map<std::string, double> stats;
  std::map<long long, long long> histogram;

  bool pass() const { return failures == 0 && checked > 0; }
};

namespace detail {

/// Expansion of the trivial-coefficient group coboundary of a degree
/// (arity-1) cochain on the given tuple: list of (sign, sub-tuple).
template <class G>
std::vector<std::pair<int, std::vector<typename G::Word>>> trivial_delta_terms(
    Tuple<G> t) {
  using W = typename G::Word;
  const int p1 = static_cast<int>(t.size());
  std::vector<std::pair<int, std::vector<W>>> out;
  out.emplace_back(1, std::vector<W>(t.begin() + 1, t.end()));
  for (int i = 1; i <= p1 - 1; ++i)
    out.emplace_back(alt(i), merged_tuple<G>(t, i));
  out.emplace_back(alt(p1), std::vector<W>(t.begin(), t.end() - 1));
  return out;
}

}  // namespace detail

/// Random words over a fixed generator pool with a seeded stream; each
/// letter is a pool generator or its inverse.
template <class G>
typename G::Word random_word(Rng& rng, const std::vector<typename G::Word>& pool,
                             int max_len) {
  typename G::Word w;
  const int len = 1 + static_cast<int>(rng.uniform(max_len));
  for (int i = 0; i < len; ++i) {
    const auto& gen = pool[rng.uniform(pool.size())];
    w = compose(w, rng.coin() ? gen : invert(gen));
  }
  return w;
}

template <class G>
std::vector<typename G::Word> random_tuple(
    Rng& rng, const std::vector<typename G::Word>& pool, int max_len,
    int arity) {
  std::vector<typename G::Word> t;
  t.reserve(arity);
  for (int i = 0; i < arity; ++i)
    t.push_back(random_word<G>(rng, pool, max_len));
  return t;
}

/// Drives every identity suite.  The random stream is consumed entirely
/// during generation, so reports are identical for any worker count.
template <class G>
class SuiteRunner {
 public:
  static constexpr int n = G::dimension;
  using Word = typename G::Word;
  using Scalar = typename G::Scalar;

  SuiteRunner(Cocycles<G> sys, std::vector<Word> pool, int max_word_len = 4)
      : sys_(std::move(sys)), pool_(std::move(pool)), max_len_(max_word_len) {}

  const Cocycles<G>& system() const { return sys_; }

  /// suite in {leibniz, cocycle_c, cocycle_b, telescoping, lift, stokes,
  /// zigzag, bounded}; k = -1 runs all applicable degrees.
  SuiteReport run(const std::string& suite, int samples, std::uint64_t seed,
                  int k = -1, int jobs = 1) const {
    if (suite == "cocycle_c") return cocycle_suite('c', k, samples, seed, jobs);
    if (suite == "cocycle_b") return cocycle_suite('b', k, samples, seed, jobs);
    if (suite == "telescoping") return telescoping_suite(k, samples, seed, jobs);
    if (suite == "lift") return lift_suite(samples, seed, jobs);
    if (suite == "stokes") return stokes_suite(samples, seed, jobs);
    if (suite == "zigzag") return zigzag_suite(samples, seed, jobs);
    if (suite == "leibniz") return leibniz_suite(samples, seed, jobs);
    if (suite == "bounded") return boundedness_suite(k, samples, seed, jobs);
    throw ParseError("unknown suite: " + suite);
  }

  /// delta(c_k) = 0 (kind 'c', snapped integers) or delta(b_k) = 0 mod 1
  /// (kind 'b') on random (n+2)-tuples.
  SuiteReport cocycle_suite(char kind, int k, int samples, std::uint64_t seed,
                            int jobs) const {
    SuiteReport rep = make_report(kind == 'c' ? "cocycle_c" : "cocycle_b",
                                  samples, seed, k);
    std::vector<int> ks = degrees(kind == 'c' ? n : n - 1, k);
    Rng rng(seed);
    struct Task {
      int k;
      std::vector<Word> tuple;
    };
    const int arity = (kind == 'c') ? n + 2 : n + 1;  // delta of degree n+1 / n
    std::vector<Task> tasks;
    for (int kk : ks)
      for (int i = 0; i < samples; ++i)
        tasks.push_back({kk, random_tuple<G>(rng, pool_, max_len_, arity)});
    auto outcomes = parallel_map<Outcome>(
        tasks.size(), jobs, [&](std::size_t i) -> Outcome {
          const Task& task = tasks[i];
          try {
            auto terms = detail::trivial_delta_terms<G>(Tuple<G>(task.tuple));
            Scalar raw{};
            long long snapped = 0;
            for (const auto& [sign, sub] : terms) {
              if (kind == 'c') {
                auto e = sys_.eval_c(task.k, Tuple<G>(sub));
                raw += Scalar(sign) * e.raw;
                snapped += sign * e.snapped;
              } else {
                auto e = sys_.eval_b(task.k, Tuple<G>(sub));
                raw += Scalar(sign) * e.raw;
              }
            }
            if (kind == 'c')
              return {snapped != 0, false, scalar_to_double(abs_scalar(raw))};
            const double res = integer_residual(raw);
            return {res > sys_.zigzag().snap_tol(), false, res};
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

  /// c_k = c_{k-1} - delta<w_{k-1}, delta_{k-1}> pointwise, k >= 1.
  SuiteReport telescoping_suite(int k, int samples, std::uint64_t seed,
                                int jobs) const {
    SuiteReport rep = make_report("telescoping", samples, seed, k);
    std::vector<int> ks;
    for (int kk = (k < 0 ? 1 : k); kk <= (k < 0 ? n : k); ++kk) ks.push_back(kk);
    Rng rng(seed);
    struct Task {
      int k;
      std::vector<Word> tuple;
    };
    std::vector<Task> tasks;
    for (int kk : ks)
      for (int i = 0; i < samples; ++i)
        tasks.push_back({kk, random_tuple<G>(rng, pool_, max_len_, n + 1)});
    auto outcomes = parallel_map<Outcome>(
        tasks.size(), jobs, [&](std::size_t i) -> Outcome {
          const auto& [kk, tuple] = tasks[i];
          try {
            auto lhs = sys_.eval_c(kk, Tuple<G>(tuple));
            auto rhs = sys_.eval_c(kk - 1, Tuple<G>(tuple));
            auto inner = pair_cochains(sys_.zigzag().w_cochain(kk - 1),
                                       sys_.zigzag().delta_cochain(kk - 1));
            Scalar corr_raw{};
            long long corr_snapped = 0;
            for (const auto& [sign, sub] :
                 detail::trivial_delta_terms<G>(Tuple<G>(tuple))) {
              const Scalar v = inner.at(Tuple<G>(sub));
              corr_raw += Scalar(sign) * v;
              corr_snapped +=
                  sign * snap_to_integer(v, sys_.zigzag().snap_tol()).value;
            }
            const Scalar raw_diff = lhs.raw - rhs.raw + corr_raw;
            const bool fail =
                lhs.snapped != rhs.snapped - corr_snapped;
            return {fail, false, scalar_to_double(abs_scalar(raw_diff))};
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

  /// delta(b_lift) = c_n pointwise (value-level proof identity).
  SuiteReport lift_suite(int samples, std::uint64_t seed, int jobs) const {
    SuiteReport rep = make_report("lift", samples, seed, n);
    Rng rng(seed);
    std::vector<std::vector<Word>> tuples;
    for (int i = 0; i < samples; ++i)
      tuples.push_back(random_tuple<G>(rng, pool_, max_len_, n + 1));
    auto outcomes = parallel_map<Outcome>(
        tuples.size(), jobs, [&](std::size_t i) -> Outcome {
          try {
            Scalar lift_sum{};
            for (const auto& [sign, sub] :
                 detail::trivial_delta_terms<G>(Tuple<G>(tuples[i])))
              lift_sum += Scalar(sign) * sys_.eval_b_lift(Tuple<G>(sub));
            auto cn = sys_.eval_c(n, Tuple<G>(tuples[i]));
            const Scalar diff = lift_sum - cn.raw;
            const bool fail =
                snap_to_integer(lift_sum, sys_.zigzag().snap_tol()).value !=
                cn.snapped;
            return {fail, false, scalar_to_double(abs_scalar(diff))};
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

  /// w_n integrality on random mapped top simplices, plus the full
  /// octahedral triangulation summing to total weight 1.
  SuiteReport stokes_suite(int samples, std::uint64_t seed, int jobs) const;

  /// Chain-side and cochain-side zig-zag identities plus the eta tower.
  SuiteReport zigzag_suite(int samples, std::uint64_t seed, int jobs) const;

  /// delta<a,b> = <delta a, b> + (-1)^p <a, delta b> over random (a,b).
  SuiteReport leibniz_suite(int samples, std::uint64_t seed, int jobs) const;

  /// Empirical |c_k| statistics over random (n+1)-tuples; report only.
  SuiteReport boundedness_suite(int k, int samples, std::uint64_t seed,
                                int jobs) const {
    SuiteReport rep = make_report("bounded", samples, seed, k);
    std::vector<int> ks = degrees(n, k);
    Rng rng(seed);
    struct Task {
      int k;
      std::vector<Word> tuple;
    };
    std::vector<Task> tasks;
    for (int kk : ks)
      for (int i = 0; i < samples; ++i)
        tasks.push_back({kk, random_tuple<G>(rng, pool_, max_len_, n + 1)});
    struct BOutcome {
      int status = 0;
      long long value = 0;
      double residual = 0.0;
    };
    auto outcomes = parallel_map<BOutcome>(
        tasks.size(), jobs, [&](std::size_t i) -> BOutcome {
          try {
            auto e = sys_.eval_c(tasks[i].k, Tuple<G>(tasks[i].tuple));
            return {0, e.snapped, e.residual};
          } catch (const GeometryError&) {
            return {2, 0, 0.0};
          } catch (const QuadratureNonConvergence&) {
            return {2, 0, 0.0};
          } catch (const SnapFailure& e) {
            return {1, 0, e.residual};
          }
        });
    long long sup = 0;
    for (const auto& o : outcomes) {
      if (o.status == 2) {
        ++rep.skipped;
        continue;
      }
      if (o.status == 1) {
        ++rep.failures;
        continue;
      }
      ++rep.checked;
      rep.max_residual = std::max(rep.max_residual, o.residual);
      sup = std::max(sup, std::abs(o.value));
      ++rep.histogram[o.value];
    }
    rep.stats["sup_abs"] = static_cast<double>(sup);
    return rep;
  }

 private:
  struct Outcome {
    bool fail = false;
    bool skip = false;
    double residual = 0.0;
  };

  static Scalar abs_scalar(const Scalar& s) {
    if constexpr (std::is_same_v<Scalar, Rational>)
      return boost::multiprecision::abs(s);
    else
      return std::abs(s);
  }

  SuiteReport make_report(const std::string& suite, int samples,
                          std::uint64_t seed, int k) const {
    SuiteReport rep;
    rep.suite = suite;
    rep.manifold = (n == 1) ? "circle" : "sphere";
    rep.k = k;
    rep.samples = samples;
    rep.seed = seed;
    return rep;
  }

  static std::vector<int> degrees(int max_k, int k) {
    std::vector<int> ks;
    if (k >= 0) {
      ks.push_back(k);
    } else {
      for (int kk = 0; kk <= max_k; ++kk) ks.push_back(kk);
    }
    return ks;
  }

  void reduce(SuiteReport& rep, const std::vector<Outcome>& outcomes) const {
    for (const auto& o : outcomes) {
      if (o.skip) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (o.fail) ++rep.failures;
      rep.max_residual = std::max(rep.max_residual, o.residual);
    }
  }

  Cocycles<G> sys_;
  std::vector<Word> pool_;
  int max_len_;
};

}  // namespace coc

#include "coc/suites_detail.hpp"
