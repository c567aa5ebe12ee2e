#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "coc/errors.hpp"

namespace coc {

/// Coefficient ring tag of a singular cochain evaluator.
enum class Coeff { Integer, Real, Mod1 };

// ---------------------------------------------------------------------------
// Singular chains

/// Finite integer combination of mapped simplices of one dimension.
/// The zero chain is the empty term list.
template <class G>
struct Chain {
  using Simplex = typename G::Simplex;
  int dim = 0;
  std::vector<std::pair<std::int64_t, Simplex>> terms;

  static Chain zero(int dim) { return Chain{dim, {}}; }

  static Chain single(const Simplex& s, std::int64_t coeff = 1) {
    Chain c{s.dim, {}};
    if (coeff != 0) c.terms.emplace_back(coeff, s);
    return c;
  }

  Chain& operator+=(const Chain& o) {
    if (o.terms.empty()) return *this;
    if (terms.empty())
      dim = o.dim;
    else if (dim != o.dim)
      throw DimensionMismatch("chain sum across dimensions");
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
  }

  Chain operator*(std::int64_t k) const {
    Chain c{dim, {}};
    if (k == 0) return c;
    c.terms.reserve(terms.size());
    for (const auto& [coeff, s] : terms) c.terms.emplace_back(k * coeff, s);
    return c;
  }

  Chain operator-() const { return (*this) * -1; }
};

/// Combine structurally equal simplices (same base data, same prefix word)
/// and drop zero terms.  Deterministic output order (sorted by key).
template <class G>
Chain<G> canonicalized(const Chain<G>& c) {
  std::map<std::string, std::pair<std::int64_t, typename G::Simplex>> acc;
  for (const auto& [coeff, s] : c.terms) {
    auto [it, inserted] = acc.try_emplace(G::key(s), coeff, s);
    if (!inserted) it->second.first += coeff;
  }
  Chain<G> out{c.dim, {}};
  for (auto& [k, v] : acc)
    if (v.first != 0) out.terms.emplace_back(v.first, v.second);
  return out;
}

template <class G>
bool is_zero_chain(const Chain<G>& c) {
  return canonicalized(c).terms.empty();
}

/// Left G-action on chains (pushforward, term by term).
template <class G>
Chain<G> act(const typename G::Word& g, const Chain<G>& c) {
  Chain<G> out{c.dim, {}};
  out.terms.reserve(c.terms.size());
  for (const auto& [coeff, s] : c.terms)
    out.terms.emplace_back(coeff, G::act(g, s));
  return out;
}

/// Simplicial boundary, alternating sum of faces.
template <class G>
Chain<G> boundary(const typename G::Simplex& s) {
  Chain<G> out{s.dim - 1, {}};
  for (auto& [coeff, f] : G::boundary_faces(s)) out.terms.emplace_back(coeff, f);
  return out;
}

template <class G>
Chain<G> boundary(const Chain<G>& c) {
  Chain<G> out{c.dim - 1, {}};
  for (const auto& [coeff, s] : c.terms) out += boundary<G>(s) * coeff;
  return out;
}

// ---------------------------------------------------------------------------
// Singular cochains as evaluator procedures

/// A singular q-cochain represented by a procedure; the linear extension to
/// chains is eval().  C^q(M) is infinite-dimensional, so cochains are never
/// stored as tables.
template <class G>
struct Evaluator {
  using Scalar = typename G::Scalar;
  using Simplex = typename G::Simplex;

  int dim = 0;
  Coeff coeff = Coeff::Real;
  std::function<Scalar(const Simplex&)> eval_simplex;

  Scalar operator()(const Simplex& s) const {
    if (s.dim != dim) throw DimensionMismatch("evaluator/simplex dimension");
    return eval_simplex(s);
  }

  Scalar eval(const Chain<G>& c) const {
    if (!c.terms.empty() && c.dim != dim)
      throw DimensionMismatch("evaluator/chain dimension");
    Scalar total{};
    for (const auto& [k, s] : c.terms)
      total += Scalar(k) * eval_simplex(s);
    return total;
  }
};

/// Right action by pullback: (a.g)(sigma) = a(g.sigma).
template <class G>
Evaluator<G> pullback(const Evaluator<G>& a, const typename G::Word& g) {
  return Evaluator<G>{a.dim, a.coeff,
                      [a, g](const typename G::Simplex& s) {
                        return a.eval_simplex(G::act(g, s));
                      }};
}

/// Singular coboundary d: (da)(sigma) = a(boundary sigma).
template <class G>
Evaluator<G> singular_coboundary(const Evaluator<G>& a) {
  return Evaluator<G>{a.dim + 1, a.coeff,
                      [a](const typename G::Simplex& s) {
                        return a.eval(boundary<G>(s));
                      }};
}

/// Pointwise combination sum_i k_i * a_i of same-dimension evaluators.
template <class G>
Evaluator<G> combine(std::vector<std::pair<std::int64_t, Evaluator<G>>> parts) {
  if (parts.empty()) throw Error("combine: empty evaluator list");
  auto shared =
      std::make_shared<std::vector<std::pair<std::int64_t, Evaluator<G>>>>(
          std::move(parts));
  const int dim = (*shared)[0].second.dim;
  const Coeff coeff = (*shared)[0].second.coeff;
  return Evaluator<G>{dim, coeff,
                      [shared](const typename G::Simplex& s) {
                        typename G::Scalar total{};
                        for (const auto& [k, a] : *shared)
                          total += typename G::Scalar(k) * a.eval_simplex(s);
                        return total;
                      }};
}

// ---------------------------------------------------------------------------
// Group cochains valued in chains, cochains, or plain coefficients

template <class G>
using Tuple = std::span<const typename G::Word>;

/// Element of C^p_grp(G; C_q(M)) - the left-module side.
template <class G>
struct ChainValued {
  int p = 0;  // group degree
  int q = 0;  // singular dimension
  std::function<Chain<G>(Tuple<G>)> at;
};

/// Element of C^p_grp(G; C^q(M)) - the right-module side.
template <class G>
struct FormValued {
  int p = 0;
  int q = 0;
  Coeff coeff = Coeff::Real;
  std::function<Evaluator<G>(Tuple<G>)> at;
};

/// Element of C^p_grp(G; A) with trivial coefficients A.
template <class G>
struct ScalarValued {
  int p = 0;
  Coeff coeff = Coeff::Real;
  std::function<typename G::Scalar(Tuple<G>)> at;
};

namespace detail {

template <class G>
std::vector<typename G::Word> merged_tuple(Tuple<G> t, int i) {
  // (g_1, ..., g_i g_{i+1}, ..., g_{p+1}); i is 1-based as in the formula.
  std::vector<typename G::Word> m;
  m.reserve(t.size() - 1);
  for (int j = 0; j < static_cast<int>(t.size()); ++j) {
    if (j == i - 1) {
      m.push_back(compose(t[j], t[j + 1]));
      ++j;
    } else {
      m.push_back(t[j]);
    }
  }
  return m;
}

inline std::int64_t alt(int i) { return (i % 2 == 0) ? 1 : -1; }

}  // namespace detail

/// Left-module coboundary:
///   (dc)(g_1,...,g_{p+1}) = g_1 . c(g_2,...,g_{p+1})
///                           + sum_i (-1)^i c(..., g_i g_{i+1}, ...)
///                           + (-1)^{p+1} c(g_1,...,g_p).
template <class G>
ChainValued<G> group_coboundary(const ChainValued<G>& c) {
  const int p = c.p;
  return ChainValued<G>{
      p + 1, c.q, [c, p](Tuple<G> t) {
        if (static_cast<int>(t.size()) != p + 1)
          throw DimensionMismatch("group coboundary: tuple arity");
        Chain<G> out = act<G>(t[0], c.at(t.subspan(1)));
        for (int i = 1; i <= p; ++i) {
          auto m = detail::merged_tuple<G>(t, i);
          out += c.at(Tuple<G>(m)) * detail::alt(i);
        }
        out += c.at(t.first(p)) * detail::alt(p + 1);
        return out;
      }};
}

/// Right-module coboundary; the last term acts by pullback:
///   (dc)(g_1,...,g_{p+1}) = c(g_2,...,g_{p+1})
///                           + sum_i (-1)^i c(..., g_i g_{i+1}, ...)
///                           + (-1)^{p+1} c(g_1,...,g_p) . g_{p+1}.
template <class G>
FormValued<G> group_coboundary(const FormValued<G>& w) {
  const int p = w.p;
  return FormValued<G>{
      p + 1, w.q, w.coeff, [w, p](Tuple<G> t) {
        if (static_cast<int>(t.size()) != p + 1)
          throw DimensionMismatch("group coboundary: tuple arity");
        std::vector<std::pair<std::int64_t, Evaluator<G>>> parts;
        parts.emplace_back(1, w.at(t.subspan(1)));
        for (int i = 1; i <= p; ++i) {
          auto m = detail::merged_tuple<G>(t, i);
          parts.emplace_back(detail::alt(i), w.at(Tuple<G>(m)));
        }
        parts.emplace_back(detail::alt(p + 1),
                           pullback<G>(w.at(t.first(p)), t[p]));
        return combine<G>(std::move(parts));
      }};
}

/// Trivial-coefficient coboundary (both module formulas collapse).
template <class G>
ScalarValued<G> group_coboundary(const ScalarValued<G>& c) {
  const int p = c.p;
  return ScalarValued<G>{
      p + 1, c.coeff, [c, p](Tuple<G> t) {
        if (static_cast<int>(t.size()) != p + 1)
          throw DimensionMismatch("group coboundary: tuple arity");
        typename G::Scalar out = c.at(t.subspan(1));
        for (int i = 1; i <= p; ++i) {
          auto m = detail::merged_tuple<G>(t, i);
          out += typename G::Scalar(detail::alt(i)) * c.at(Tuple<G>(m));
        }
        out += typename G::Scalar(detail::alt(p + 1)) * c.at(t.first(p));
        return out;
      }};
}

/// Pairing convention: front arguments feed the cochain side, back
/// arguments the chain side, no translation factor,
///   <a,b>(g_1,...,g_{p+q}) = < a(g_1,...,g_p), b(g_{p+1},...,g_{p+q}) >.
/// Together with the adjunction <a.g, s> = <a, g.s> this is exactly what
/// makes d<a,b> = <da,b> + (-1)^p <a,db> hold; the Leibniz property test
/// guards the convention.
template <class G>
ScalarValued<G> pair_cochains(const FormValued<G>& a, const ChainValued<G>& b) {
  if (a.q != b.q)
    throw DimensionMismatch("pairing: singular dimensions disagree");
  const int pa = a.p, pb = b.p;
  return ScalarValued<G>{
      pa + pb, a.coeff, [a, b, pa, pb](Tuple<G> t) {
        if (static_cast<int>(t.size()) != pa + pb)
          throw DimensionMismatch("pairing: tuple arity");
        return a.at(t.first(pa)).eval(b.at(t.subspan(pa)));
      }};
}

}  // namespace coc
