#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "coc/chains.hpp"
#include "coc/circle.hpp"
#include "coc/snf.hpp"
#include "coc/sphere.hpp"

namespace coc {

// ---------------------------------------------------------------------------
// Bar chains over an abstract group.  The Grp policy supplies the element
// type, multiplication, and a canonical key identifying the group element
// (so cancellation happens at element level, not word-spelling level).

template <class Grp>
struct BarChain {
  int degree = 0;
  std::vector<std::pair<long long, std::vector<typename Grp::Elem>>> terms;
};

template <class Grp>
BarChain<Grp> bar_canonicalized(const Grp& grp, const BarChain<Grp>& z) {
  std::map<std::string,
           std::pair<long long, std::vector<typename Grp::Elem>>>
      acc;
  for (const auto& [coeff, tuple] : z.terms) {
    std::string key;
    for (const auto& e : tuple) key += grp.key(e) + "|";
    auto [it, inserted] = acc.try_emplace(key, coeff, tuple);
    if (!inserted) it->second.first += coeff;
  }
  BarChain<Grp> out{z.degree, {}};
  for (auto& [k, v] : acc)
    if (v.first != 0) out.terms.push_back(std::move(v));
  return out;
}

/// Inhomogeneous bar differential with trivial coefficients:
/// drop first, merge adjacent, drop last, with alternating signs.
template <class Grp>
BarChain<Grp> bar_boundary(const Grp& grp, const BarChain<Grp>& z) {
  using Elem = typename Grp::Elem;
  if (z.degree < 1) throw DimensionMismatch("bar_boundary: degree 0 chain");
  BarChain<Grp> out{z.degree - 1, {}};
  for (const auto& [coeff, t] : z.terms) {
    const int d = z.degree;
    out.terms.emplace_back(coeff, std::vector<Elem>(t.begin() + 1, t.end()));
    for (int i = 1; i < d; ++i) {
      std::vector<Elem> merged;
      merged.reserve(d - 1);
      for (int j = 0; j < d; ++j) {
        if (j == i - 1) {
          merged.push_back(grp.mul(t[j], t[j + 1]));
          ++j;
        } else {
          merged.push_back(t[j]);
        }
      }
      out.terms.emplace_back((i % 2 == 0 ? coeff : -coeff), std::move(merged));
    }
    out.terms.emplace_back((z.degree % 2 == 0 ? coeff : -coeff),
                           std::vector<Elem>(t.begin(), t.end() - 1));
  }
  return out;
}

template <class Grp>
bool bar_is_cycle(const Grp& grp, const BarChain<Grp>& z) {
  if (z.degree == 0) return true;
  return bar_canonicalized(grp, bar_boundary(grp, z)).terms.empty();
}

// ---------------------------------------------------------------------------
// Concrete groups

/// Finite rotation subgroup with an exact multiplication table; elements
/// act through single-rotation words.
template <class G>
struct FiniteSubgroup {
  std::string label;
  std::vector<typename G::Word> elements;  // [0] is the identity
  Eigen::MatrixXi table;                   // table(i,j) = index of e_i e_j

  int size() const { return static_cast<int>(elements.size()); }
};

/// Bar-chain policy for table-indexed elements.
struct IndexedGroup {
  using Elem = int;
  const Eigen::MatrixXi* table = nullptr;
  Elem mul(Elem a, Elem b) const { return (*table)(a, b); }
  std::string key(Elem a) const { return std::to_string(a); }
};

/// Bar-chain policy for circle rotation words: elements compose as words
/// but are identified by their exact total rotation mod 1.
struct CircleWordGroup {
  using Elem = CircleWord;
  Elem mul(const Elem& a, const Elem& b) const { return compose(a, b); }
  std::string key(const Elem& e) const {
    return rational_to_string(frac_lift(e.total_turns()));
  }
};

using IndexedBarChain = BarChain<IndexedGroup>;

// Subgroup constructors (exact tables from the abstract presentations).
FiniteSubgroup<SphereGeometry> cyclic_subgroup(int m, const Vec3& axis);
FiniteSubgroup<SphereGeometry> klein4_subgroup();
FiniteSubgroup<SphereGeometry> dihedral_subgroup(int m);
FiniteSubgroup<CircleGeometry> circle_cyclic_subgroup(int m);

/// Parse CLI subgroup specs: "cyclic:5", "cyclic:5:axis=0,0,1", "klein4",
/// "dihedral:3".
template <class G>
FiniteSubgroup<G> parse_subgroup(const std::string& spec);

/// Verify closure/associativity of the table (used by tests and at
/// construction in debug paths).
bool table_is_group(const Eigen::MatrixXi& table);

// ---------------------------------------------------------------------------
// Cycle spaces of the bar complex

struct CycleSpace {
  int degree = 0;
  long long chain_dim = 0;                  // |G|^degree
  std::vector<IndexedBarChain> kernel_basis;
  std::vector<Integer> torsion;             // nonunit invariant factors of H_d
  long long free_rank = 0;
  // One generator per torsion factor, then one per free factor (order 0).
  std::vector<std::pair<Integer, IndexedBarChain>> generators;
};

/// Matrix of the bar differential C_d -> C_{d-1} over the index basis
/// tuple -> sum_i g_i |G|^i.
IntMatrix bar_boundary_matrix(const Eigen::MatrixXi& table, int degree);

/// Kernel basis of the degree-d bar differential plus the invariant
/// factors of H_d (needs the (d+1)-st differential as well).
/// Throws CapExceeded when |G|^(d+1) exceeds cap.
CycleSpace find_cycles(const Eigen::MatrixXi& table, int degree,
                       long long cap = 8000);

/// Evaluate a trivial-coefficient group cochain on a bar cycle.
/// Throws NotACycle unless the boundary cancels; checks the degree.
/// Tuple values are memoized by element key (pass a memo to share the
/// cache across many cycles of the same subgroup).
template <class G, class Grp>
typename G::Scalar evaluate_on_cycle(
    const ScalarValued<G>& cochain, const Grp& grp,
    const std::function<typename G::Word(const typename Grp::Elem&)>& word_of,
    const BarChain<Grp>& z,
    std::map<std::string, typename G::Scalar>* memo = nullptr) {
  if (z.degree != cochain.p)
    throw DimensionMismatch("evaluate_on_cycle: cycle/cochain degree");
  if (!bar_is_cycle(grp, z)) throw NotACycle("bar chain has nonzero boundary");
  std::map<std::string, typename G::Scalar> local;
  if (memo == nullptr) memo = &local;
  typename G::Scalar total{};
  for (const auto& [coeff, tuple] : z.terms) {
    std::string key;
    for (const auto& e : tuple) key += grp.key(e) + "|";
    auto it = memo->find(key);
    if (it == memo->end()) {
      std::vector<typename G::Word> words;
      words.reserve(tuple.size());
      for (const auto& e : tuple) words.push_back(word_of(e));
      it = memo->emplace(key, cochain.at(Tuple<G>(words))).first;
    }
    total += typename G::Scalar(coeff) * it->second;
  }
  return total;
}

/// Fundamental-class cycle of a genus-g surface with commuting holonomies:
/// sum_i ([a_i|b_i] - [b_i|a_i]) for images (a_1,b_1,...,a_g,b_g).
/// Throws NotCommuting if some pair fails to commute.
BarChain<CircleWordGroup> surface_cycle(const std::vector<CircleWord>& images);

}  // namespace coc
