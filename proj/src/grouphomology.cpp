#include "coc/grouphomology.hpp"

#include <cmath>

namespace coc {

namespace {

Eigen::MatrixXi cyclic_table(int m) {
  Eigen::MatrixXi t(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t(i, j) = (i + j) % m;
  return t;
}

long long ipow(long long base, int e) {
  long long v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

std::vector<int> decode_tuple(long long index, int m, int degree) {
  std::vector<int> t(degree);
  for (int i = 0; i < degree; ++i) {
    t[i] = static_cast<int>(index % m);
    index /= m;
  }
  return t;
}

IndexedBarChain chain_from_vector(const std::vector<Integer>& v, int m,
                                  int degree) {
  IndexedBarChain z{degree, {}};
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] == 0) continue;
    z.terms.emplace_back(v[c].convert_to<long long>(),
                         decode_tuple(static_cast<long long>(c), m, degree));
  }
  return z;
}

}  // namespace

bool table_is_group(const Eigen::MatrixXi& table) {
  const int m = static_cast<int>(table.rows());
  if (table.cols() != m) return false;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (table(i, j) < 0 || table(i, j) >= m) return false;
  // identity = 0
  for (int i = 0; i < m; ++i)
    if (table(0, i) != i || table(i, 0) != i) return false;
  // associativity and cancellation
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (table(table(i, j), k) != table(i, table(j, k))) return false;
  return true;
}

FiniteSubgroup<SphereGeometry> cyclic_subgroup(int m, const Vec3& axis) {
  FiniteSubgroup<SphereGeometry> g;
  g.label = "cyclic:" + std::to_string(m);
  g.table = cyclic_table(m);
  g.elements.reserve(m);
  for (int j = 0; j < m; ++j)
    g.elements.push_back(
        SphereWord::rotation(axis, static_cast<double>(j) / m));
  return g;
}

FiniteSubgroup<SphereGeometry> klein4_subgroup() {
  FiniteSubgroup<SphereGeometry> g;
  g.label = "klein4";
  // {1, x, y, z}: half turns about the coordinate axes.
  Eigen::MatrixXi t(4, 4);
  t << 0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0;
  g.table = t;
  g.elements = {SphereWord::identity(), SphereWord::rotation(Vec3(1, 0, 0), 0.5),
                SphereWord::rotation(Vec3(0, 1, 0), 0.5),
                SphereWord::rotation(Vec3(0, 0, 1), 0.5)};
  return g;
}

FiniteSubgroup<SphereGeometry> dihedral_subgroup(int m) {
  // Elements r^j (index j) and s r^j (index m + j), with r the 1/m turn
  // about the z-axis and s the half turn about the x-axis: s r^j s = r^-j.
  FiniteSubgroup<SphereGeometry> g;
  g.label = "dihedral:" + std::to_string(m);
  const int sz = 2 * m;
  Eigen::MatrixXi t(sz, sz);
  auto idx = [m](int flip, int rot) { return flip * m + ((rot % m) + m) % m; };
  for (int f1 = 0; f1 < 2; ++f1)
    for (int r1 = 0; r1 < m; ++r1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int r2 = 0; r2 < m; ++r2) {
          // (s^f1 r^r1)(s^f2 r^r2) = s^{f1+f2} r^{r2 + (f2 ? -r1 : r1)}
          const int flip = (f1 + f2) % 2;
          const int rot = r2 + (f2 ? -r1 : r1);
          t(idx(f1, r1), idx(f2, r2)) = idx(flip, rot);
        }
  g.table = t;
  g.elements.reserve(sz);
  const SphereWord s = SphereWord::rotation(Vec3(1, 0, 0), 0.5);
  for (int f = 0; f < 2; ++f)
    for (int r = 0; r < m; ++r) {
      SphereWord w =
          SphereWord::rotation(Vec3(0, 0, 1), static_cast<double>(r) / m);
      if (f) w = compose(s, w);
      g.elements.push_back(w);
    }
  return g;
}

FiniteSubgroup<CircleGeometry> circle_cyclic_subgroup(int m) {
  FiniteSubgroup<CircleGeometry> g;
  g.label = "cyclic:" + std::to_string(m);
  g.table = cyclic_table(m);
  g.elements.reserve(m);
  for (int j = 0; j < m; ++j)
    g.elements.push_back(CircleWord::rotation(Rational(j, m)));
  return g;
}

namespace {

struct SubgroupSpec {
  std::string kind;
  int m = 0;
  Vec3 axis = Vec3(0, 0, 1);
};

SubgroupSpec parse_spec(const std::string& spec) {
  SubgroupSpec out;
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto next = spec.find(':', pos);
    parts.push_back(spec.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (parts.empty()) throw ParseError("empty subgroup spec");
  out.kind = parts[0];
  if (out.kind == "klein4") return out;
  if (out.kind != "cyclic" && out.kind != "dihedral")
    throw ParseError("unknown subgroup kind: " + parts[0]);
  if (parts.size() < 2) throw ParseError("subgroup spec needs an order");
  out.m = std::atoi(parts[1].c_str());
  if (out.m < 1) throw ParseError("subgroup order must be positive");
  if (parts.size() >= 3) {
    const std::string& axis = parts[2];
    if (axis.rfind("axis=", 0) != 0)
      throw ParseError("expected axis=x,y,z in subgroup spec");
    double x, y, z;
    if (std::sscanf(axis.c_str() + 5, "%lf,%lf,%lf", &x, &y, &z) != 3)
      throw ParseError("malformed axis in subgroup spec");
    out.axis = Vec3(x, y, z);
  }
  return out;
}

}  // namespace

template <>
FiniteSubgroup<SphereGeometry> parse_subgroup<SphereGeometry>(
    const std::string& spec) {
  const SubgroupSpec s = parse_spec(spec);
  if (s.kind == "klein4") return klein4_subgroup();
  if (s.kind == "cyclic") return cyclic_subgroup(s.m, unitize(s.axis));
  return dihedral_subgroup(s.m);
}

template <>
FiniteSubgroup<CircleGeometry> parse_subgroup<CircleGeometry>(
    const std::string& spec) {
  const SubgroupSpec s = parse_spec(spec);
  if (s.kind != "cyclic")
    throw ParseError("only cyclic subgroups act on the circle");
  return circle_cyclic_subgroup(s.m);
}

IntMatrix bar_boundary_matrix(const Eigen::MatrixXi& table, int degree) {
  const int m = static_cast<int>(table.rows());
  const long long rows = ipow(m, degree - 1);
  const long long cols = ipow(m, degree);
  IntMatrix M(static_cast<int>(rows), static_cast<int>(cols));
  IndexedGroup grp{&table};
  for (long long c = 0; c < cols; ++c) {
    const std::vector<int> t = decode_tuple(c, m, degree);
    auto add = [&](const std::vector<int>& face, long long sign) {
      long long r = 0;
      for (int i = degree - 2; i >= 0; --i) r = r * m + face[i];
      M(static_cast<int>(r), static_cast<int>(c)) += sign;
    };
    add(std::vector<int>(t.begin() + 1, t.end()), 1);
    for (int i = 1; i < degree; ++i) {
      std::vector<int> merged;
      merged.reserve(degree - 1);
      for (int j = 0; j < degree; ++j) {
        if (j == i - 1) {
          merged.push_back(grp.mul(t[j], t[j + 1]));
          ++j;
        } else {
          merged.push_back(t[j]);
        }
      }
      add(merged, (i % 2 == 0) ? 1 : -1);
    }
    add(std::vector<int>(t.begin(), t.end() - 1), (degree % 2 == 0) ? 1 : -1);
  }
  return M;
}

CycleSpace find_cycles(const Eigen::MatrixXi& table, int degree,
                       long long cap) {
  const int m = static_cast<int>(table.rows());
  if (degree < 1) throw DimensionMismatch("find_cycles: degree must be >= 1");
  if (ipow(m, degree + 1) > cap)
    throw CapExceeded("bar complex larger than the configured cap");

  CycleSpace out;
  out.degree = degree;
  out.chain_dim = ipow(m, degree);

  const SmithDecomposition snf_d = smith_normal_form(
      bar_boundary_matrix(table, degree));
  const IntMatrix K = snf_d.kernel_basis();
  for (int j = 0; j < K.cols(); ++j)
    out.kernel_basis.push_back(chain_from_vector(K.col(j), m, degree));

  // H_d = ker / im: express the image of the next differential in the
  // kernel basis and read the quotient off a second factorization.
  const IntMatrix M_next = bar_boundary_matrix(table, degree + 1);
  const SmithDecomposition snf_k = smith_normal_form(K);
  const IntMatrix X = solve_in_span(snf_k, M_next);
  const SmithDecomposition snf_x = smith_normal_form(X);

  const int kdim = K.cols();
  out.free_rank = kdim - snf_x.rank;
  for (int i = 0; i < snf_x.rank; ++i)
    if (snf_x.D(i, i) != 1) out.torsion.push_back(snf_x.D(i, i));
  for (int i = 0; i < snf_x.rank; ++i) {
    if (snf_x.D(i, i) == 1) continue;
    out.generators.emplace_back(
        snf_x.D(i, i), chain_from_vector(K.apply(snf_x.U.col(i)), m, degree));
  }
  for (int i = snf_x.rank; i < kdim; ++i)
    out.generators.emplace_back(
        Integer(0), chain_from_vector(K.apply(snf_x.U.col(i)), m, degree));
  return out;
}

BarChain<CircleWordGroup> surface_cycle(const std::vector<CircleWord>& images) {
  if (images.empty() || images.size() % 2 != 0)
    throw ParseError("surface_cycle needs 2g holonomy images");
  CircleWordGroup grp;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (grp.key(grp.mul(images[i], images[j])) !=
          grp.key(grp.mul(images[j], images[i])))
        throw NotCommuting("surface images must commute");
  BarChain<CircleWordGroup> z{2, {}};
  for (std::size_t i = 0; i + 1 < images.size(); i += 2) {
    z.terms.emplace_back(1, std::vector<CircleWord>{images[i], images[i + 1]});
    z.terms.emplace_back(-1, std::vector<CircleWord>{images[i + 1], images[i]});
  }
  if (!bar_is_cycle(grp, z))
    throw NotCommuting("surface cycle has nonzero boundary");
  return z;
}

}  // namespace coc
