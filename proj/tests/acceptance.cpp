// Acceptance suite: runs the library's end-to-end guarantees at their
// stated tolerances and prints one pass/fail line per criterion.
//
//   acceptance [criterion] [path-to-cli]
//
// With no arguments all criteria run (criterion 10 needs the CLI path).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "coc/cocycles.hpp"
#include "coc/config.hpp"
#include "coc/grouphomology.hpp"

using namespace coc;
using CG = CircleGeometry;
using SG = SphereGeometry;

namespace {

struct Criterion {
  int id;
  std::string label;
  std::function<void(std::string&)> run;  // throws or appends detail on fail
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Config circle_cfg() { return default_config("circle"); }
Config sphere_cfg() { return default_config("sphere"); }

Cocycles<CG> circle_system() {
  return Cocycles<CG>{Zigzag<CG>(circle_cfg().circle_geometry())};
}

Cocycles<SG> sphere_system(const Config& cfg) {
  return Cocycles<SG>{Zigzag<SG>(cfg.sphere_geometry(), cfg.snap_tol)};
}

std::vector<CircleWord> rotations(std::initializer_list<Rational> turns) {
  std::vector<CircleWord> t;
  for (const auto& s : turns) t.push_back(CircleWord::rotation(s));
  return t;
}

// --------------------------------------------------------------- criterion 1
void criterion_circle_exactness(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sys = circle_system();
  Rng rng(circle_cfg().seed);
  for (int i = 0; i < 1000; ++i) {
    const Rational a = rng.rational(997), b = rng.rational(997);
    const auto tup = rotations({a, b});
    const auto e0 = sys.eval_c(0, Tuple<CG>(tup));
    const long long expect =
        -rational_floor(frac_lift(a) + frac_lift(b)).convert_to<long long>();
    require(e0.residual == 0.0, "c_0 residual must be exactly 0");
    require(e0.snapped == expect, "c_0 closed form mismatch");
    const auto e1 = sys.eval_c(1, Tuple<CG>(tup));
    require(e1.residual == 0.0, "c_1 residual must be exactly 0");
    require(e1.snapped == e0.snapped, "c_1 must equal c_0 pointwise");
  }
  const double dt = seconds_since(t0);
  require(dt < 1.0, "runtime exceeded 1 s");
  detail = "1000 tuples, exact, " + std::to_string(dt) + " s";
}

// --------------------------------------------------------------- criterion 2
void criterion_circle_b_shadow(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sys = circle_system();
  Rng rng(circle_cfg().seed + 1);
  for (int i = 0; i < 1000; ++i) {
    const Rational s = rng.rational(997);
    const auto tup = rotations({s});
    require(sys.eval_b(0, Tuple<CG>(tup)).mod1 == frac_lift(-s),
            "b_0 closed form mismatch");
  }
  for (int i = 0; i < 1000; ++i) {
    const auto tup = rotations({rng.rational(499), rng.rational(499)});
    Rational lhs{};
    for (const auto& [sign, sub] :
         detail::trivial_delta_terms<CG>(Tuple<CG>(tup)))
      lhs += Rational(sign) * sys.eval_b_lift(Tuple<CG>(sub));
    require(lhs == sys.eval_c(1, Tuple<CG>(tup)).raw,
            "delta(b_lift) must equal c_1 exactly");
  }
  const double dt = seconds_since(t0);
  require(dt < 1.0, "runtime exceeded 1 s");
  detail = "1000 + 1000 samples, exact, " + std::to_string(dt) + " s";
}

// --------------------------------------------------------------- criterion 3
void criterion_cocycle_identities(std::string& detail) {
  const Config ccfg = circle_cfg();
  SuiteRunner<CG> crunner(circle_system(), ccfg.circle_pool,
                          ccfg.max_word_length);
  const auto crep = crunner.run("cocycle_c", 1000, ccfg.seed, -1, 8);
  require(crep.pass() && crep.skipped == 0, "circle cocycle_c failed");
  require(crep.max_residual == 0.0, "circle residual must be exactly 0");

  const auto t0 = std::chrono::steady_clock::now();
  const Config scfg = sphere_cfg();
  SuiteRunner<SG> srunner(sphere_system(scfg), scfg.sphere_pool,
                          scfg.max_word_length);
  std::ostringstream os;
  for (int k = 0; k <= 2; ++k) {
    const auto rep = srunner.run("cocycle_c", 100, scfg.seed, k, 8);
    require(rep.pass() && rep.skipped == 0,
            "sphere cocycle_c failed at k=" + std::to_string(k));
    require(rep.max_residual < 1e-6,
            "sphere pre-snap residual exceeds 1e-6 at k=" + std::to_string(k));
    os << " k" << k << ":res=" << rep.max_residual;
  }
  const double dt = seconds_since(t0);
  require(dt < 600.0, "sphere runtime exceeded 10 min");
  detail = "circle exact;" + os.str() + "; sphere " + std::to_string(dt) + " s";
}

// --------------------------------------------------------------- criterion 4
void criterion_leibniz(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const Config cfg = circle_cfg();
  SuiteRunner<CG> runner(circle_system(), cfg.circle_pool,
                         cfg.max_word_length);
  const auto rep = runner.run("leibniz", 200, cfg.seed, -1, 8);
  require(rep.pass() && rep.skipped == 0, "leibniz suite failed");
  require(rep.max_residual == 0.0, "leibniz must be exact on the circle");
  const double dt = seconds_since(t0);
  require(dt < 5.0, "runtime exceeded 5 s");
  detail = "200 samples over all splits p+q<=3, exact, " +
           std::to_string(dt) + " s";
}

// --------------------------------------------------------------- criterion 5
void criterion_telescoping(std::string& detail) {
  const Config ccfg = circle_cfg();
  SuiteRunner<CG> crunner(circle_system(), ccfg.circle_pool,
                          ccfg.max_word_length);
  const auto crep = crunner.run("telescoping", 50, ccfg.seed, 1, 8);
  require(crep.pass() && crep.max_residual == 0.0,
          "circle telescoping must be exact");

  const Config scfg = sphere_cfg();
  SuiteRunner<SG> srunner(sphere_system(scfg), scfg.sphere_pool,
                          scfg.max_word_length);
  std::ostringstream os;
  for (int k = 1; k <= 2; ++k) {
    const auto rep = srunner.run("telescoping", 50, scfg.seed, k, 8);
    require(rep.pass() && rep.skipped == 0,
            "sphere telescoping failed at k=" + std::to_string(k));
    require(rep.max_residual < 1e-6, "sphere telescoping residual too large");
    os << " k" << k << ":res=" << rep.max_residual;
  }
  detail = "circle exact;" + os.str();
}

// --------------------------------------------------------------- criterion 6
void criterion_zigzag(std::string& detail) {
  const Config ccfg = circle_cfg();
  SuiteRunner<CG> crunner(circle_system(), ccfg.circle_pool,
                          ccfg.max_word_length);
  const auto crep = crunner.run("zigzag", 50, ccfg.seed, -1, 8);
  require(crep.pass() && crep.skipped == 0, "circle zigzag suite failed");
  require(crep.max_residual == 0.0, "circle zigzag must be exact");

  const Config scfg = sphere_cfg();
  SuiteRunner<SG> srunner(sphere_system(scfg), scfg.sphere_pool,
                          scfg.max_word_length);
  const auto srep = srunner.run("zigzag", 50, scfg.seed, -1, 8);
  require(srep.pass() && srep.skipped == 0, "sphere zigzag suite failed");
  require(srep.max_residual < 1e-6, "sphere zigzag residual exceeds 1e-6");
  detail = "50 samples per identity; sphere res=" +
           std::to_string(srep.max_residual);
}

// --------------------------------------------------------------- criterion 7
void criterion_stokes(std::string& detail) {
  const Config cfg = sphere_cfg();
  SuiteRunner<SG> runner(sphere_system(cfg), cfg.sphere_pool,
                         cfg.max_word_length);
  const auto rep = runner.run("stokes", 100, cfg.seed, -1, 8);
  require(rep.pass() && rep.skipped == 0, "stokes suite failed");
  require(rep.max_residual < 1e-6, "w_top residual exceeds 1e-6");
  require(rep.stats.at("octahedral_total") == 1.0,
          "octahedral triangulation total weight must be 1");
  detail = "100 simplices, res=" + std::to_string(rep.max_residual) +
           ", octahedral total = 1";
}

// --------------------------------------------------------------- criterion 8
void criterion_homology(std::string& detail) {
  std::ostringstream os;

  // (a) integer evaluations of c_2 vanish on degree-3 cycles of cyclic
  // subgroups, and are stable under 20 random boundary perturbations.
  {
    const Config cfg = sphere_cfg();
    const auto sys = sphere_system(cfg);
    for (int m = 2; m <= 5; ++m) {
      const auto grp = cyclic_subgroup(m, Vec3(0, 0, 1));
      const IndexedGroup ig{&grp.table};
      std::function<SphereWord(const int&)> word_of = [&](const int& i) {
        return grp.elements[i];
      };
      const auto cycles = find_cycles(grp.table, 3, cfg.homology_cap);
      std::map<std::string, double> memo;
      for (const auto& z : cycles.kernel_basis)
        require(evaluate_on_cycle<SG>(sys.c_snapped(2), ig, word_of, z,
                                      &memo) == 0.0,
                "c_2 must vanish on cyclic cycles");
      Rng rng(cfg.seed + m);
      for (const auto& [order, z] : cycles.generators) {
        for (int it = 0; it < 20; ++it) {
          BarChain<IndexedGroup> y{4, {}};
          for (int t = 0; t < 2; ++t) {
            std::vector<int> tup(4);
            for (auto& e : tup) e = static_cast<int>(rng.uniform(m));
            y.terms.emplace_back(1 + static_cast<int>(rng.uniform(2)),
                                 std::move(tup));
          }
          BarChain<IndexedGroup> zp = z;
          for (auto& term : bar_boundary(ig, y).terms)
            zp.terms.push_back(term);
          require(evaluate_on_cycle<SG>(sys.c_snapped(2), ig, word_of, zp,
                                        &memo) == 0.0,
                  "c_2 must be invariant under boundary perturbations");
        }
      }
    }
    os << "(a) cyclic m<=5: all 0;";
  }

  // (b) b_0 on [R_{1/m}] is (m-1)/m: a nonzero evaluation.
  {
    const auto sys = circle_system();
    for (int m = 2; m <= 5; ++m) {
      const auto grp = circle_cyclic_subgroup(m);
      const IndexedGroup ig{&grp.table};
      std::function<CircleWord(const int&)> word_of = [&](const int& i) {
        return grp.elements[i];
      };
      BarChain<IndexedGroup> z{1, {{1, {1}}}};
      const Rational v =
          frac_lift(evaluate_on_cycle<CG>(sys.b_mod1(0), ig, word_of, z));
      require(v == Rational(m - 1, m), "b_0 on [R_{1/m}] must be (m-1)/m");
      require(v != 0, "the evaluation must be nonzero");
    }
    os << " (b) b_0 = (m-1)/m;";
  }

  // (c) klein4: b_1 on the generating 2-cycle is 2-torsion and boundary
  // invariant.  Coordinate-axis half turns are degenerate for the default
  // pole, so this runs with the pole tilted off every coordinate axis.
  {
    Config cfg = sphere_cfg();
    cfg.pole = unitize(Vec3(-1.0, -2.0, -3.0));
    const auto sys = sphere_system(cfg);
    const auto grp = klein4_subgroup();
    const IndexedGroup ig{&grp.table};
    std::function<SphereWord(const int&)> word_of = [&](const int& i) {
      return grp.elements[i];
    };
    const auto cycles = find_cycles(grp.table, 2, cfg.homology_cap);
    require(cycles.torsion == std::vector<Integer>{2},
            "H_2(klein4) must be Z/2");
    std::map<std::string, double> memo;
    const auto& [order, z] = cycles.generators.front();
    const double v =
        frac_lift(evaluate_on_cycle<SG>(sys.b_mod1(1), ig, word_of, z, &memo));
    require(frac_lift(2 * v) < 1e-6, "2 b_1(z) must vanish mod 1");
    Rng rng(cfg.seed + 99);
    for (int it = 0; it < 20; ++it) {
      BarChain<IndexedGroup> y{3, {}};
      std::vector<int> tup(3);
      for (auto& e : tup) e = static_cast<int>(rng.uniform(4));
      y.terms.emplace_back(1 + static_cast<int>(rng.uniform(2)),
                           std::move(tup));
      BarChain<IndexedGroup> zp = z;
      for (auto& term : bar_boundary(ig, y).terms) zp.terms.push_back(term);
      const double vp = frac_lift(
          evaluate_on_cycle<SG>(sys.b_mod1(1), ig, word_of, zp, &memo));
      require(integer_residual(vp - v) < 1e-6,
              "b_1 must be invariant under boundary perturbations");
    }
    os << " (c) klein4 b_1=" << v << ";";
  }

  // (d) genus-2 abelian surface cycles have Euler number 0, exactly.
  {
    const auto sys = circle_system();
    const CircleWordGroup wg;
    std::function<CircleWord(const CircleWord&)> id_of =
        [](const CircleWord& w) { return w; };
    Rng rng(circle_cfg().seed + 4);
    for (int it = 0; it < 20; ++it) {
      std::vector<CircleWord> images;
      for (int i = 0; i < 4; ++i)
        images.push_back(CircleWord::rotation(rng.rational(211)));
      const auto z = surface_cycle(images);
      require(evaluate_on_cycle<CG>(sys.c_snapped(0), wg, id_of, z) ==
                  Rational(0),
              "genus-2 abelian Euler number must be 0");
    }
    os << " (d) genus-2 Euler number 0";
  }
  detail = os.str();
}

// --------------------------------------------------------------- criterion 9
void criterion_boundedness(std::string& detail) {
  const Config ccfg = circle_cfg();
  SuiteRunner<CG> crunner(circle_system(), ccfg.circle_pool,
                          ccfg.max_word_length);
  const auto crep = crunner.run("bounded", 500, ccfg.seed, 0, 8);
  require(crep.stats.at("sup_abs") == 1.0, "circle sup|c_0| must be 1");

  // Sphere: rotation-only words; the sample sup is reported, not asserted.
  Config scfg = sphere_cfg();
  std::vector<SphereWord> rotpool;
  for (const auto& w : scfg.sphere_pool)
    if (std::holds_alternative<AxisRotation>(w.letters[0].gen))
      rotpool.push_back(w);
  SuiteRunner<SG> srunner(sphere_system(scfg), rotpool, scfg.max_word_length);
  const auto srep = srunner.run("bounded", 500, scfg.seed, 2, 8);
  require(srep.failures == 0 && srep.skipped == 0, "sampling must not fail");
  require(std::isfinite(srep.stats.at("sup_abs")), "sup must be finite");
  std::ostringstream os;
  os << "circle sup=1; sphere c_2 sup=" << srep.stats.at("sup_abs")
     << " over 500 tuples (report only)";
  detail = os.str();
}

// -------------------------------------------------------------- criterion 10
struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
  CmdResult r;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void criterion_determinism(const std::string& cli, std::string& detail) {
  require(!cli.empty(), "pass the cocycle binary path as the second argument");
  const std::string dir = "/tmp/coc_acceptance_scratch";
  if (std::system(("mkdir -p " + dir).c_str()) != 0)
    throw Failure("cannot create scratch directory");
  const std::string cfg = dir + "/sphere.json";
  {
    FILE* f = fopen(cfg.c_str(), "w");
    require(f != nullptr, "cannot write scratch config");
    fputs("{\"manifold\": \"sphere\"}\n", f);
    fclose(f);
  }
  const std::string words = dir + "/words.json";
  {
    FILE* f = fopen(words.c_str(), "w");
    fputs(R"({"words": [
      [{"kind": "axis_rotation", "axis": [0, 0, 1], "turns": 0.17}],
      [{"kind": "twist", "axis": [0, 0, 1], "coeffs": [0.0, 0.2]}],
      []]})",
          f);
    fclose(f);
  }
  const std::string req = dir + "/request.json";
  {
    FILE* f = fopen(req.c_str(), "w");
    fputs(R"({"kind": "c", "k": 2, "tuples": [[0,1,0],[1,0,1],[2,2,2]]})", f);
    fclose(f);
  }

  for (const std::string suite : {"zigzag", "cocycle_b"}) {
    const auto a = run_cmd(cli + " verify --config " + cfg + " --suite " +
                           suite + " --samples 5 --jobs 1");
    const auto b = run_cmd(cli + " verify --config " + cfg + " --suite " +
                           suite + " --samples 5 --jobs 8");
    require(a.exit_code == 0 && b.exit_code == 0, "verify " + suite +
                                                      " did not pass");
    require(a.out == b.out, "verify " + suite + " reports differ across jobs");
    const auto c = run_cmd(cli + " verify --config " + cfg + " --suite " +
                           suite + " --samples 5 --jobs 8");
    require(b.out == c.out, "verify " + suite + " reports differ across runs");
  }
  const auto e1 = run_cmd(cli + " eval --config " + cfg + " --words " + words +
                          " --request " + req + " --jobs 1");
  const auto e8 = run_cmd(cli + " eval --config " + cfg + " --words " + words +
                          " --request " + req + " --jobs 8");
  require(e1.exit_code == 0 && e8.exit_code == 0, "eval did not pass");
  require(e1.out == e8.out, "eval reports differ across job counts");
  detail = "verify x2 suites and eval byte-identical for jobs in {1, 8}";
}

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::string cli = argc > 2 ? argv[2] : "";

  std::vector<Criterion> criteria = {
      {1, "circle exactness (c_0 closed form, c_1 = c_0)",
       criterion_circle_exactness},
      {2, "circle b-shadow (b_0 closed form, delta b_lift = c_1)",
       criterion_circle_b_shadow},
      {3, "cocycle identities (delta c_k = 0, both manifolds)",
       criterion_cocycle_identities},
      {4, "Leibniz rule for the pairing (circle, exact)", criterion_leibniz},
      {5, "telescoping c_k = c_{k-1} - delta<w,Delta>", criterion_telescoping},
      {6, "zig-zag tower identities", criterion_zigzag},
      {7, "Stokes integrality and octahedral total", criterion_stokes},
      {8, "homology pairings (cyclic, klein4, surface cycles)",
       criterion_homology},
      {9, "boundedness sampling", criterion_boundedness},
      {10, "byte-identical reports across runs and job counts",
       [&cli](std::string& d) { criterion_determinism(cli, d); }},
  };

  int failures = 0;
  for (auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(detail);
      std::printf("[PASS] criterion %2d: %s  (%.1f s)%s%s\n", c.id,
                  c.label.c_str(), seconds_since(t0),
                  detail.empty() ? "" : " -- ", detail.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] criterion %2d: %s -- %s\n", c.id, c.label.c_str(),
                  e.what());
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
