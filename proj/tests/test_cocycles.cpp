#include <doctest.h>

#include "test_util.hpp"

using namespace coc;
using CG = CircleGeometry;
using SG = SphereGeometry;

namespace {

std::vector<CircleWord> rot_tuple(std::initializer_list<Rational> turns) {
  std::vector<CircleWord> t;
  for (const auto& s : turns) t.push_back(CircleWord::rotation(s));
  return t;
}

}  // namespace

TEST_CASE("circle closed forms") {
  const auto sys = coctest::circle_system();

  SUBCASE("c_0(R_a, R_b) = -floor(a~ + b~)") {
    const auto t = rot_tuple({Rational(1, 2), Rational(3, 4)});
    const auto e = sys.eval_c(0, Tuple<CG>(t));
    CHECK(e.snapped == -1);
    CHECK(e.residual == 0.0);
    CHECK(e.raw == Rational(-1));

    Rng rng(901);
    for (int i = 0; i < 200; ++i) {
      const Rational a = rng.rational(97), b = rng.rational(97);
      const auto tup = rot_tuple({a, b});
      const long long expect =
          -rational_floor(frac_lift(a) + frac_lift(b)).convert_to<long long>();
      CHECK(sys.eval_c(0, Tuple<CG>(tup)).snapped == expect);
    }
  }

  SUBCASE("identity in the leading slot gives 0") {
    std::vector<CircleWord> t{CircleWord::identity(),
                              CircleWord::rotation(Rational(5, 7))};
    CHECK(sys.eval_c(0, Tuple<CG>(t)).snapped == 0);
  }

  SUBCASE("c_1 equals c_0 pointwise") {
    Rng rng(902);
    for (int i = 0; i < 100; ++i) {
      const auto t = rot_tuple({rng.rational(53), rng.rational(53)});
      CHECK(sys.eval_c(1, Tuple<CG>(t)).snapped ==
            sys.eval_c(0, Tuple<CG>(t)).snapped);
    }
  }

  SUBCASE("b_0(R_s) = -s mod 1, exactly") {
    const auto t = rot_tuple({Rational(1, 3)});
    const auto e = sys.eval_b(0, Tuple<CG>(t));
    CHECK(e.mod1 == Rational(2, 3));
    const auto id = std::vector<CircleWord>{CircleWord::identity()};
    CHECK(sys.eval_b(0, Tuple<CG>(id)).mod1 == Rational(0));
  }

  SUBCASE("b_lift is the real-valued lift") {
    const auto t = rot_tuple({Rational(1, 3)});
    CHECK(sys.eval_b_lift(Tuple<CG>(t)) == Rational(-1, 3));
  }

  SUBCASE("delta b_lift = c_1 exactly") {
    Rng rng(903);
    for (int i = 0; i < 100; ++i) {
      const auto t = rot_tuple({rng.rational(43), rng.rational(43)});
      Rational lhs{};
      for (const auto& [sign, sub] :
           detail::trivial_delta_terms<CG>(Tuple<CG>(t)))
        lhs += Rational(sign) * sys.eval_b_lift(Tuple<CG>(sub));
      CHECK(lhs == sys.eval_c(1, Tuple<CG>(t)).raw);
    }
  }
}

TEST_CASE("degenerate sphere tuples") {
  const auto sys = coctest::sphere_system();
  const SphereWord id = SphereWord::identity();
  std::vector<SphereWord> triple{id, id, id};
  CHECK(sys.eval_c(2, Tuple<SG>(triple)).snapped == 0);

  const Config cfg = coctest::sphere_config();
  std::vector<SphereWord> pair{cfg.sphere_pool[0], id};
  CHECK(frac_lift(sys.eval_b(1, Tuple<SG>(pair)).raw) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("verification suites on small samples") {
  SUBCASE("circle suites are exact") {
    const Config cfg = coctest::circle_config();
    SuiteRunner<CG> runner(coctest::circle_system(), cfg.circle_pool,
                           cfg.max_word_length);
    for (const char* name :
         {"cocycle_c", "cocycle_b", "telescoping", "lift", "stokes", "zigzag",
          "leibniz"}) {
      const auto rep = runner.run(name, 25, 1234, -1, 2);
      INFO(name);
      CHECK(rep.pass());
      CHECK(rep.max_residual == 0.0);
      CHECK(rep.skipped == 0);
    }
  }

  SUBCASE("sphere suites hold within tolerance") {
    const Config cfg = coctest::sphere_config();
    SuiteRunner<SG> runner(coctest::sphere_system(), cfg.sphere_pool,
                           cfg.max_word_length);
    for (const char* name : {"cocycle_b", "telescoping", "lift", "zigzag"}) {
      const auto rep = runner.run(name, 5, 1234, -1, 2);
      INFO(name);
      CHECK(rep.pass());
      CHECK(rep.max_residual < 1e-6);
    }
    const auto c2 = runner.run("cocycle_c", 3, 99, 2, 2);
    CHECK(c2.pass());
  }

  SUBCASE("unknown suite name is a parse error") {
    const Config cfg = coctest::circle_config();
    SuiteRunner<CG> runner(coctest::circle_system(), cfg.circle_pool, 4);
    CHECK_THROWS_AS(runner.run("nope", 1, 1, -1, 1), ParseError);
  }
}

TEST_CASE("boundedness sampling") {
  const Config cfg = coctest::circle_config();
  SuiteRunner<CG> runner(coctest::circle_system(), cfg.circle_pool,
                         cfg.max_word_length);
  const auto rep = runner.run("bounded", 300, 31337, 0, 2);
  CHECK(rep.stats.at("sup_abs") == 1.0);
  for (const auto& [value, count] : rep.histogram)
    CHECK((value == 0 || value == -1));
}

TEST_CASE("cocycle values do not depend on word spelling") {
  const auto sys = coctest::circle_system();
  const CircleWord g = CircleWord::rotation(Rational(2, 7));
  const CircleWord h = CircleWord::rotation(Rational(3, 5));
  // g g^-1 h is a different spelling of h
  const CircleWord spelled = compose(compose(g, invert(g)), h);
  const auto t1 = std::vector<CircleWord>{h, g};
  const auto t2 = std::vector<CircleWord>{spelled, g};
  CHECK(sys.eval_c(0, Tuple<CG>(t1)).snapped ==
        sys.eval_c(0, Tuple<CG>(t2)).snapped);
  CHECK(sys.eval_c(1, Tuple<CG>(t1)).snapped ==
        sys.eval_c(1, Tuple<CG>(t2)).snapped);

  const Config scfg = coctest::sphere_config();
  const auto ssys = coctest::sphere_system();
  const SphereWord a = scfg.sphere_pool[3];
  const SphereWord b = scfg.sphere_pool[1];
  const SphereWord spelled_b = compose(compose(a, invert(a)), b);
  std::vector<SphereWord> s1{b, a, scfg.sphere_pool[0]};
  std::vector<SphereWord> s2{spelled_b, a, scfg.sphere_pool[0]};
  CHECK(ssys.eval_c(2, Tuple<SG>(s1)).snapped ==
        ssys.eval_c(2, Tuple<SG>(s2)).snapped);
}

TEST_CASE("snap failure aborts instead of rounding") {
  CHECK_THROWS_AS(snap_to_integer(0.4, 1e-6), SnapFailure);
  CHECK_THROWS_AS(snap_to_integer(Rational(1, 3), 1e-6), SnapFailure);
  CHECK(snap_to_integer(2.0 - 1e-9, 1e-6).value == 2);
  CHECK(snap_to_integer(Rational(-7), 1e-6).value == -7);
}
