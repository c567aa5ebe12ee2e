#include <doctest.h>

#include "test_util.hpp"

using namespace coc;

TEST_CASE("circle word application is exact") {
  CHECK(apply(CircleWord::identity(), CirclePoint(Rational(2, 5))).t ==
        Rational(2, 5));
  CHECK(apply(CircleWord::rotation(Rational(1, 3)), CirclePoint(Rational(1, 2)))
            .t == Rational(5, 6));
  // words never simplify, values do not depend on spelling
  CircleWord w = compose(CircleWord::rotation(Rational(1, 3)),
                         invert(CircleWord::rotation(Rational(1, 3))));
  w = compose(w, CircleWord::rotation(Rational(2, 7)));
  CHECK(w.letters.size() == 3);
  CHECK(apply(w, CirclePoint(Rational(0))).t == Rational(2, 7));
}

TEST_CASE("circle invert reverses and negates") {
  CHECK(invert(CircleWord::identity()).letters.empty());
  const CircleWord r = CircleWord::rotation(Rational(2, 9));
  CHECK(invert(r).letters[0].exponent == -1);
  const CircleWord w = compose(r, CircleWord::rotation(Rational(1, 4)));
  const CircleWord winv = invert(w);
  REQUIRE(winv.letters.size() == 2);
  CHECK(winv.letters[0].gen.turns == Rational(1, 4));
  CHECK(winv.letters[1].gen.turns == Rational(2, 9));
  const CirclePoint p(Rational(5, 11));
  CHECK(apply(winv, apply(w, p)).t == p.t);  // exact round trip
}

TEST_CASE("axis rotations act as expected") {
  const SphereWord q = SphereWord::rotation(Vec3(0, 0, 1), 0.25);
  const Vec3 img = apply(q, Vec3(1, 0, 0));
  CHECK((img - Vec3(0, 1, 0)).norm() < 1e-12);
  CHECK(apply(SphereWord::identity(), Vec3(0.6, 0, 0.8)) ==
        Vec3(0.6, 0, 0.8));
}

TEST_CASE("sphere invert round-trips within 1e-9") {
  Rng rng(42);
  const Config cfg = coctest::sphere_config();
  for (int i = 0; i < 50; ++i) {
    const SphereWord w =
        random_word<SphereGeometry>(rng, cfg.sphere_pool, 4);
    const Vec3 p = detail::random_unit(rng);
    CHECK((apply(invert(w), apply(w, p)) - p).norm() < 1e-9);
  }
  // reversed-and-negated structure: [T; R] -> [R^-1; T^-1]
  const SphereWord tw = SphereWord::twist(Vec3(0, 0, 1), {0.0, 0.1});
  const SphereWord ro = SphereWord::rotation(Vec3(1, 0, 0), 0.2);
  const SphereWord inv = invert(compose(tw, ro));
  REQUIRE(inv.letters.size() == 2);
  CHECK(std::holds_alternative<AxisRotation>(inv.letters[0].gen));
  CHECK(inv.letters[0].exponent == -1);
  CHECK(std::holds_alternative<Twist>(inv.letters[1].gen));
  CHECK(inv.letters[1].exponent == -1);
}

TEST_CASE("group law: composition acts as iterated application") {
  Rng rng(43);
  const Config cfg = coctest::sphere_config();
  for (int i = 0; i < 50; ++i) {
    const auto u = random_word<SphereGeometry>(rng, cfg.sphere_pool, 3);
    const auto v = random_word<SphereGeometry>(rng, cfg.sphere_pool, 3);
    const Vec3 p = detail::random_unit(rng);
    CHECK((apply(compose(u, v), p) - apply(u, apply(v, p))).norm() < 1e-10);
  }
}

TEST_CASE("differentials") {
  SUBCASE("identity word") {
    CHECK((word_differential(SphereWord::identity(), Vec3(0, 0, 1)) -
           Mat3::Identity())
              .norm() < 1e-15);
  }

  SUBCASE("rotations act linearly on tangent vectors") {
    const SphereWord r = SphereWord::rotation(unitize(Vec3(1, 1, 0)), 0.3);
    const Vec3 p = unitize(Vec3(0.2, -0.7, 0.5));
    const Mat3 jac = word_differential(r, p);
    // the differential of a rotation is the rotation matrix itself
    CHECK((jac * p - apply(r, p)).norm() < 1e-12);
    CHECK(std::abs((jac * Vec3(0.3, 0.1, -0.2)).norm() -
                   Vec3(0.3, 0.1, -0.2).norm()) < 1e-12);
    CHECK(std::abs(jac.determinant() - 1.0) < 1e-12);
  }

  SUBCASE("volume preservation: tangent determinant is 1 analytically") {
    Rng rng(44);
    const Config cfg = coctest::sphere_config();
    for (int i = 0; i < 100; ++i) {
      const auto w = random_word<SphereGeometry>(rng, cfg.sphere_pool, 4);
      const Vec3 p = detail::random_unit(rng);
      auto [q, jac] = word_jacobian(w, p);
      Vec3 any = std::abs(p.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
      const Vec3 t1 = unitize(any.cross(p));
      const Vec3 t2 = p.cross(t1);
      const double det = (jac * t1).cross(jac * t2).dot(q);
      CHECK(std::abs(det - 1.0) < 1e-8);
    }
  }

  SUBCASE("differential matches central finite differences") {
    Rng rng(45);
    const Config cfg = coctest::sphere_config();
    const double h = 1e-6;
    for (int i = 0; i < 20; ++i) {
      const auto w = random_word<SphereGeometry>(rng, cfg.sphere_pool, 4);
      const Vec3 p = detail::random_unit(rng);
      auto [q, jac] = word_jacobian(w, p);
      Vec3 any = std::abs(p.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
      const Vec3 t1 = unitize(any.cross(p));
      const Vec3 t2 = p.cross(t1);
      Vec3 fd1 = (apply(w, unitize(p + h * t1)) - apply(w, unitize(p - h * t1))) / (2 * h);
      Vec3 fd2 = (apply(w, unitize(p + h * t2)) - apply(w, unitize(p - h * t2))) / (2 * h);
      CHECK((jac * t1 - fd1).norm() < 1e-5);
      CHECK((jac * t2 - fd2).norm() < 1e-5);
      const double det_fd = fd1.cross(fd2).dot(q);
      CHECK(std::abs(det_fd - 1.0) < 1e-5);
    }
  }

  SUBCASE("twist differential is smooth at its axis poles") {
    const SphereWord tw = SphereWord::twist(Vec3(0, 0, 1), {0.1, 0.2, 0.05});
    const Mat3 jac = word_differential(tw, Vec3(0, 0, 1));
    CHECK(jac.allFinite());
  }
}
