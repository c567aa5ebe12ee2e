#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "test_util.hpp"

using namespace coc;
using nlohmann::json;

TEST_CASE("config round trip and hashing") {
  const Config cfg = default_config("sphere");
  const json j = config_to_json(cfg);
  const Config back = config_from_json(j);
  CHECK(config_hash(cfg) == config_hash(back));
  CHECK(back.sphere_pool.size() == cfg.sphere_pool.size());

  Config tweaked = cfg;
  tweaked.seed += 1;
  CHECK(config_hash(tweaked) != config_hash(cfg));

  CHECK_THROWS_AS(default_config("torus"), ParseError);
  json bad = j;
  bad["snap_tol"] = -1.0;
  CHECK_THROWS_AS(config_from_json(bad), ParseError);
}

TEST_CASE("word serialization round-trips bit-exactly") {
  SUBCASE("circle rationals") {
    CircleWord w = compose(CircleWord::rotation(Rational(22, 7)),
                           invert(CircleWord::rotation(Rational(355, 113))));
    const CircleWord back = circle_word_from_json(word_to_json(w));
    CHECK(back == w);
  }

  SUBCASE("sphere doubles, bitwise") {
    Rng rng(21);
    const Config cfg = default_config("sphere");
    for (int i = 0; i < 20; ++i) {
      const SphereWord w = random_word<SphereGeometry>(rng, cfg.sphere_pool, 4);
      const SphereWord back = sphere_word_from_json(word_to_json(w));
      REQUIRE(back.letters.size() == w.letters.size());
      for (std::size_t l = 0; l < w.letters.size(); ++l) {
        CHECK(back.letters[l].exponent == w.letters[l].exponent);
        if (const auto* rot = std::get_if<AxisRotation>(&w.letters[l].gen)) {
          const auto& rot2 = std::get<AxisRotation>(back.letters[l].gen);
          CHECK(rot2.axis == rot->axis);
          CHECK(rot2.turns == rot->turns);
        } else {
          const auto& tw = std::get<Twist>(w.letters[l].gen);
          const auto& tw2 = std::get<Twist>(back.letters[l].gen);
          CHECK(tw2.axis == tw.axis);
          CHECK(tw2.coeffs == tw.coeffs);
        }
      }
    }
  }

  SUBCASE("malformed input is a parse error") {
    CHECK_THROWS_AS(circle_word_from_json(json::parse(R"([{"kind":"spin"}])")),
                    ParseError);
    CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
    CHECK(rational_from_string("-3/9") == Rational(-1, 3));
  }
}

// ---------------------------------------------------------------------------
// CLI integration (spawned binary).  Skipped unless ctest provides paths.

namespace {

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

}  // namespace

TEST_CASE("cli exit codes and eval output") {
  const char* bin = std::getenv("COCYCLE_BIN");
  const char* data = std::getenv("COCYCLE_DATA");
  if (!bin || !data) {
    MESSAGE("COCYCLE_BIN/COCYCLE_DATA not set; skipping CLI checks");
    return;
  }
  const std::string B(bin), D(data);

  SUBCASE("eval emits snapped integers and exits 0") {
    const auto r = run_cmd(B + " eval --config " + D + "/circle.json --words " +
                           D + "/words_circle.json --request " + D +
                           "/request_c0.json");
    CHECK(r.exit_code == 0);
    std::vector<long long> snapped;
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line)) {
      const json e = json::parse(line);
      snapped.push_back(e.at("snapped").get<long long>());
      CHECK(e.at("residual").get<double>() == 0.0);
      CHECK(e.contains("config_hash"));
      CHECK(e.contains("version"));
    }
    REQUIRE(snapped.size() == 3);
    // (R_{1/2}, R_{3/4}) -> -1; identity tuple -> 0
    CHECK(snapped[0] == -1);
    CHECK(snapped[1] == 0);
  }

  SUBCASE("parse failures exit 2") {
    CHECK(run_cmd(B + " eval --config " + D + "/circle.json --words " + D +
                  "/words_circle.json --request " + D +
                  "/request_bad_arity.json")
              .exit_code == 2);
    CHECK(run_cmd(B + " verify --config " + D + "/circle.json --suite nope")
              .exit_code == 2);
  }

  SUBCASE("geometry degeneracy exits 3 with a machine-readable error") {
    const auto r = run_cmd(B + " eval --config " + D + "/sphere.json --words " +
                           D + "/words_sphere.json --request " + D +
                           "/request_c2_antipodal.json");
    CHECK(r.exit_code == 3);
    const json e = json::parse(r.out.substr(0, r.out.find('\n')));
    CHECK(e.at("error") == "geometry");
  }

  SUBCASE("snap failures exit 4 after emitting the partial report") {
    const auto r = run_cmd(B + " eval --config " + D +
                           "/sphere_tiny_snap.json --words " + D +
                           "/words_sphere.json --request " + D +
                           "/request_c2.json");
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("snap_failure") != std::string::npos);
  }

  SUBCASE("verify exits 0 on a passing suite") {
    const auto r = run_cmd(B + " verify --config " + D +
                           "/circle.json --suite cocycle_c --samples 50");
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("pass") == true);
    CHECK(rep.at("max_residual").get<double>() == 0.0);
  }

  SUBCASE("euler respects caps with exit 5") {
    CHECK(run_cmd(B + " euler --config " + D +
                  "/sphere.json --subgroup cyclic:12 --degree 3 --kind c "
                  "--k 2")
              .exit_code == 5);
  }
}
