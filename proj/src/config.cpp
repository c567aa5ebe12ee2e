#include "coc/config.hpp"

#include <cstdio>
#include <fstream>

namespace coc {

using nlohmann::json;

namespace {

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw ParseError("expected a 3-vector: " + j.dump());
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json rational_to_json(const Rational& r) { return rational_to_string(r); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError("expected a rational as \"p/q\" string: " + j.dump());
}

json letter_to_json(const CircleWord::Letter& l) {
  json o;
  o["kind"] = "circle_rotation";
  o["turns"] = rational_to_json(l.gen.turns);
  if (l.exponent != 1) o["exp"] = l.exponent;
  return o;
}

json letter_to_json(const SphereWord::Letter& l) {
  json o;
  if (const auto* rot = std::get_if<AxisRotation>(&l.gen)) {
    o["kind"] = "axis_rotation";
    o["axis"] = vec3_to_json(rot->axis);
    o["turns"] = rot->turns;
  } else {
    const auto& tw = std::get<Twist>(l.gen);
    o["kind"] = "twist";
    o["axis"] = vec3_to_json(tw.axis);
    o["coeffs"] = tw.coeffs;
  }
  if (l.exponent != 1) o["exp"] = l.exponent;
  return o;
}

int exponent_of(const json& o) {
  const int e = o.value("exp", 1);
  if (e != 1 && e != -1) throw ParseError("generator exp must be +1 or -1");
  return e;
}

}  // namespace

json word_to_json(const CircleWord& w) {
  json arr = json::array();
  for (const auto& l : w.letters) arr.push_back(letter_to_json(l));
  return arr;
}

json word_to_json(const SphereWord& w) {
  json arr = json::array();
  for (const auto& l : w.letters) arr.push_back(letter_to_json(l));
  return arr;
}

CircleWord circle_word_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("a word must be an array of generators");
  CircleWord w;
  for (const auto& o : j) {
    const std::string kind = o.value("kind", "");
    if (kind != "circle_rotation")
      throw ParseError("circle words only take circle_rotation generators");
    w.letters.push_back(
        {CircleRotation{rational_from_json(o.at("turns"))}, exponent_of(o)});
  }
  return w;
}

SphereWord sphere_word_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("a word must be an array of generators");
  SphereWord w;
  for (const auto& o : j) {
    const std::string kind = o.value("kind", "");
    if (kind == "axis_rotation") {
      w.letters.push_back(
          {AxisRotation{unitize(vec3_from_json(o.at("axis"))),
                        o.at("turns").get<double>()},
           exponent_of(o)});
    } else if (kind == "twist") {
      w.letters.push_back(
          {Twist{unitize(vec3_from_json(o.at("axis"))),
                 o.at("coeffs").get<std::vector<double>>()},
           exponent_of(o)});
    } else {
      throw ParseError("unknown sphere generator kind: " + kind);
    }
  }
  return w;
}

Config default_config(const std::string& manifold) {
  Config cfg;
  cfg.manifold = manifold;
  if (manifold != "circle" && manifold != "sphere")
    throw ParseError("manifold must be \"circle\" or \"sphere\"");
  cfg.circle_pool = {
      CircleWord::rotation(Rational(1, 3)),  CircleWord::rotation(Rational(2, 7)),
      CircleWord::rotation(Rational(5, 8)),  CircleWord::rotation(Rational(1, 2)),
      CircleWord::rotation(Rational(3, 10)), CircleWord::rotation(Rational(11, 14)),
  };
  cfg.sphere_pool = {
      SphereWord::rotation(Vec3(0, 0, 1), 0.17),
      SphereWord::rotation(Vec3(1, 0, 0), 0.23),
      SphereWord::rotation(unitize(Vec3(1, 2, 2)), 0.11),
      SphereWord::twist(Vec3(0, 0, 1), {0.0, 0.20}),
      SphereWord::twist(Vec3(0.6, 0, 0.8), {0.05, 0.0, 0.15}),
  };
  return cfg;
}

Config config_from_json(const json& j) {
  Config cfg = default_config(j.value("manifold", "sphere"));
  if (j.contains("basepoint")) {
    if (cfg.is_circle())
      cfg.circle_basepoint = rational_from_json(j.at("basepoint"));
    else
      cfg.sphere_basepoint = unitize(vec3_from_json(j.at("basepoint")));
  }
  if (j.contains("pole")) cfg.pole = vec3_from_json(j.at("pole"));
  cfg.orientation_sign = j.value("orientation_sign", 1.0);
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    cfg.quadrature.order = q.value("order", cfg.quadrature.order);
    cfg.quadrature.max_depth = q.value("max_depth", cfg.quadrature.max_depth);
    cfg.quadrature.tol = q.value("tol", cfg.quadrature.tol);
  }
  cfg.snap_tol = j.value("snap_tol", cfg.snap_tol);
  cfg.epsilon_pole = j.value("epsilon_pole", cfg.epsilon_pole);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.max_word_length = j.value("max_word_length", cfg.max_word_length);
  cfg.homology_cap = j.value("homology_cap", cfg.homology_cap);
  if (j.contains("generator_pool")) {
    if (cfg.is_circle()) {
      cfg.circle_pool.clear();
      for (const auto& w : j.at("generator_pool"))
        cfg.circle_pool.push_back(circle_word_from_json(w));
    } else {
      cfg.sphere_pool.clear();
      for (const auto& w : j.at("generator_pool"))
        cfg.sphere_pool.push_back(sphere_word_from_json(w));
    }
  }
  if (cfg.quadrature.order < 2 || cfg.quadrature.max_depth < 1 ||
      !(cfg.quadrature.tol > 0) || !(cfg.snap_tol > 0) ||
      !(cfg.epsilon_pole > 0))
    throw ParseError("config tolerances must be positive");
  return cfg;
}

json config_to_json(const Config& cfg) {
  json j;
  j["manifold"] = cfg.manifold;
  if (cfg.is_circle())
    j["basepoint"] = rational_to_json(cfg.circle_basepoint);
  else
    j["basepoint"] = vec3_to_json(cfg.sphere_basepoint);
  j["pole"] = vec3_to_json(cfg.pole);
  j["orientation_sign"] = cfg.orientation_sign;
  j["quadrature"] = {{"order", cfg.quadrature.order},
                     {"max_depth", cfg.quadrature.max_depth},
                     {"tol", cfg.quadrature.tol}};
  j["snap_tol"] = cfg.snap_tol;
  j["epsilon_pole"] = cfg.epsilon_pole;
  j["seed"] = cfg.seed;
  j["max_word_length"] = cfg.max_word_length;
  j["homology_cap"] = cfg.homology_cap;
  json pool = json::array();
  if (cfg.is_circle())
    for (const auto& w : cfg.circle_pool) pool.push_back(word_to_json(w));
  else
    for (const auto& w : cfg.sphere_pool) pool.push_back(word_to_json(w));
  j["generator_pool"] = pool;
  return j;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("config is not valid JSON: " + std::string(e.what()));
  }
  return config_from_json(j);
}

std::string config_hash(const Config& cfg) {
  const std::string dump = config_to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace {

json load_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ParseError(std::string("cannot open ") + what + ": " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + " is not valid JSON: " + e.what());
  }
  return j;
}

}  // namespace

std::vector<CircleWord> load_circle_words(const std::string& path) {
  const json j = load_json_file(path, "words file");
  if (!j.contains("words")) throw ParseError("words file needs a \"words\" array");
  std::vector<CircleWord> out;
  for (const auto& w : j.at("words")) out.push_back(circle_word_from_json(w));
  return out;
}

std::vector<SphereWord> load_sphere_words(const std::string& path) {
  const json j = load_json_file(path, "words file");
  if (!j.contains("words")) throw ParseError("words file needs a \"words\" array");
  std::vector<SphereWord> out;
  for (const auto& w : j.at("words")) out.push_back(sphere_word_from_json(w));
  return out;
}

EvalRequest load_request(const std::string& path) {
  const json j = load_json_file(path, "request file");
  EvalRequest req;
  req.kind = j.value("kind", "c");
  if (req.kind != "c" && req.kind != "b" && req.kind != "b_lift")
    throw ParseError("request kind must be c, b, or b_lift");
  req.k = j.value("k", 0);
  if (!j.contains("tuples"))
    throw ParseError("request file needs a \"tuples\" array");
  for (const auto& t : j.at("tuples"))
    req.tuples.push_back(t.get<std::vector<int>>());
  return req;
}

void warn_basepoint_admissibility(const Config& cfg) {
  if (cfg.is_circle()) return;
  const Vec3 x = cfg.sphere_basepoint;
  for (const auto& g : cfg.sphere_pool) {
    const Vec3 y = apply(g, x);
    if ((x + y).norm() < 1e-6)
      std::fprintf(stderr,
                   "warning: basepoint is nearly antipodal to a pool image; "
                   "delta_1 arcs will degenerate\n");
  }
}

}  // namespace coc
