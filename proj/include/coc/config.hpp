#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coc/circle.hpp"
#include "coc/quadrature.hpp"
#include "coc/sphere.hpp"

#include <json.hpp>

namespace coc {

inline constexpr const char* kToolVersion = "0.1.0";

/// Batch configuration: manifold, basepoint, form conventions, tolerances,
/// RNG seed, and the generator pool random words are drawn from.
struct Config {
  std::string manifold = "sphere";  // "circle" | "sphere"

  Rational circle_basepoint = Rational(0);
  Vec3 sphere_basepoint = Vec3(0.48, 0.64, 0.60);
  Vec3 pole = Vec3(0, 0, -1);
  double orientation_sign = 1.0;

  QuadratureConfig quadrature{12, 10, 1e-9};
  double snap_tol = 1e-6;
  double epsilon_pole = 1e-6;

  std::uint64_t seed = 20240814;
  int max_word_length = 4;
  long long homology_cap = 8000;

  std::vector<CircleWord> circle_pool;
  std::vector<SphereWord> sphere_pool;

  bool is_circle() const { return manifold == "circle"; }

  CircleGeometry circle_geometry() const {
    return CircleGeometry(CirclePoint(circle_basepoint));
  }
  SphereGeometry sphere_geometry() const {
    FormConventions conv;
    conv.pole = unitize(pole);
    conv.orientation_sign = orientation_sign;
    conv.quadrature = quadrature;
    conv.epsilon_pole = epsilon_pole;
    return SphereGeometry(conv, sphere_basepoint);
  }
};

/// Built-in defaults: rotations by generic angles plus two mild twists on
/// the sphere; a handful of rational rotations on the circle.
Config default_config(const std::string& manifold);

Config config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const Config& cfg);
Config load_config(const std::string& path);

/// FNV-1a hash of the canonical config dump, embedded in every report.
std::string config_hash(const Config& cfg);

// Word serialization: a word is an array of generator objects, e.g.
//   {"kind":"axis_rotation","axis":[0,0,1],"turns":0.25}
//   {"kind":"twist","axis":[0,0,1],"coeffs":[0,0.1]}
//   {"kind":"circle_rotation","turns":"1/3"}
// with optional "exp": -1.  Rational fields round-trip bit-exactly.
nlohmann::json word_to_json(const CircleWord& w);
nlohmann::json word_to_json(const SphereWord& w);
CircleWord circle_word_from_json(const nlohmann::json& j);
SphereWord sphere_word_from_json(const nlohmann::json& j);

/// Words file: {"words": [word, word, ...]}.
std::vector<CircleWord> load_circle_words(const std::string& path);
std::vector<SphereWord> load_sphere_words(const std::string& path);

/// Evaluation request: {"kind":"c"|"b"|"b_lift","k":K,"tuples":[[i,j,...]]}
/// with indices into the words file.
struct EvalRequest {
  std::string kind = "c";
  int k = 0;
  std::vector<std::vector<int>> tuples;
};
EvalRequest load_request(const std::string& path);

/// Emit a load-time warning (not an error) if the basepoint is nearly
/// antipodal to some length-1 pool image of it.
void warn_basepoint_admissibility(const Config& cfg);

}  // namespace coc
