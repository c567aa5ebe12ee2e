// Batch CLI: evaluate cocycles on word tuples, run verification suites,
// and pair cocycles with bar-complex cycles of finite rotation subgroups.
// All output is JSON; reports are byte-identical for identical
// (config, inputs, seed) regardless of --jobs.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "coc/cocycles.hpp"
#include "coc/config.hpp"
#include "coc/grouphomology.hpp"

namespace {

using namespace coc;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitIdentity = 4;
constexpr int kExitCaps = 5;

json scalar_json(double x) { return x; }
json scalar_json(const Rational& r) { return rational_to_string(r); }

// ---------------------------------------------------------------------------
// eval

template <class G>
int run_eval(const Config& cfg, const G& geom,
             const std::vector<typename G::Word>& words,
             const EvalRequest& req, int jobs) {
  constexpr int n = G::dimension;
  const int arity = (req.kind == "c") ? n + 1 : n;
  for (const auto& t : req.tuples) {
    if (static_cast<int>(t.size()) != arity)
      throw ParseError("tuple arity must be " + std::to_string(arity) +
                       " for kind " + req.kind);
    for (int idx : t)
      if (idx < 0 || idx >= static_cast<int>(words.size()))
        throw ParseError("tuple references word " + std::to_string(idx) +
                         " outside the words file");
  }
  if (req.kind == "c" && (req.k < 0 || req.k > n))
    throw ParseError("k out of range for kind c");
  if (req.kind != "c" && (req.k < 0 || req.k > n - 1))
    throw ParseError("k out of range for kind " + req.kind);

  Cocycles<G> sys{Zigzag<G>(geom, cfg.snap_tol)};
  const std::string hash = config_hash(cfg);

  struct Entry {
    json value;
    int error = 0;  // 0 ok, 3 geometry, 4 snap
  };
  auto entries = parallel_map<Entry>(
      req.tuples.size(), jobs, [&](std::size_t i) -> Entry {
        std::vector<typename G::Word> tuple;
        for (int idx : req.tuples[i]) tuple.push_back(words[idx]);
        json e;
        e["kind"] = req.kind;
        e["k"] = req.k;
        json tw = json::array();
        for (const auto& w : tuple) tw.push_back(word_to_json(w));
        e["words"] = tw;
        e["seed"] = cfg.seed;
        e["config_hash"] = hash;
        e["version"] = kToolVersion;
        try {
          if (req.kind == "c") {
            const auto r = sys.eval_c(req.k, Tuple<G>(tuple));
            e["raw"] = scalar_json(r.raw);
            e["snapped"] = r.snapped;
            e["residual"] = r.residual;
          } else if (req.kind == "b") {
            const auto r = sys.eval_b(req.k, Tuple<G>(tuple));
            e["raw"] = scalar_json(r.raw);
            e["snapped"] = scalar_json(r.mod1);
            e["residual"] = 0.0;
          } else {
            const auto raw = sys.eval_b_lift(Tuple<G>(tuple));
            e["raw"] = scalar_json(raw);
            e["snapped"] = nullptr;
            e["residual"] = 0.0;
          }
          return {e, 0};
        } catch (const GeometryError& ex) {
          e["error"] = "geometry";
          e["message"] = ex.what();
          return {e, kExitGeometry};
        } catch (const QuadratureNonConvergence& ex) {
          e["error"] = "quadrature";
          e["message"] = ex.what();
          return {e, kExitGeometry};
        } catch (const SnapFailure& ex) {
          e["error"] = "snap_failure";
          e["message"] = ex.what();
          e["raw"] = ex.raw;
          e["residual"] = ex.residual;
          return {e, kExitIdentity};
        }
      });

  bool snap_failed = false;
  for (const auto& entry : entries) {
    std::cout << entry.value.dump() << "\n";
    if (entry.error == kExitGeometry) return kExitGeometry;
    if (entry.error == kExitIdentity) snap_failed = true;
  }
  return snap_failed ? kExitIdentity : kExitOk;
}

// ---------------------------------------------------------------------------
// verify

json report_json(const Config& cfg, const SuiteReport& rep) {
  json j;
  j["suite"] = rep.suite;
  j["manifold"] = rep.manifold;
  j["k"] = rep.k;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["checked"] = rep.checked;
  j["failures"] = rep.failures;
  j["skipped"] = rep.skipped;
  j["max_residual"] = rep.max_residual;
  j["pass"] = rep.pass();
  json stats = json::object();
  for (const auto& [k, v] : rep.stats) stats[k] = v;
  j["stats"] = stats;
  if (!rep.histogram.empty()) {
    json h = json::object();
    for (const auto& [v, c] : rep.histogram) h[std::to_string(v)] = c;
    j["histogram"] = h;
  }
  j["config_hash"] = config_hash(cfg);
  j["version"] = kToolVersion;
  return j;
}

template <class G>
int run_verify(const Config& cfg, const G& geom,
               const std::vector<typename G::Word>& pool,
               const std::string& suite, int samples, std::uint64_t seed,
               int k, int jobs) {
  Cocycles<G> sys{Zigzag<G>(geom, cfg.snap_tol)};
  SuiteRunner<G> runner(sys, pool, cfg.max_word_length);
  const SuiteReport rep = runner.run(suite, samples, seed, k, jobs);
  std::cout << report_json(cfg, rep).dump() << "\n";
  return rep.pass() ? kExitOk : kExitIdentity;
}

// ---------------------------------------------------------------------------
// euler

template <class G>
json bar_chain_json(const BarChain<IndexedGroup>& z) {
  json terms = json::array();
  for (const auto& [coeff, tuple] : z.terms) {
    json t;
    t["coeff"] = coeff;
    t["tuple"] = tuple;
    terms.push_back(t);
  }
  return terms;
}

template <class G>
int run_euler(const Config& cfg, const G& geom, const std::string& spec,
              int degree, const std::string& kind, int k) {
  constexpr int n = G::dimension;
  const int want_degree = (kind == "c") ? n + 1 : n;
  if (degree != want_degree)
    throw ParseError("kind " + kind + " pairs with degree " +
                     std::to_string(want_degree) + " cycles on this manifold");
  if (kind == "c" && (k < 0 || k > n)) throw ParseError("k out of range");
  if (kind == "b" && (k < 0 || k > n - 1)) throw ParseError("k out of range");

  const FiniteSubgroup<G> grp = parse_subgroup<G>(spec);
  const CycleSpace cycles = find_cycles(grp.table, degree, cfg.homology_cap);
  const IndexedGroup igrp{&grp.table};
  std::function<typename G::Word(const int&)> word_of =
      [&grp](const int& i) { return grp.elements[i]; };

  Cocycles<G> sys{Zigzag<G>(geom, cfg.snap_tol)};
  ScalarValued<G> cochain =
      (kind == "c") ? sys.c_snapped(k) : sys.b_mod1(k);
  std::map<std::string, typename G::Scalar> memo;

  auto value_json = [&](const typename G::Scalar& v) -> json {
    if (kind == "c") return scalar_json(v);
    return scalar_json(frac_lift(v));
  };

  json out;
  out["subgroup"] = grp.label;
  out["order"] = grp.size();
  out["degree"] = degree;
  out["kind"] = kind;
  out["k"] = k;
  out["chain_dim"] = cycles.chain_dim;
  out["cycle_rank"] = static_cast<long long>(cycles.kernel_basis.size());
  json hom;
  json torsion = json::array();
  for (const auto& t : cycles.torsion) torsion.push_back(t.str());
  hom["torsion"] = torsion;
  hom["free_rank"] = cycles.free_rank;
  out["homology"] = hom;

  json gens = json::array();
  for (const auto& [order, z] : cycles.generators) {
    json g;
    g["order"] = order.str();  // 0 marks a free generator
    g["value"] =
        value_json(evaluate_on_cycle<G>(cochain, igrp, word_of, z, &memo));
    g["terms"] = bar_chain_json<G>(z);
    gens.push_back(g);
  }
  out["generator_evaluations"] = gens;

  json kernel_values = json::array();
  for (const auto& z : cycles.kernel_basis)
    kernel_values.push_back(
        value_json(evaluate_on_cycle<G>(cochain, igrp, word_of, z, &memo)));
  out["kernel_evaluations"] = kernel_values;

  if (degree == 1) {
    json singles = json::array();
    for (int i = 0; i < grp.size(); ++i) {
      BarChain<IndexedGroup> z{1, {{1, {i}}}};
      json s;
      s["element"] = i;
      s["value"] =
          value_json(evaluate_on_cycle<G>(cochain, igrp, word_of, z, &memo));
      singles.push_back(s);
    }
    out["singleton_evaluations"] = singles;
  }

  // Class invariance: evaluations do not move under boundary perturbations.
  Rng rng(cfg.seed);
  bool invariant = true;
  const int perturbations = 20;
  for (const auto& [order, z] : cycles.generators) {
    const typename G::Scalar base =
        evaluate_on_cycle<G>(cochain, igrp, word_of, z, &memo);
    for (int it = 0; it < perturbations; ++it) {
      BarChain<IndexedGroup> y{degree + 1, {}};
      const int nterms = 1 + static_cast<int>(rng.uniform(2));
      for (int t = 0; t < nterms; ++t) {
        std::vector<int> tuple(degree + 1);
        for (auto& e : tuple) e = static_cast<int>(rng.uniform(grp.size()));
        y.terms.emplace_back(1 + static_cast<int>(rng.uniform(2)),
                             std::move(tuple));
      }
      BarChain<IndexedGroup> zp = z;
      for (auto& term : bar_boundary(igrp, y).terms) zp.terms.push_back(term);
      const typename G::Scalar v =
          evaluate_on_cycle<G>(cochain, igrp, word_of, zp, &memo);
      const double diff = (kind == "c")
                              ? scalar_to_double(v - base)
                              : integer_residual(v - base);
      if (std::abs(diff) > cfg.snap_tol) invariant = false;
    }
  }
  out["invariance"] =
      json{{"perturbations", perturbations}, {"pass", invariant}};
  out["seed"] = cfg.seed;
  out["config_hash"] = config_hash(cfg);
  out["version"] = kToolVersion;
  std::cout << out.dump() << "\n";
  return invariant ? kExitOk : kExitIdentity;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group cocycles on volume-preserving diffeomorphism groups"};
  app.require_subcommand(1);

  std::string config_path, words_path, request_path;
  std::string suite, subgroup, kind = "c";
  int samples = 100, k = -1, degree = 1, jobs = 1;
  std::optional<std::uint64_t> seed_opt;

  auto* eval = app.add_subcommand("eval", "evaluate cocycles on word tuples");
  eval->add_option("--config", config_path, "config JSON")->required();
  eval->add_option("--words", words_path, "words JSON")->required();
  eval->add_option("--request", request_path, "request JSON")->required();
  eval->add_option("--jobs", jobs, "worker threads");

  auto* verify = app.add_subcommand("verify", "run an identity suite");
  verify->add_option("--config", config_path)->required();
  verify
      ->add_option("--suite", suite,
                   "leibniz|cocycle_c|cocycle_b|telescoping|lift|stokes|"
                   "zigzag|bounded")
      ->required();
  verify->add_option("--samples", samples);
  std::uint64_t seed_value = 0;
  auto* seed_flag = verify->add_option("--seed", seed_value);
  verify->add_option("--k", k, "cocycle degree index; -1 = all");
  verify->add_option("--jobs", jobs);

  auto* euler = app.add_subcommand("euler", "pair cocycles with bar cycles");
  euler->add_option("--config", config_path)->required();
  euler
      ->add_option("--subgroup", subgroup,
                   "cyclic:m[:axis=x,y,z] | klein4 | dihedral:m")
      ->required();
  euler->add_option("--degree", degree)->required();
  euler->add_option("--kind", kind, "c|b");
  euler->add_option("--k", k)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    const Config cfg = load_config(config_path);
    warn_basepoint_admissibility(cfg);
    if (seed_flag->count() > 0) seed_opt = seed_value;
    const std::uint64_t seed = seed_opt.value_or(cfg.seed);

    if (eval->parsed()) {
      const EvalRequest req = load_request(request_path);
      if (cfg.is_circle())
        return run_eval(cfg, cfg.circle_geometry(),
                        load_circle_words(words_path), req, jobs);
      return run_eval(cfg, cfg.sphere_geometry(),
                      load_sphere_words(words_path), req, jobs);
    }
    if (verify->parsed()) {
      if (cfg.is_circle())
        return run_verify(cfg, cfg.circle_geometry(), cfg.circle_pool, suite,
                          samples, seed, k, jobs);
      return run_verify(cfg, cfg.sphere_geometry(), cfg.sphere_pool, suite,
                        samples, seed, k, jobs);
    }
    if (kind != "c" && kind != "b")
      throw ParseError("euler kind must be c or b");
    if (cfg.is_circle())
      return run_euler(cfg, cfg.circle_geometry(), subgroup, degree, kind, k);
    return run_euler(cfg, cfg.sphere_geometry(), subgroup, degree, kind, k);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCaps;
  } catch (const SnapFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIdentity;
  } catch (const GeometryError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitGeometry;
  } catch (const QuadratureNonConvergence& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitGeometry;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
