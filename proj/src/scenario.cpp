#include "cfw/scenario.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "cfw/instances.hpp"
#include "cfw/perturbation.hpp"

namespace cfw {

namespace {

double num(const json& p, const char* key, double dflt,
           const std::string& where) {
  if (!p.is_object() || !p.contains(key)) return dflt;
  const json& v = p[key];
  if (!v.is_number())
    throw schema_error(where + "/" + key, "expected a number");
  return v.get<double>();
}

long long integer(const json& p, const char* key, long long dflt,
                  const std::string& where) {
  if (!p.is_object() || !p.contains(key)) return dflt;
  const json& v = p[key];
  if (!v.is_number_integer())
    throw schema_error(where + "/" + key, "expected an integer");
  return v.get<long long>();
}

std::size_t count(const json& p, const char* key, long long dflt,
                  const std::string& where) {
  const long long v = integer(p, key, dflt, where);
  if (v < 0) throw schema_error(where + "/" + key, "must be non-negative");
  return static_cast<std::size_t>(v);
}

std::string text(const json& p, const char* key, const std::string& dflt,
                 const std::string& where) {
  if (!p.is_object() || !p.contains(key)) return dflt;
  if (!p[key].is_string())
    throw schema_error(where + "/" + key, "expected a string");
  return p[key].get<std::string>();
}

std::vector<std::size_t> indices(const json& p, const char* key,
                                 const std::string& where) {
  if (!p.is_object() || !p.contains(key))
    throw schema_error(where, std::string("missing key '") + key + "'");
  const json& v = p[key];
  if (!v.is_array()) throw schema_error(where + "/" + key, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer() || v[i].get<long long>() < 0)
      throw schema_error(where + "/" + key + "/" + std::to_string(i),
                         "expected a node index");
    out.push_back(v[i].get<std::size_t>());
  }
  return out;
}

std::vector<double> reals(const json& p, const char* key, std::size_t n,
                          const std::string& where) {
  const std::string w = where + "/" + key;
  if (!p.contains(key)) return std::vector<double>(n, 0.0);
  const json& v = p[key];
  if (!v.is_array() || v.size() != n)
    throw schema_error(w, "expected an array of " + std::to_string(n) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_number()) throw schema_error(w + "/" + std::to_string(i),
                                              "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

Vector gabor_window(const json& p, Index d, std::uint64_t seed,
                    const std::string& where) {
  if (p.contains("window") && p["window"].is_array())
    return vector_from_json(p["window"], d, where + "/window");
  const std::string kind = text(p, "window", "random", where);
  if (kind == "delta") return Vector::Unit(d, 0);
  if (kind == "random") {
    std::mt19937_64 rng(seed);
    return random_gaussian(d, 1, rng).col(0);
  }
  throw schema_error(where + "/window", "unknown window '" + kind + "'");
}

GaborParams gabor_params(const json& p, const std::string& where) {
  GaborParams g;
  g.dim = static_cast<Index>(integer(p, "d", 4, where));
  if (g.dim <= 0) throw schema_error(where + "/d", "must be positive");
  const auto seed = static_cast<std::uint64_t>(integer(p, "seed", 0, where));
  g.window = gabor_window(p, g.dim, seed, where);
  g.alpha = p.contains("alpha") ? parse_complex(p["alpha"], where + "/alpha")
                                : Scalar(2.0);
  if (p.contains("lattice") && p["lattice"].is_array()) {
    const json& l = p["lattice"];
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_array() || l[i].size() != 2)
        throw schema_error(where + "/lattice/" + std::to_string(i),
                           "expected an [a, b] pair");
      g.lattice.emplace_back(l[i][0].get<int>(), l[i][1].get<int>());
    }
  } else {
    g.lattice = GaborParams::full_lattice(g.dim);
  }
  return g;
}

Operator check_operator(const json& p, Index d, std::uint64_t seed,
                        const std::string& where) {
  if (!p.contains("operator"))
    throw schema_error(where, "missing key 'operator'");
  const json& o = p["operator"];
  if (o.is_string()) {
    std::mt19937_64 rng(seed);
    const std::string kind = o.get<std::string>();
    if (kind == "random_invertible") return random_gaussian(d, d, rng);
    if (kind == "random_unitary") return random_unitary(d, rng);
    throw schema_error(where + "/operator", "unknown operator '" + kind + "'");
  }
  return matrix_from_json(o, d, where + "/operator");
}

CertifyOptions options(const Scenario& s) {
  CertifyOptions o;
  o.strategy = SearchStrategy::exhaustive(s.budget);
  o.allow_fallback = s.fallback != "none";
  o.fallback = s.fallback == "sampled"
                   ? SearchStrategy::sampled(s.samples, s.seed)
                   : SearchStrategy::descent(s.restarts, s.seed);
  o.tol = s.tolerances.certificate;
  o.rank_tol = s.tolerances.rank;
  o.frame_floor = s.tolerances.frame_floor;
  o.commute_tol = s.tolerances.commute;
  return o;
}

Certificate run_check(const CheckSpec& c, std::size_t index,
                      const Instance& inst, const Scenario& s) {
  const std::string where = "/checks/" + std::to_string(index);
  const CertifyOptions opts = options(s);
  const WovenFamily& fam = inst.family;
  const json& p = c.params;
  const std::uint64_t check_seed = s.seed + 1000003ULL * (index + 1);

  if (c.type == "bessel_sum") return certify_bessel_sum(fam, opts);
  if (c.type == "operator_image") {
    const Operator U = check_operator(p, fam.ambient_dim(), check_seed, where);
    return certify_operator_image(fam, U, std::nullopt, opts);
  }
  if (c.type == "intersection") {
    if (!p.contains("W")) throw schema_error(where, "missing key 'W'");
    const Operator W = matrix_from_json(p["W"], fam.ambient_dim(), where + "/W");
    return certify_subspace_intersection(fam, column_span(W, opts.rank_tol),
                                         opts);
  }
  if (c.type == "subset")
    return certify_subset_extension(fam, indices(p, "Y", where), opts);
  if (c.type == "removal") {
    std::optional<double> D;
    if (p.contains("D")) D = num(p, "D", 0.0, where);
    return certify_removal(fam, indices(p, "Y", where),
                           count(p, "n", 0, where), D, opts);
  }
  if (c.type == "closeness") {
    std::optional<double> N;
    if (p.contains("N")) N = num(p, "N", 0.0, where);
    return certify_closeness_woven(fam, N, opts);
  }
  if (c.type == "upper_not_optimal")
    return certify_upper_not_optimal(fam, num(p, "margin", 1e-6, where), opts);
  if (c.type == "product_equivalence") {
    if (!inst.lifted)
      throw schema_error(where, "product_equivalence needs a product_lift instance");
    return certify_product_equivalence(*inst.lifted, opts);
  }
  if (c.type == "perturbation") {
    const std::size_t n = count(p, "n", 0, where);
    if (n >= fam.member_count())
      throw schema_error(where + "/n", "member index out of range");
    PerturbationScalars sc = default_scalars(fam, n);
    if (p.contains("scalars") && p["scalars"].is_object()) {
      const json& q = p["scalars"];
      const std::size_t m = fam.member_count();
      sc.lambda = reals(q, "lambda", m, where + "/scalars");
      sc.eta = reals(q, "eta", m, where + "/scalars");
      sc.gamma = reals(q, "gamma", m, where + "/scalars");
    }
    return certify_perturbation(fam, sc, opts);
  }
  if (c.type == "perturbation_chain") {
    ChainScalars sc = default_chain_scalars(fam);
    if (p.contains("scalars") && p["scalars"].is_object()) {
      const json& q = p["scalars"];
      const std::size_t m = fam.member_count() - 1;
      sc.lambda = reals(q, "lambda", m, where + "/scalars");
      sc.eta = reals(q, "eta", m, where + "/scalars");
      sc.gamma = reals(q, "gamma", m, where + "/scalars");
    }
    return certify_perturbation_chain(fam, sc, opts);
  }
  throw schema_error(where + "/type", "unknown check '" + c.type + "'");
}

}  // namespace

Instance generate_instance(const std::string& name, const json& params) {
  const std::string where = "/params";
  const json p = params.is_null() ? json::object() : params;
  if (!p.is_object()) throw schema_error(where, "expected an object");
  json source = {{"generator", name}, {"params", p}};

  if (name == "paper_weaving_example") {
    return Instance{paper_weaving_family(num(p, "epsilon", 0.5, where)),
                    std::nullopt, source};
  }
  if (name == "discrete_gabor") {
    auto [F, G] = discrete_gabor(gabor_params(p, where));
    return Instance{WovenFamily({cfusion_from_cframe(F), cfusion_from_cframe(G)}),
                    std::nullopt, source};
  }
  if (name == "gabor_product") {
    auto [F, G] = discrete_gabor(gabor_params(p, where));
    const std::size_t outer_n = count(p, "outer_nodes", 2, where);
    const MeasureSpace outer = MeasureSpace::counting(outer_n);
    std::vector<std::vector<double>> v(2, std::vector<double>(outer_n, 1.0));
    LiftedProduct lifted = lift_product({F, G}, outer, v);
    WovenFamily fam = lifted.fusion;
    return Instance{std::move(fam), std::move(lifted), source};
  }
  if (name == "random_fusion_family") {
    RandomFamilyParams r;
    r.dim = static_cast<Index>(integer(p, "d", r.dim, where));
    r.nodes = count(p, "n", static_cast<long long>(r.nodes), where);
    r.members = count(p, "m", static_cast<long long>(r.members), where);
    r.dim_min = static_cast<Index>(integer(p, "dim_min", r.dim_min, where));
    r.dim_max = static_cast<Index>(integer(p, "dim_max", r.dim_max, where));
    r.weight_min = num(p, "weight_min", r.weight_min, where);
    r.weight_max = num(p, "weight_max", r.weight_max, where);
    r.mass_min = num(p, "mass_min", r.mass_min, where);
    r.mass_max = num(p, "mass_max", r.mass_max, where);
    r.seed = static_cast<std::uint64_t>(integer(p, "seed", 0, where));
    return Instance{random_fusion_family(r), std::nullopt, source};
  }
  if (name == "random_product") {
    const auto d = static_cast<Index>(integer(p, "d", 3, where));
    const std::size_t inner_n = count(p, "inner_nodes", 4, where);
    const std::size_t outer_n = count(p, "outer_nodes", 2, where);
    const std::size_t m = count(p, "m", 2, where);
    if (d <= 0 || inner_n == 0 || outer_n == 0)
      throw schema_error(where, "sizes must be positive");
    std::mt19937_64 rng(static_cast<std::uint64_t>(integer(p, "seed", 0, where)));
    std::uniform_real_distribution<double> w(0.5, 2.0);
    std::vector<CFrame> inner;
    for (std::size_t i = 0; i < m; ++i) {
      const Operator V = random_gaussian(d, static_cast<Index>(inner_n), rng);
      std::vector<Vector> vecs;
      for (Index c = 0; c < V.cols(); ++c) vecs.push_back(V.col(c));
      inner.emplace_back(MeasureSpace::counting(inner_n), std::move(vecs));
    }
    std::vector<std::vector<double>> v(m, std::vector<double>(outer_n));
    for (auto& row : v)
      for (auto& x : row) x = w(rng);
    LiftedProduct lifted =
        lift_product(inner, MeasureSpace::counting(outer_n), v);
    WovenFamily fam = lifted.fusion;
    return Instance{std::move(fam), std::move(lifted), source};
  }
  throw InputError("unknown generator '" + name + "'");
}

Scenario parse_scenario(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw schema_error("", "scenario must be an object");
  Scenario s;
  s.raw = j;
  s.base_dir = base_dir;
  if (!j.contains("instance")) throw schema_error("", "missing key 'instance'");
  s.instance_spec = j["instance"];
  if (!s.instance_spec.is_object())
    throw schema_error("/instance", "expected an object");
  const int kinds = s.instance_spec.contains("file") +
                    s.instance_spec.contains("generator") +
                    s.instance_spec.contains("inline");
  if (kinds != 1)
    throw schema_error("/instance",
                       "give exactly one of 'file', 'generator', 'inline'");

  if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty())
    throw schema_error("/checks", "expected a non-empty array of checks");
  for (std::size_t i = 0; i < j["checks"].size(); ++i) {
    const json& c = j["checks"][i];
    const std::string where = "/checks/" + std::to_string(i);
    CheckSpec spec;
    if (c.is_string()) {
      spec.type = c.get<std::string>();
      spec.params = json::object();
    } else if (c.is_object() && c.contains("type") && c["type"].is_string()) {
      spec.type = c["type"].get<std::string>();
      spec.params = c;
      if (c.contains("expect")) {
        if (!c["expect"].is_string())
          throw schema_error(where + "/expect", "expected a verdict string");
        try {
          spec.expect = verdict_from_string(c["expect"].get<std::string>());
        } catch (const InputError& e) {
          throw schema_error(where + "/expect", e.what());
        }
      }
    } else {
      throw schema_error(where, "expected a check name or an object with 'type'");
    }
    s.checks.push_back(std::move(spec));
  }

  const json strategy = j.value("strategy", json::object());
  s.budget = static_cast<std::uint64_t>(
      count(strategy, "budget", static_cast<long long>(s.budget), "/strategy"));
  s.fallback = text(strategy, "fallback", s.fallback, "/strategy");
  if (s.fallback != "none" && s.fallback != "sampled" && s.fallback != "descent")
    throw schema_error("/strategy/fallback",
                       "expected 'none', 'sampled' or 'descent'");
  s.samples = count(strategy, "samples", static_cast<long long>(s.samples),
                    "/strategy");
  s.restarts = count(strategy, "restarts", static_cast<long long>(s.restarts),
                     "/strategy");

  const json tol = j.value("tolerances", json::object());
  s.tolerances.certificate =
      num(tol, "certificate", s.tolerances.certificate, "/tolerances");
  s.tolerances.rank = num(tol, "rank", s.tolerances.rank, "/tolerances");
  s.tolerances.frame_floor =
      num(tol, "frame_floor", s.tolerances.frame_floor, "/tolerances");
  s.tolerances.commute = num(tol, "commute", s.tolerances.commute, "/tolerances");

  s.seed = static_cast<std::uint64_t>(count(j, "seed", 0, ""));
  s.output = text(j, "output", "", "");
  return s;
}

Scenario load_scenario(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return parse_scenario(j, std::filesystem::path(path).parent_path());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Instance resolve_instance(const Scenario& s) {
  const json& spec = s.instance_spec;
  if (spec.contains("inline"))
    return instance_from_json(spec["inline"], s.tolerances.rank);
  if (spec.contains("file")) {
    if (!spec["file"].is_string())
      throw schema_error("/instance/file", "expected a path");
    std::filesystem::path p = spec["file"].get<std::string>();
    if (p.is_relative()) p = s.base_dir / p;
    const json j = read_json_file(p.string());
    try {
      return instance_from_json(j, s.tolerances.rank);
    } catch (const InputError& e) {
      throw InputError(p.string() + ": " + e.what());
    }
  }
  if (!spec["generator"].is_string())
    throw schema_error("/instance/generator", "expected a generator name");
  return generate_instance(spec["generator"].get<std::string>(),
                           spec.value("params", json::object()));
}

Report run_scenario(const Scenario& s) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const Instance inst = resolve_instance(s);

  Report r;
  r.scenario = s.raw;
  r.seed = s.seed;
  r.instance = instance_to_json(inst);
  r.effective = {{"budget", s.budget},
                 {"fallback", s.fallback},
                 {"samples", s.samples},
                 {"restarts", s.restarts},
                 {"tolerances",
                  {{"certificate", s.tolerances.certificate},
                   {"rank", s.tolerances.rank},
                   {"frame_floor", s.tolerances.frame_floor},
                   {"commute", s.tolerances.commute}}}};
  for (std::size_t i = 0; i < s.checks.size(); ++i) {
    const auto t0 = clock::now();
    CheckResult res;
    res.spec = s.checks[i];
    res.certificate = run_check(s.checks[i], i, inst, s);
    res.millis =
        std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    res.as_expected = res.spec.expect
                          ? res.certificate.verdict == *res.spec.expect
                          : res.certificate.verdict != Verdict::fail;
    r.results.push_back(std::move(res));
  }
  r.total_millis =
      std::chrono::duration<double, std::milli>(clock::now() - start).count();
  return r;
}

json report_to_json(const Report& r) {
  json j;
  j["tool_version"] = kToolVersion;
  j["seed"] = r.seed;
  j["scenario"] = r.scenario;
  j["effective"] = r.effective;
  j["instance"] = r.instance;
  json certs = json::array();
  std::size_t counts[3] = {0, 0, 0};
  std::size_t unexpected = 0;
  json check_ms = json::array();
  for (const auto& res : r.results) {
    json c = certificate_to_json(res.certificate);
    c["check"] = res.spec.type;
    if (res.spec.expect) c["expected"] = to_string(*res.spec.expect);
    c["as_expected"] = res.as_expected;
    certs.push_back(std::move(c));
    ++counts[static_cast<int>(res.certificate.verdict)];
    if (!res.as_expected) ++unexpected;
    check_ms.push_back(res.millis);
  }
  j["certificates"] = std::move(certs);
  j["summary"] = {{"pass", counts[0]},
                  {"fail", counts[1]},
                  {"inapplicable", counts[2]},
                  {"unexpected", unexpected}};
  j["timings"] = {{"total_ms", r.total_millis}, {"checks_ms", check_ms}};
  return j;
}

int report_exit_code(const Report& r) {
  for (const auto& res : r.results)
    if (!res.as_expected) return 1;
  return 0;
}

}  // namespace cfw
