// cfw: run weaving scenarios, generate instances, print universal bounds.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cfw/scenario.hpp"

namespace {

void write_json(const cfw::json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw cfw::InputError("cannot write " + path);
  out << text;
}

cfw::json parse_param_value(const std::string& v) {
  try {
    return cfw::json::parse(v);
  } catch (const cfw::json::exception&) {
    return v;
  }
}

int cmd_run(const std::string& file, const std::string& out,
            std::optional<std::uint64_t> budget,
            std::optional<std::uint64_t> seed) {
  cfw::Scenario s = cfw::load_scenario(file);
  if (budget) s.budget = *budget;
  if (seed) s.seed = *seed;
  const cfw::Report r = cfw::run_scenario(s);
  const cfw::json j = cfw::report_to_json(r);
  std::string target = out;
  if (target.empty() && !s.output.empty()) {
    std::filesystem::path p = s.output;
    target = (p.is_relative() ? s.base_dir / p : p).string();
  }
  if (!target.empty()) write_json(j, target);
  for (const auto& res : r.results) {
    const auto& c = res.certificate;
    std::printf("%-22s %-13s claimed [%.6g, %.6g]", res.spec.type.c_str(),
                cfw::to_string(c.verdict).c_str(), c.claimed.lower,
                c.claimed.upper);
    if (c.truth)
      std::printf(" true [%.6g, %.6g]%s", c.truth->lower, c.truth->upper,
                  c.truth->certified ? "" : " (uncertified)");
    if (!res.as_expected) std::printf("  UNEXPECTED");
    std::printf("\n");
  }
  return cfw::report_exit_code(r);
}

int cmd_gen(const std::string& name, const std::vector<std::string>& kv,
            const std::string& out) {
  cfw::json params = cfw::json::object();
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw cfw::InputError("expected key=value, got '" + item + "'");
    params[item.substr(0, eq)] = parse_param_value(item.substr(eq + 1));
  }
  write_json(cfw::instance_to_json(cfw::generate_instance(name, params)), out);
  return 0;
}

int cmd_bounds(const std::string& file, std::uint64_t budget) {
  const cfw::Instance inst = cfw::instance_from_json(cfw::read_json_file(file));
  const auto& fam = inst.family;
  std::printf("d = %ld, nodes = %zu, members = %zu\n",
              static_cast<long>(fam.ambient_dim()), fam.node_count(),
              fam.member_count());
  for (std::size_t i = 0; i < fam.member_count(); ++i) {
    const auto b = cfw::fusion_bounds(fam.member(i));
    std::printf("member %zu: [%.10g, %.10g]\n", i, b.lower, b.upper);
  }
  const auto u =
      cfw::universal_bounds(fam, cfw::SearchStrategy::exhaustive(budget));
  std::printf("universal: [%.10g, %.10g] over %llu partitions\n", u.lower,
              u.upper, static_cast<unsigned long long>(u.evaluated));
  std::printf("lower witness: %s\nupper witness: %s\n",
              cfw::partition_to_json(u.lower_witness).dump().c_str(),
              cfw::partition_to_json(u.upper_witness).dump().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weaving certificates for continuous fusion frames"};
  app.set_version_flag("--version", std::string(cfw::kToolVersion));
  app.require_subcommand(1);

  std::string file, out, name;
  std::optional<std::uint64_t> budget, seed;
  std::vector<std::string> kv;
  std::uint64_t bounds_budget = cfw::kDefaultEnumerationBudget;

  auto* run = app.add_subcommand("run", "Run a scenario and write a report");
  run->add_option("scenario", file, "Scenario file")->required();
  run->add_option("--out,-o", out, "Report path ('-' for stdout)");
  run->add_option("--budget", budget, "Exhaustive enumeration budget");
  run->add_option("--seed", seed, "Seed override");

  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("generator", name, "Generator name")->required();
  gen->add_option("params", kv, "key=value parameters");
  gen->add_option("--out,-o", out, "Output path ('-' for stdout)");

  auto* bounds = app.add_subcommand("bounds", "Print universal bounds");
  bounds->add_option("instance", file, "Instance file")->required();
  bounds->add_option("--budget", bounds_budget, "Enumeration budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(file, out, budget, seed);
    if (*gen) return cmd_gen(name, kv, out);
    if (*bounds) return cmd_bounds(file, bounds_budget);
  } catch (const cfw::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cfw::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
