#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain or validation
// failure, 2 usage error (bad flags, unreadable or malformed input).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treewass/io.hpp"
#include "treewass/radon.hpp"
#include "treewass/transport.hpp"
#include "treewass/verify/generators.hpp"
#include "treewass/verify/suite.hpp"

namespace treewass::cli {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

/// Writes `text` to `path` through a temporary file and a rename, or to
/// `out` when no path is given.
inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ParseError("cannot write '" + tmp.string() + "'");
    f << text;
    if (!f) throw ParseError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, target);
}

inline std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

inline std::vector<EdgeId> parse_skeleton(const Tree& tree, const std::string& text) {
  std::vector<EdgeId> out;
  if (text.empty()) {
    for (std::size_t e = 0; e < tree.edge_count(); ++e) out.push_back(edge_id(e));
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("skeleton must be a comma-separated list of edge ids");
    out.push_back(edge_id(std::stoul(item)));
  }
  return out;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact optimal transport and perpendicular Radon transform on metric trees", "treewass"};
  app.require_subcommand(1);
  std::string out_path;

  // gen-tree
  auto* gen = app.add_subcommand("gen-tree", "Generate a random tree");
  std::uint64_t gen_seed = 1;
  std::string mode = "complete";
  verify::SuiteConfig gen_cfg;
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--mode", mode, "finite or complete")->check(CLI::IsMember({"finite", "complete"}));
  gen->add_option("--min-vertices", gen_cfg.min_vertices);
  gen->add_option("--max-vertices", gen_cfg.max_vertices);
  gen->add_option("--min-valency", gen_cfg.min_valency);
  gen->add_option("--max-valency", gen_cfg.max_valency);
  gen->add_option("--max-denominator", gen_cfg.max_denominator);
  gen->add_option("--out", out_path);

  // radon
  auto* radon = app.add_subcommand("radon", "Combinatorial perpendicular Radon transform of a vertex function");
  std::string tree_path, h_path, table_path, mu_path, nu_path, total_text, t_text, skeleton;
  radon->add_option("tree", tree_path)->required();
  radon->add_option("h_file", h_path, "Vertex function JSON")->required();
  radon->add_option("--out", out_path);

  auto* invert = app.add_subcommand("invert", "Invert a flag table");
  invert->add_option("tree", tree_path)->required();
  invert->add_option("table", table_path)->required();
  invert->add_option("--total", total_text, "Sum of h as p/q")->required();
  invert->add_option("--out", out_path);

  auto* w2 = app.add_subcommand("w2", "Squared Wasserstein distance and optimal plan");
  auto* plan = app.add_subcommand("plan", "Optimal transport plan");
  auto* interp = app.add_subcommand("interpolate", "Displacement interpolation at time t");
  for (auto* sub : {w2, plan, interp}) {
    sub->add_option("tree", tree_path)->required();
    sub->add_option("mu", mu_path)->required();
    sub->add_option("nu", nu_path)->required();
    sub->add_option("--out", out_path);
  }
  interp->add_option("--t", t_text, "Time in [0,1] as p/q")->required();

  auto* recon = app.add_subcommand("reconstruct", "Recover a measure from its Radon transform");
  recon->add_option("tree", tree_path)->required();
  recon->add_option("mu", mu_path, "Hidden measure queried through the Radon oracle")->required();
  recon->add_option("--skeleton", skeleton, "Comma-separated candidate edge ids (default: all edges)");
  recon->add_option("--out", out_path);

  auto* ver = app.add_subcommand("verify", "Run the property suites");
  verify::SuiteConfig cfg;
  bool timing = false;
  ver->add_option("--seed", cfg.seed);
  ver->add_option("--trials", cfg.trials);
  ver->add_option("--max-vertices", cfg.max_vertices);
  ver->add_option("--max-valency", cfg.max_valency);
  ver->add_option("--max-atoms", cfg.max_atoms);
  ver->add_option("--max-denominator", cfg.max_denominator);
  ver->add_flag("--inject-fault", cfg.inject_fault, "Corrupt one property to self-check the harness");
  ver->add_flag("--timing", timing, "Include wall-clock duration in the report");
  ver->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*gen) {
      gen_cfg.seed = gen_seed;
      const Tree t = verify::gen_tree(gen_cfg, mode == "finite" ? verify::TreeMode::finite : verify::TreeMode::complete);
      emit(dump(io::to_json(t)), out_path, out);
    } else if (*radon) {
      const Tree t = io::tree_from_json(io::read_file(tree_path));
      const VertexFunction h = io::vertex_function_from_json(t, io::read_file(h_path));
      emit(dump(io::to_json(t, radon_forward(t, h))), out_path, out);
    } else if (*invert) {
      const Rational total = parse_rational(total_text);
      const Tree t = io::tree_from_json(io::read_file(tree_path));
      const FlagTable table = io::flag_table_from_json(t, io::read_file(table_path));
      emit(dump(io::to_json(t, radon_invert(t, table, total))), out_path, out);
    } else if (*w2 || *plan || *interp) {
      const Tree t = io::tree_from_json(io::read_file(tree_path));
      const Measure mu = io::measure_from_json(t, io::read_file(mu_path));
      const Measure nu = io::measure_from_json(t, io::read_file(nu_path));
      const TransportPlan p = optimal_plan(t, mu, nu);
      if (*w2) {
        emit(dump({{"w2_squared", format_rational(p.cost)}, {"plan", io::plan_to_json(t, p)}}), out_path, out);
      } else if (*plan) {
        emit(dump({{"cost", format_rational(p.cost)}, {"plan", io::plan_to_json(t, p)}}), out_path, out);
      } else {
        emit(dump(io::to_json(t, interpolate(t, p, parse_rational(t_text)))), out_path, out);
      }
    } else if (*recon) {
      const Tree t = io::tree_from_json(io::read_file(tree_path));
      const Measure hidden = io::measure_from_json(t, io::read_file(mu_path));
      const RadonOracle oracle = [&](const Geodesic& g) { return radon_measure(t, hidden, g); };
      emit(dump(io::to_json(t, reconstruct_measure(t, oracle, parse_skeleton(t, skeleton)))), out_path, out);
    } else if (*ver) {
      const verify::SuiteReport report = verify::run_suite(cfg);
      emit(dump(verify::to_json(report, timing)), out_path, out);
      for (const auto& p : report.properties)
        if (p.failed) err << "FAIL " << p.name << ": " << p.failed << " of " << (p.passed + p.failed) << " trials\n";
      return report.ok() ? kOk : kDomainFailure;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return kOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"treewass"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace treewass::cli
