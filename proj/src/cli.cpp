#include "sigman/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigman/error.hpp"
#include "sigman/io.hpp"
#include "sigman/verify.hpp"

namespace sigman::cli {

namespace {

using io::json;

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream s;
  s << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

/// Files read by a command, recorded with their digests.
class Inputs {
 public:
  json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidInput, path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    digests_[path] = fnv1a_digest(bytes);
    try {
      return json::parse(bytes);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
    }
  }

  json digests() const { return json(digests_); }

 private:
  std::map<std::string, std::string> digests_;
};

struct Outcome {
  json outputs;
  bool checks_pass = true;
  std::optional<std::uint64_t> seed;
  /// Rows of a plot-ready table for --csv; the first row is the header.
  std::vector<std::vector<std::string>> table;
};

std::string cell(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

/// Scalar fields of a JSON object as (key, value) rows, nested keys joined by '.'.
void scalar_rows(const json& j, const std::string& prefix, std::vector<std::vector<std::string>>& rows) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      scalar_rows(*it, key, rows);
    } else if (it->is_number_float()) {
      rows.push_back({key, cell(it->get<double>())});
    } else if (it->is_primitive()) {
      rows.push_back({key, it->dump()});
    }
  }
}

void write_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, path + ": cannot open for writing");
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

Outcome energy_report(const EnergyReport& r) {
  return {io::to_json(r), r.satisfied1 && r.satisfied2, std::nullopt, {}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signal energies, energy-bound verification and graph quasi-embeddings"};
  app.name("sigman");
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  std::string csv_path;
  bool no_timing = false;
  app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
  app.add_option("--csv", csv_path, "Also write a plot-ready CSV table");
  app.add_flag("--no-timing", no_timing, "Omit wall-clock timing from the report");

  Inputs inputs;
  std::function<Outcome()> action;
  std::string command;

  // energy
  auto* energy = app.add_subcommand("energy", "Signal energies and their upper bounds");
  energy->require_subcommand(1);

  std::string curve_path;
  auto* curve = energy->add_subcommand("curve", "Energies of a polyline curve with A = its first sample");
  curve->add_option("--path", curve_path, "PolylinePath JSON")->required();
  curve->callback([&] {
    command = "energy curve";
    action = [&] {
      const auto path = io::polyline_from_json(inputs.load(curve_path));
      const auto report = curve_energy(make_signal_curve(path));
      Outcome o = energy_report(report);
      const auto s = cumulative_arclength(path);
      o.table.push_back({"index", "param", "arclength"});
      for (std::size_t i = 0; i < s.size(); ++i) o.table.push_back({std::to_string(i), cell(path.params[i]), cell(s[i])});
      return o;
    };
  });

  std::string mesh_path;
  auto* region = energy->add_subcommand("region", "Energies of a triangulated region measured from its sources");
  region->add_option("--mesh", mesh_path, "TriMesh JSON")->required();
  region->callback([&] {
    command = "energy region";
    action = [&] {
      TriMesh mesh = io::mesh_from_json(inputs.load(mesh_path));
      if (mesh.sources.empty() && mesh.a) mesh.sources = {*mesh.a};
      std::vector<std::size_t> targets;
      if (mesh.b && std::find(mesh.sources.begin(), mesh.sources.end(), *mesh.b) == mesh.sources.end()) {
        targets = {*mesh.b};
      }
      const auto report = region_energy(make_signal_region(std::move(mesh), std::move(targets)));
      return energy_report(report);
    };
  });

  double grid = 0.01;
  double rect_tol = 0.02;
  auto* rect = energy->add_subcommand("rectangle", "Rectangle [-1,1]x[0,1] measured from its top edge");
  rect->add_option("--grid", grid, "Grid step")->check(CLI::PositiveNumber);
  rect->add_option("--tol", rect_tol, "Relative tolerance against E1 = 1, E2 = 2/3");
  rect->callback([&] {
    command = "energy rectangle";
    action = [&] {
      const auto report = region_energy(top_edge_rectangle(grid));
      Outcome o = energy_report(report);
      const double err1 = std::abs(report.e1 - 1.0);
      const double err2 = std::abs(report.e2 - 2.0 / 3.0) / (2.0 / 3.0);
      o.outputs["grid"] = grid;
      o.outputs["expected"] = {{"e1", 1.0}, {"e2", 2.0 / 3.0}};
      o.outputs["relative_error"] = {{"e1", err1}, {"e2", err2}};
      o.outputs["tol"] = rect_tol;
      o.checks_pass = o.checks_pass && err1 <= rect_tol && err2 <= rect_tol;
      return o;
    };
  });

  // gaussian
  auto* gaussian = app.add_subcommand("gaussian", "Gaussian family: Fisher metric and the cubic lower bound");
  gaussian->require_subcommand(1);

  double mu = 0.0;
  double sigma = 1.0;
  std::size_t quad = 401;
  double fisher_tol = 1e-8;
  auto* fisher = gaussian->add_subcommand("fisher", "Fisher metric of N(mu, sigma^2) by quadrature");
  fisher->add_option("--mu", mu, "Mean");
  fisher->add_option("--sigma", sigma, "Standard deviation");
  fisher->add_option("--quad", quad, "Quadrature nodes");
  fisher->add_option("--tol", fisher_tol, "Relative tolerance for g11 against 1/sigma^2");
  fisher->callback([&] {
    command = "gaussian fisher";
    action = [&] {
      const auto t = fisher_metric_numeric(mu, sigma, quad);
      const auto t2 = fisher_metric_numeric(mu, sigma, 2 * quad - 1);
      Outcome o{io::to_json(t, mu, sigma, quad), true, std::nullopt, {}};
      const double g11_exact = 1.0 / (sigma * sigma);
      const double g11_err = std::abs(t.g11 - g11_exact) / g11_exact;
      const double doubling =
          std::max({std::abs(t2.g11 - t.g11), std::abs(t2.g12 - t.g12), std::abs(t2.g22 - t.g22)});
      o.outputs["g11_relative_error"] = g11_err;
      o.outputs["quad_doubling_change"] = doubling;
      o.checks_pass = g11_err <= fisher_tol && std::abs(t.g12) <= 1e-10;
      return o;
    };
  });

  std::string gauss_path;
  auto* bound = gaussian->add_subcommand("bound", "E2 >= (1/3)||q - p||_3^3 for a path of Gaussians");
  bound->add_option("--path", gauss_path, "PolylinePath JSON over a gaussian_param manifold")->required();
  bound->callback([&] {
    command = "gaussian bound";
    action = [&] {
      const auto report = check_gaussian_lower_bound(io::polyline_from_json(inputs.load(gauss_path)));
      return Outcome{io::to_json(report), !report.hypotheses_hold || report.satisfied, std::nullopt, {}};
    };
  });

  // config
  auto* config = app.add_subcommand("config", "Paths in configuration spaces");
  config->require_subcommand(1);

  std::string config_path;
  auto* cenergy = config->add_subcommand("energy", "Energies of a configuration path");
  cenergy->add_option("--path", config_path, "ConfigPath JSON")->required();
  cenergy->callback([&] {
    command = "config energy";
    action = [&] { return energy_report(config_path_energy(io::config_path_from_json(inputs.load(config_path)))); };
  });

  std::vector<std::string> checks;
  auto* cbounds = config->add_subcommand("bounds", "Upper, component and lower bounds of a configuration path");
  cbounds->add_option("--path", config_path, "ConfigPath JSON")->required();
  cbounds->add_option("--check", checks, "Parts to check: i, ii, iii (default all)")
      ->check(CLI::IsMember({"i", "ii", "iii"}))
      ->delimiter(',');
  cbounds->callback([&] {
    command = "config bounds";
    action = [&] {
      auto wants = [&](const std::string& part) {
        return checks.empty() || std::find(checks.begin(), checks.end(), part) != checks.end();
      };
      const auto report = check_config_bounds(io::config_path_from_json(inputs.load(config_path)), wants("iii"));
      Outcome o{io::to_json(report), true, std::nullopt, {}};
      if (wants("i")) o.checks_pass = o.checks_pass && report.upper_ok;
      if (wants("ii")) o.checks_pass = o.checks_pass && report.components_ok;
      if (wants("iii")) o.checks_pass = o.checks_pass && (!report.hypotheses_iii || report.lower_ok);
      o.outputs["checked"] = checks.empty() ? std::vector<std::string>{"i", "ii", "iii"} : checks;
      o.table.push_back({"particle", "e1", "e2", "ok"});
      for (std::size_t j = 0; j < report.components.size(); ++j) {
        o.table.push_back({std::to_string(j), cell(report.components[j].e1), cell(report.components[j].e2),
                           report.component_ok[j] ? "true" : "false"});
      }
      return o;
    };
  });

  // embed
  std::string graph_path;
  std::string manifold_path;
  EmbedOptions embed_opts;
  std::optional<double> embed_tol;
  auto* embed = app.add_subcommand("embed", "Minimize the relative ratio variance of a graph placement");
  embed->add_option("--graph", graph_path, "Graph JSON")->required();
  embed->add_option("--manifold", manifold_path, "Manifold JSON")->required();
  embed->add_option("--restarts", embed_opts.restarts, "Independent restarts")->check(CLI::PositiveNumber);
  embed->add_option("--seed", embed_opts.seed, "Seed");
  embed->add_option("--iters", embed_opts.max_iters, "Descent iterations per restart");
  embed->add_flag("--anneal", embed_opts.annealing, "Add a simulated-annealing pass to each restart");
  embed->add_option("--tol", embed_tol, "Fail unless the objective is at most this value");
  embed->callback([&] {
    command = "embed";
    action = [&] {
      const auto g = io::graph_from_json(inputs.load(graph_path));
      const auto m = io::manifold_from_json(inputs.load(manifold_path));
      const auto result = minimize_ratio_variance(g, m, embed_opts);
      Outcome o{io::to_json(result), !embed_tol || result.objective <= *embed_tol, embed_opts.seed, {}};
      o.table.push_back({"edge", "i", "j", "weight", "ratio"});
      for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const auto& e = g.edges[k];
        o.table.push_back(
            {std::to_string(k), std::to_string(e.i), std::to_string(e.j), cell(e.w), cell(result.ratios[k])});
      }
      return o;
    };
  });

  // verify-all
  VerifyOptions verify_opts;
  std::optional<std::size_t> corpus;
  auto* verify = app.add_subcommand("verify-all", "Run every verification corpus and summarize");
  verify->add_option("--seed", verify_opts.seed, "Corpus seed");
  verify->add_option("--samples", corpus, "Cases per corpus (default 1000)")->check(CLI::PositiveNumber);
  verify->callback([&] {
    command = "verify-all";
    action = [&] {
      if (corpus) {
        verify_opts.curves = verify_opts.gaussian_paths = verify_opts.config_paths = verify_opts.scale_configs =
            *corpus;
      }
      const auto suites = verify_all(verify_opts);
      Outcome o{json::object(), true, verify_opts.seed, {}};
      json summary = json::object();
      json detail = json::object();
      o.table.push_back({"suite", "passed", "total", "ok"});
      for (const auto& s : suites) {
        summary[s.name] = std::to_string(s.passed) + "/" + std::to_string(s.total);
        json d{{"passed", s.passed}, {"total", s.total}, {"ok", s.ok}};
        for (const auto& [k, v] : s.counts) d[k] = v;
        for (const auto& [k, v] : s.extremes) d[k] = v;
        detail[s.name] = d;
        o.checks_pass = o.checks_pass && s.ok;
        o.table.push_back({s.name, std::to_string(s.passed), std::to_string(s.total), s.ok ? "pass" : "fail"});
      }
      o.outputs = {{"summary", summary}, {"suites", detail}, {"all_ok", o.checks_pass}};
      return o;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = action();
  } catch (const Error& e) {
    err << "sigman: " << e.what() << '\n';
    return kExitBadInput;
  }
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;

  json report{{"command", command}, {"inputs", inputs.digests()}, {"outputs", outcome.outputs},
              {"status", outcome.checks_pass ? "pass" : "fail"}};
  report["seed"] = outcome.seed ? json(*outcome.seed) : json(nullptr);
  if (!no_timing) report["timing"] = {{"wall_seconds", wall.count()}};

  try {
    if (!csv_path.empty()) {
      auto rows = outcome.table;
      if (rows.empty()) {
        rows.push_back({"field", "value"});
        scalar_rows(outcome.outputs, "", rows);
      }
      write_csv(csv_path, rows);
    }
    if (out_path.empty()) {
      out << report.dump(2) << '\n';
    } else {
      std::ofstream file(out_path);
      if (!file) throw Error(ErrorCode::InvalidInput, out_path + ": cannot open for writing");
      file << report.dump(2) << '\n';
    }
  } catch (const Error& e) {
    err << "sigman: " << e.what() << '\n';
    return kExitBadInput;
  }
  return outcome.checks_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace sigman::cli
