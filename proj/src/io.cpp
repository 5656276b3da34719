#include "sigman/io.hpp"

#include <fstream>
#include <sstream>

#include "sigman/error.hpp"

namespace sigman::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvalidInput, where + ": " + what);
}

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::size_t index(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

AmbientPoint point(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  AmbientPoint p;
  p.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return p;
}

std::vector<AmbientPoint> points(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of points");
  std::vector<AmbientPoint> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> numbers(const json& j, const std::string& where) { return point(j, where); }

// Re-tags library errors raised while building a value from a file so the
// CLI can report which field failed.
template <class F>
auto tagged(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidInput) throw;
    fail(where, e.what());
  }
}

}  // namespace

ManifoldSpec manifold_from_json(const json& j, const std::string& where) {
  const json& kind_j = field(j, "kind", where);
  if (!kind_j.is_string()) fail(where + ".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  return tagged(where, [&] {
    if (kind == "euclidean") return ManifoldSpec::euclidean(index(field(j, "dim", where), where + ".dim"));
    if (kind == "shell") {
      return ManifoldSpec::shell(number(field(j, "a", where), where + ".a"), number(field(j, "b", where), where + ".b"));
    }
    if (kind == "unit_sphere") return ManifoldSpec::unit_sphere();
    if (kind == "spd") return ManifoldSpec::spd(index(field(j, "n", where), where + ".n"));
    if (kind == "fisher_half_plane") return ManifoldSpec::fisher_half_plane();
    if (kind == "gaussian_param") {
      const json& box_j = field(j, "box", where);
      if (!box_j.is_array()) fail(where + ".box", "expected an array of [lo, hi] pairs");
      std::vector<Interval> box;
      for (std::size_t i = 0; i < box_j.size(); ++i) {
        const std::string w = where + ".box[" + std::to_string(i) + "]";
        const auto iv = numbers(box_j[i], w);
        if (iv.size() != 2) fail(w, "expected [lo, hi]");
        box.push_back({iv[0], iv[1]});
      }
      if (j.contains("n") && index(j["n"], where + ".n") != box.size()) {
        fail(where + ".n", "does not match the number of box intervals");
      }
      return ManifoldSpec::gaussian_param(std::move(box));
    }
    if (kind == "product") {
      const json& fj = field(j, "factors", where);
      if (!fj.is_array()) fail(where + ".factors", "expected an array");
      std::vector<ManifoldSpec> factors;
      for (std::size_t i = 0; i < fj.size(); ++i) {
        factors.push_back(manifold_from_json(fj[i], where + ".factors[" + std::to_string(i) + "]"));
      }
      return product_manifold(std::move(factors));
    }
    fail(where + ".kind", "unknown manifold kind '" + kind + "'");
  });
}

json to_json(const ManifoldSpec& m) {
  switch (m.kind()) {
    case ManifoldKind::Euclidean: return {{"kind", "euclidean"}, {"dim", m.n()}};
    case ManifoldKind::SphericalShell: return {{"kind", "shell"}, {"a", m.a()}, {"b", m.b()}};
    case ManifoldKind::UnitSphere: return {{"kind", "unit_sphere"}};
    case ManifoldKind::Spd: return {{"kind", "spd"}, {"n", m.n()}};
    case ManifoldKind::FisherHalfPlane: return {{"kind", "fisher_half_plane"}};
    case ManifoldKind::GaussianParam: {
      json box = json::array();
      for (const auto& iv : m.box()) box.push_back({iv.lo, iv.hi});
      return {{"kind", "gaussian_param"}, {"n", m.n()}, {"box", box}};
    }
    case ManifoldKind::Product: {
      json factors = json::array();
      for (const auto& f : m.factors()) factors.push_back(to_json(f));
      return {{"kind", "product"}, {"factors", factors}};
    }
  }
  return {};
}

PolylinePath polyline_from_json(const json& j) {
  ManifoldSpec m = manifold_from_json(field(j, "manifold", "path"));
  auto samples = points(field(j, "samples", "path"), "samples");
  std::vector<double> params;
  if (j.contains("params")) params = numbers(j["params"], "params");
  return tagged("samples", [&] { return make_polyline(std::move(m), std::move(samples), std::move(params)); });
}

json to_json(const PolylinePath& path) {
  return {{"manifold", to_json(path.manifold)}, {"params", path.params}, {"samples", path.samples}};
}

TriMesh mesh_from_json(const json& j) {
  TriMesh mesh{manifold_from_json(field(j, "manifold", "mesh")), {}, {}, std::nullopt, std::nullopt, {}};
  mesh.vertices = points(field(j, "vertices", "mesh"), "vertices");
  const json& faces = field(j, "faces", "mesh");
  if (!faces.is_array()) fail("faces", "expected an array of index triples");
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const std::string w = "faces[" + std::to_string(f) + "]";
    if (!faces[f].is_array() || faces[f].size() != 3) fail(w, "expected [i, j, k]");
    mesh.faces.push_back({index(faces[f][0], w + "[0]"), index(faces[f][1], w + "[1]"), index(faces[f][2], w + "[2]")});
  }
  if (j.contains("a") && !j["a"].is_null()) mesh.a = index(j["a"], "a");
  if (j.contains("b") && !j["b"].is_null()) mesh.b = index(j["b"], "b");
  if (j.contains("sources")) {
    const json& s = j["sources"];
    if (!s.is_array()) fail("sources", "expected an array of vertex indices");
    for (std::size_t i = 0; i < s.size(); ++i) mesh.sources.push_back(index(s[i], "sources[" + std::to_string(i) + "]"));
  }
  tagged("mesh", [&] {
    validate_mesh(mesh);
    return 0;
  });
  return mesh;
}

json to_json(const TriMesh& mesh) {
  json faces = json::array();
  for (const auto& f : mesh.faces) faces.push_back({f[0], f[1], f[2]});
  json out{{"manifold", to_json(mesh.manifold)}, {"vertices", mesh.vertices}, {"faces", faces},
           {"sources", mesh.sources}};
  out["a"] = mesh.a ? json(*mesh.a) : json(nullptr);
  out["b"] = mesh.b ? json(*mesh.b) : json(nullptr);
  return out;
}

ConfigPath config_path_from_json(const json& j) {
  ManifoldSpec m = manifold_from_json(field(j, "manifold", "config_path"));
  const json& cj = field(j, "configs", "config_path");
  if (!cj.is_array()) fail("configs", "expected an array of configurations");
  std::optional<std::size_t> n;
  if (j.contains("n")) n = index(j["n"], "n");
  std::vector<Configuration> configs;
  for (std::size_t k = 0; k < cj.size(); ++k) {
    const std::string w = "configs[" + std::to_string(k) + "]";
    auto pts = points(cj[k], w);
    if (n && pts.size() != *n) fail(w, "expected " + std::to_string(*n) + " points");
    configs.push_back(tagged(w, [&] { return make_configuration(m, std::move(pts)); }));
  }
  std::vector<double> params;
  if (j.contains("params")) params = numbers(j["params"], "params");
  return tagged("configs", [&] { return make_config_path(std::move(configs), std::move(params)); });
}

json to_json(const ConfigPath& path) {
  json configs = json::array();
  for (const auto& c : path.configs) configs.push_back(c.points);
  return {{"manifold", to_json(path.manifold())}, {"n", path.particles()}, {"params", path.params}, {"configs", configs}};
}

WeightedGraph graph_from_json(const json& j) {
  const std::size_t n = index(field(j, "n", "graph"), "n");
  const json& ej = field(j, "edges", "graph");
  if (!ej.is_array()) fail("edges", "expected an array of [i, j, w] triples");
  std::vector<WeightedEdge> edges;
  for (std::size_t k = 0; k < ej.size(); ++k) {
    const std::string w = "edges[" + std::to_string(k) + "]";
    if (!ej[k].is_array() || (ej[k].size() != 3 && ej[k].size() != 2)) fail(w, "expected [i, j, w]");
    WeightedEdge e{index(ej[k][0], w + "[0]"), index(ej[k][1], w + "[1]"), 1.0};
    if (ej[k].size() == 3) e.w = number(ej[k][2], w + "[2]");
    edges.push_back(e);
  }
  return tagged("edges", [&] { return make_graph(n, std::move(edges)); });
}

json to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({e.i, e.j, e.w});
  return {{"n", g.n}, {"edges", edges}};
}

json to_json(const EnergyReport& r) {
  json out{{"e1", r.e1},
           {"e2", r.e2},
           {"bound1", r.bound1},
           {"bound2", r.bound2},
           {"satisfied", {r.satisfied1, r.satisfied2}},
           {"n_samples", r.samples}};
  if (r.faces > 0) out["n_faces"] = r.faces;
  return out;
}

json to_json(const FisherTensor& t, double mu, double sigma, std::size_t quad_points) {
  return {{"mu", mu},
          {"sigma", sigma},
          {"quad", quad_points},
          {"g11", t.g11},
          {"g12", t.g12},
          {"g22_numeric", t.g22},
          {"g22_published", g22_published_closed_form(sigma)},
          {"g22_classical", g22_classical_closed_form(sigma)},
          {"g11_closed_form", 1.0 / (sigma * sigma)}};
}

json to_json(const GaussianBoundReport& r) {
  return {{"monotone", r.all_monotone},
          {"monotone_per_coordinate", r.monotone},
          {"hull_ok", r.hull.ok},
          {"hull_tested", r.hull.tested},
          {"hull_failed", r.hull.failed},
          {"e2", r.e2},
          {"lower_bound", r.lower_bound},
          {"hypotheses_hold", r.hypotheses_hold},
          {"satisfied", r.satisfied}};
}

json to_json(const ConfigBoundReport& r) {
  json comps = json::array();
  for (std::size_t j = 0; j < r.components.size(); ++j) {
    comps.push_back({{"j", j}, {"e1", r.components[j].e1}, {"e2", r.components[j].e2}, {"ok", r.component_ok[j]}});
  }
  return {{"energy", to_json(r.energy)},
          {"upper_ok", r.upper_ok},
          {"components", comps},
          {"components_ok", r.components_ok},
          {"monotone", r.all_monotone},
          {"hull_ok", r.hull.ok},
          {"hypotheses_iii", r.hypotheses_iii},
          {"lower_bound", r.lower_bound},
          {"lower_ok", r.lower_ok},
          {"all_ok", r.all_ok()}};
}

json to_json(const EmbedResult& r) {
  return {{"objective", r.objective},
          {"points", r.config.points},
          {"ratios", r.ratios},
          {"iterations", r.iterations},
          {"restarts", r.restarts},
          {"best_restart", r.best_restart},
          {"seed", r.seed}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
}

}  // namespace sigman::io
