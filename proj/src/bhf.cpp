#include "bott/bhf.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bott::bhf {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(errc::format, "BHF: " + msg); }

const char* kind_name(ParameterGrid::Kind k) {
  switch (k) {
    case ParameterGrid::Kind::point: return "point";
    case ParameterGrid::Kind::circle: return "circle";
    case ParameterGrid::Kind::torus: return "torus";
    case ParameterGrid::Kind::suspension: return "suspension";
    case ParameterGrid::Kind::product: return "product";
  }
  return "?";
}

json grid_to_json(const ParameterGrid& g) {
  json j;
  j["kind"] = kind_name(g.kind());
  json sizes = json::array();
  json axes = json::array();
  for (const Axis& a : g.axes()) {
    sizes.push_back(a.size);
    axes.push_back(a.kind == AxisKind::periodic ? "periodic" : "suspension");
  }
  j["sizes"] = sizes;
  j["axes"] = axes;
  if (g.kind() == ParameterGrid::Kind::suspension) j["inner"] = grid_to_json(g.inner());
  if (g.kind() == ParameterGrid::Kind::product) j["factors"] = json::array({grid_to_json(g.first()), grid_to_json(g.second())});
  return j;
}

std::vector<int> int_list(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) bad(std::string("space missing '") + key + "'");
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) bad(std::string("'") + key + "' must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

ParameterGrid grid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) bad("space needs a 'kind'");
  const std::string kind = j["kind"];
  const auto sizes = int_list(j, "sizes");
  ParameterGrid g = ParameterGrid::point();
  if (kind == "point") {
    g = ParameterGrid::point();
  } else if (kind == "circle") {
    if (sizes.size() != 1) bad("circle needs one size");
    g = ParameterGrid::circle(sizes[0]);
  } else if (kind == "torus") {
    if (sizes.size() < 2) bad("torus needs at least two sizes");
    g = ParameterGrid::torus(sizes);
  } else if (kind == "suspension") {
    if (!j.contains("inner")) bad("suspension needs 'inner'");
    if (sizes.empty()) bad("suspension needs sizes");
    g = ParameterGrid::suspension(grid_from_json(j["inner"]), sizes[0]);
  } else if (kind == "product") {
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].size() != 2) bad("product needs two 'factors'");
    g = ParameterGrid::product(grid_from_json(j["factors"][0]), grid_from_json(j["factors"][1]));
  } else {
    bad("unknown space kind '" + kind + "'");
  }
  if (g.kind() != ParameterGrid::Kind::point && kind_name(g.kind()) != kind) bad("degenerate " + kind + " space");
  std::vector<int> actual;
  for (const Axis& a : g.axes()) actual.push_back(a.size);
  if (actual != sizes) bad("space sizes do not match its structure");
  if (j.contains("axes")) {
    const json& axes = j["axes"];
    if (!axes.is_array() || axes.size() != g.axes().size()) bad("axis semantics do not match sizes");
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const std::string want = g.axes()[i].kind == AxisKind::periodic ? "periodic" : "suspension";
      if (!axes[i].is_string() || axes[i].get<std::string>() != want) bad("axis " + std::to_string(i) + " should be " + want);
    }
  }
  return g;
}

json entries(const MatrixXc& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  return out;
}

cplx entry(const json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) bad("complex entries must be [re, im]");
  return {e[0].get<double>(), e[1].get<double>()};
}

json header(const BasicFamily<cplx>& f) {
  json j;
  j["version"] = kVersion;
  j["space"] = grid_to_json(f.grid());
  j["dim"] = f.dim();
  return j;
}

json data(const BasicFamily<cplx>& f) {
  json out = json::array();
  for (const auto& m : f)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  return out;
}

}  // namespace

std::string space_json(const ParameterGrid& grid) { return grid_to_json(grid).dump(); }

std::string to_string(const HamiltonianFamily& f) {
  json j = header(f);
  if (f.chiral()) j["chiral"] = entries(*f.chiral());
  j["data"] = data(f);
  return j.dump();
}

std::string to_string(const ProjectorFamily& f) {
  json j = header(f);
  j["projector"] = {{"rank", f.rank()}};
  j["data"] = data(f);
  return j.dump();
}

std::string to_string(const UnitaryFamily& f) {
  json j = header(f);
  j["unitary"] = true;
  j["data"] = data(f);
  return j.dump();
}

std::string to_string(const AnyFamily& f) {
  return std::visit([](const auto& x) { return to_string(x); }, f);
}

AnyFamily parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("top level must be an object");
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != kVersion) {
    bad("unsupported version (expected " + std::to_string(kVersion) + ")");
  }
  if (!j.contains("space")) bad("missing 'space'");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() < 1) bad("'dim' must be a positive integer");
  if (!j.contains("data") || !j["data"].is_array()) bad("missing 'data'");

  ParameterGrid grid = grid_from_json(j["space"]);
  const int dim = j["dim"];
  const std::size_t per = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
  const json& d = j["data"];
  if (d.size() != grid.size() * per) {
    bad("data holds " + std::to_string(d.size()) + " entries, expected " + std::to_string(grid.size() * per));
  }
  std::vector<MatrixXc> values(grid.size(), MatrixXc(dim, dim));
  std::size_t k = 0;
  for (auto& m : values)
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = entry(d[k++]);

  const bool unitary = j.contains("unitary") && j["unitary"].is_boolean() && j["unitary"].get<bool>();
  if (unitary) return UnitaryFamily(std::move(grid), dim, std::move(values));
  if (j.contains("projector")) {
    const json& p = j["projector"];
    if (!p.is_object() || !p.contains("rank") || !p["rank"].is_number_integer()) bad("'projector' needs an integer 'rank'");
    return ProjectorFamily(std::move(grid), dim, p["rank"].get<int>(), std::move(values));
  }
  std::optional<MatrixXc> chiral;
  if (j.contains("chiral")) {
    const json& c = j["chiral"];
    if (!c.is_array() || c.size() != per) bad("'chiral' must hold dim*dim entries");
    MatrixXc g(dim, dim);
    std::size_t q = 0;
    for (int r = 0; r < dim; ++r)
      for (int col = 0; col < dim; ++col) g(r, col) = entry(c[q++]);
    chiral = std::move(g);
  }
  return HamiltonianFamily(std::move(grid), dim, std::move(values), std::move(chiral));
}

AnyFamily read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write(const std::string& path, const AnyFamily& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::io, "cannot write '" + path + "'");
  out << to_string(f) << '\n';
  if (!out) throw Error(errc::io, "write failed for '" + path + "'");
}

HamiltonianFamily as_hamiltonian(AnyFamily f) {
  if (auto* h = std::get_if<HamiltonianFamily>(&f)) return std::move(*h);
  bad("expected a Hamiltonian family");
}

UnitaryFamily as_unitary(AnyFamily f) {
  if (auto* u = std::get_if<UnitaryFamily>(&f)) return std::move(*u);
  bad("expected a unitary family");
}

}  // namespace bott::bhf
