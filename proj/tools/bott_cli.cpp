#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bott/bhf.hpp"
#include "bott/invariants.hpp"
#include "bott/kring.hpp"
#include "bott/ktheory.hpp"
#include "bott/models.hpp"
#include "bott/spectral.hpp"
#include "bott/verify.hpp"
#include "json.hpp"

using namespace bott;
using nlohmann::ordered_json;

namespace {

void emit(const bhf::AnyFamily& f, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << bhf::to_string(f) << "\n";
  } else {
    bhf::write(out, f);
  }
}

// "circle:16", "torus:48x48", "s2:17x16" (n_t x n_k), "s2xs2:21x20".
ParameterGrid parse_grid(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(errc::parse, "grid descriptor needs kind:sizes, got \"" + text + "\"");
  const std::string kind = text.substr(0, colon);
  std::vector<int> sizes;
  std::string rest = text.substr(colon + 1);
  try {
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto x = rest.find('x', pos);
      sizes.push_back(std::stoi(rest.substr(pos, x == std::string::npos ? std::string::npos : x - pos)));
      if (x == std::string::npos) break;
      pos = x + 1;
    }
  } catch (const std::exception&) {
    throw Error(errc::parse, "bad grid sizes \"" + rest + "\"");
  }
  auto need = [&](std::size_t n) {
    if (sizes.size() != n) throw Error(errc::parse, kind + " grid needs " + std::to_string(n) + " sizes");
  };
  if (kind == "circle") {
    need(1);
    return ParameterGrid::circle(sizes[0]);
  }
  if (kind == "torus") return ParameterGrid::torus(sizes);
  if (kind == "s2") {
    need(2);
    return ParameterGrid::suspension(ParameterGrid::circle(sizes[1]), sizes[0]);
  }
  if (kind == "s2xs2") {
    need(2);
    const auto s = ParameterGrid::suspension(ParameterGrid::circle(sizes[1]), sizes[0]);
    return ParameterGrid::product(s, s);
  }
  throw Error(errc::parse, "unknown grid kind \"" + kind + "\"");
}

// Projector files are used as-is; Hamiltonians need an explicit band.
ProjectorFamily projector_of(bhf::AnyFamily f, const std::string& band) {
  if (auto* p = std::get_if<ProjectorFamily>(&f)) return std::move(*p);
  if (band.empty()) throw Error(errc::parse, "--band occupied|empty is required for a Hamiltonian input");
  return band_projector(bhf::as_hamiltonian(std::move(f)), band == "empty" ? Band::empty : Band::occupied);
}

UnitaryFamily unitary_of(bhf::AnyFamily f) {
  if (auto* u = std::get_if<UnitaryFamily>(&f)) return std::move(*u);
  return ktheory::chiral_unitary(spectral_flatten(bhf::as_hamiltonian(std::move(f))));
}

ordered_json report_json(const invariants::InvariantReport& r, const ParameterGrid& grid) {
  ordered_json j;
  j["raw"] = r.raw;
  j["value"] = r.value;
  j["residual"] = r.residual;
  j["converged"] = r.converged;
  j["grid"] = ordered_json::parse(bhf::space_json(grid));
  if (r.odd_chern) j["odd_chern"] = *r.odd_chern;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw Error(errc::io, "cannot write " + path);
  os << text;
  if (!os) throw Error(errc::io, "write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bott: K-theory of gapped Hamiltonian families"};
  app.require_subcommand(1);

  // model
  auto* model = app.add_subcommand("model", "Write a model family as BHF");
  std::string model_name, model_out, model_grid;
  double v = 0.5, w = 1.0, mass = 1.0;
  int winding = 1, n = 16, nt = 17;
  bool flatten_model = false;
  model->add_option("name", model_name, "ssh | winding | monopole | massive-dirac | dirac5")
      ->required()
      ->check(CLI::IsMember({"ssh", "winding", "monopole", "massive-dirac", "dirac5"}));
  model->add_option("--v", v, "SSH intra-cell hopping");
  model->add_option("--w", w, "SSH inter-cell hopping");
  model->add_option("--M", mass, "Dirac mass");
  model->add_option("--winding", winding, "winding of e^{iwk}");
  model->add_option("--n", n, "periodic points per axis");
  model->add_option("--nt", nt, "suspension points (both ends included)");
  model->add_option("--grid", model_grid, "grid descriptor: circle:N, torus:NxN, s2:NTxN, s2xs2:NTxN");
  model->add_flag("--flatten", flatten_model, "replace H by sgn(H)");
  model->add_option("-o,--output", model_out, "output file (default stdout)");
  model->callback([&] {
    auto grid_or = [&](ParameterGrid fallback) { return model_grid.empty() ? fallback : parse_grid(model_grid); };
    const auto s2 = [&] { return ParameterGrid::suspension(ParameterGrid::circle(n), nt); };
    std::optional<HamiltonianFamily> h;
    if (model_name == "ssh") h = models::ssh(v, w, grid_or(ParameterGrid::circle(n)));
    if (model_name == "winding") h = models::chiral_winding(winding, grid_or(ParameterGrid::circle(n)));
    if (model_name == "monopole") h = models::dirac_monopole(grid_or(s2()));
    if (model_name == "massive-dirac") h = models::massive_dirac(mass, grid_or(ParameterGrid::torus({n, n})));
    if (model_name == "dirac5") h = models::dirac5(grid_or(ParameterGrid::product(s2(), s2())));
    emit(flatten_model ? spectral_flatten(*h) : *h, model_out);
  });

  // flatten
  auto* flatten = app.add_subcommand("flatten", "Spectral flattening H -> sgn(H)");
  std::string flatten_in, flatten_out;
  flatten->add_option("input", flatten_in)->required();
  flatten->add_option("-o,--output", flatten_out);
  flatten->callback([&] { emit(spectral_flatten(bhf::as_hamiltonian(bhf::read(flatten_in))), flatten_out); });

  // product
  auto* product = app.add_subcommand("product", "Star product over the product space");
  std::string prod_a, prod_b, prod_out;
  product->add_option("a", prod_a)->required();
  product->add_option("b", prod_b)->required();
  product->add_option("-o,--output", prod_out);
  product->callback([&] {
    auto a = bhf::read(prod_a);
    auto b = bhf::read(prod_b);
    const auto* pa = std::get_if<ProjectorFamily>(&a);
    const auto* pb = std::get_if<ProjectorFamily>(&b);
    if (pa && pb) {
      emit(ktheory::star_product_projectors(*pa, *pb), prod_out);
    } else {
      emit(ktheory::star_product(bhf::as_hamiltonian(std::move(a)), bhf::as_hamiltonian(std::move(b))), prod_out);
    }
  });

  // suspend
  auto* suspend = app.add_subcommand("suspend", "cos(pi t) Gamma + sin(pi t) H over S(X)");
  std::string susp_in, susp_out;
  int susp_nt = 17;
  bool loop = false;
  suspend->add_option("input", susp_in)->required();
  suspend->add_option("--nt", susp_nt, "suspension points");
  suspend->add_flag("--loop", loop, "extend past t = 1 to a loop");
  suspend->add_option("-o,--output", susp_out);
  suspend->callback([&] {
    auto s = ktheory::suspend(bhf::as_hamiltonian(bhf::read(susp_in)), susp_nt);
    emit(loop ? ktheory::loop_extend(s) : s, susp_out);
  });

  // clutch
  auto* clutch = app.add_subcommand("clutch", "Clutching function at t = 1/2 of a suspension");
  std::string clutch_in, clutch_out;
  clutch->add_option("input", clutch_in)->required();
  clutch->add_option("-o,--output", clutch_out);
  clutch->callback([&] { emit(ktheory::extract_clutching(bhf::as_hamiltonian(bhf::read(clutch_in))), clutch_out); });

  // reflect
  auto* reflect = app.add_subcommand("reflect", "Reverse one stored coordinate");
  std::string refl_in, refl_out;
  int refl_axis = 0;
  reflect->add_option("input", refl_in)->required();
  reflect->add_option("--axis", refl_axis)->required();
  reflect->add_option("-o,--output", refl_out);
  reflect->callback([&] {
    auto f = bhf::read(refl_in);
    emit(std::visit([&](const auto& x) { return bhf::AnyFamily(ktheory::reflect_coordinate(x, refl_axis)); }, f), refl_out);
  });

  // invariant
  auto* inv = app.add_subcommand("invariant", "Winding, first or second Chern number as JSON");
  std::string inv_kind, inv_in, inv_band, inv_method = "link", inv_dump;
  inv->add_option("kind", inv_kind)->required()->check(CLI::IsMember({"winding", "c1", "c2"}));
  inv->add_option("input", inv_in)->required();
  inv->add_option("--band", inv_band)->check(CLI::IsMember({"occupied", "empty"}));
  inv->add_option("--method", inv_method, "c1 only")->check(CLI::IsMember({"link", "curvature"}));
  inv->add_option("--dump-curvature", inv_dump, "write per-point density CSV");
  inv->callback([&] {
    auto f = bhf::read(inv_in);
    ordered_json j;
    if (inv_kind == "winding") {
      const auto u = unitary_of(std::move(f));
      j = report_json(invariants::winding_number(u), u.grid());
      if (!inv_dump.empty()) write_text(inv_dump, invariants::density_csv(u.grid(), invariants::odd_chern_density(u)));
    } else if (inv_kind == "c1") {
      const auto p = projector_of(std::move(f), inv_band);
      const auto r = inv_method == "link" ? invariants::chern1_link(p)
                                          : invariants::make_report(invariants::chern1_curvature(p), p.grid());
      j = report_json(r, p.grid());
      if (!inv_dump.empty()) write_text(inv_dump, invariants::density_csv(p.grid(), invariants::chern1_curvature_density(p)));
    } else {
      const auto p = projector_of(std::move(f), inv_band);
      j = report_json(invariants::chern2(p), p.grid());
      if (!inv_dump.empty()) write_text(inv_dump, invariants::density_csv(p.grid(), invariants::chern2_density(p)));
    }
    std::cout << j.dump(2) << "\n";
  });

  // kring
  auto* kr = app.add_subcommand("kring", "Exterior algebra arithmetic and classification");
  kr->require_subcommand(1);
  auto* kr_eval = kr->add_subcommand("eval", "Evaluate an expression in Lambda(b1..bd)");
  std::string expr;
  int d = 1;
  kr_eval->add_option("expr", expr)->required();
  kr_eval->add_option("--d", d, "number of generators")->check(CLI::NonNegativeNumber);
  kr_eval->callback([&] { std::cout << kring::to_string(kring::parse(expr, d)) << "\n"; });
  auto* kr_class = kr->add_subcommand("classify", "Ring element of a unitary over S^1 or a band over T^2");
  std::string class_in, class_band;
  kr_class->add_option("input", class_in)->required();
  kr_class->add_option("--band", class_band)->check(CLI::IsMember({"occupied", "empty"}));
  kr_class->callback([&] {
    auto f = bhf::read(class_in);
    const ParameterGrid& g = std::visit([](const auto& x) -> const ParameterGrid& { return x.grid(); }, f);
    if (g.kind() == ParameterGrid::Kind::circle) {
      std::cout << kring::to_string(kring::classify_k1_circle(unitary_of(std::move(f)))) << "\n";
    } else {
      const auto c = kring::classify_k0_torus2(projector_of(std::move(f), class_band));
      std::cout << "rank " << c.rank << ", " << kring::to_string(c.reduced) << "\n";
    }
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Run the reproduction suite");
  bool quick = false, as_json = false;
  int verify_status = 0;
  ver->add_flag("--quick", quick, "skip the 4D second-Chern checks");
  ver->add_flag("--json", as_json, "print JSON instead of a table");
  ver->callback([&] {
    const auto r = verify::run_suite({quick});
    std::cout << (as_json ? verify::to_json(r) + "\n" : verify::format_table(r));
    verify_status = r.all_passed() ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return verify_status;
}
