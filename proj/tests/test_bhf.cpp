#include <cstdio>
#include <filesystem>
#include <random>

#include "bott/bhf.hpp"
#include "bott/ktheory.hpp"
#include "bott/models.hpp"
#include "bott/spectral.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace bott;

namespace {

// Random Hermitian values with awkward doubles (subnormals, large exponents).
HamiltonianFamily random_hamiltonian(const ParameterGrid& g, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> e(-300, 300);
  std::vector<MatrixXc> v(g.size());
  for (auto& m : v) {
    MatrixXc a(n, n);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = cplx(std::ldexp(u(rng), e(rng)), u(rng) / 3.0);
    m = a + a.adjoint();
  }
  // Suspension ends must be constant along the collapsed axes.
  for (int ax = 0; ax < g.rank(); ++ax) {
    if (g.axis(ax).kind != AxisKind::suspension) continue;
    const int last = g.axis(ax).size - 1;
    for (std::size_t p = 0; p < g.size(); ++p) {
      const int t = g.index_along(p, ax);
      if (t != 0 && t != last) continue;
      auto idx = g.unravel(p);
      for (int b = ax + 1; b < g.rank(); ++b) idx[static_cast<std::size_t>(b)] = 0;
      v[p] = v[g.ravel(idx)];
    }
  }
  return HamiltonianFamily(g, n, std::move(v));
}

template <typename F>
void require_identical(const F& a, const F& b) {
  REQUIRE(a.grid() == b.grid());
  REQUIRE(a.dim() == b.dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (Eigen::Index k = 0; k < a[i].size(); ++k) {
      REQUIRE(a[i].data()[k].real() == b[i].data()[k].real());
      REQUIRE(a[i].data()[k].imag() == b[i].data()[k].imag());
    }
  }
}

nlohmann::json doc_of(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_SUITE("bhf") {
  TEST_CASE("round trip is bit exact for every grid kind") {
    std::mt19937_64 rng(11);
    const auto s2 = ParameterGrid::suspension(ParameterGrid::circle(4), 3);
    const std::vector<ParameterGrid> grids{ParameterGrid::circle(5), ParameterGrid::torus({3, 4}), s2,
                                           ParameterGrid::product(s2, ParameterGrid::circle(3)),
                                           ParameterGrid::suspension(ParameterGrid::torus({3, 3}), 4)};
    for (const auto& g : grids) {
      for (int n : {1, 2, 3}) {
        const auto h = random_hamiltonian(g, n, rng);
        const auto back = bhf::as_hamiltonian(bhf::parse(bhf::to_string(h)));
        require_identical(h, back);
        CHECK_FALSE(back.is_chiral());
      }
    }
  }

  TEST_CASE("chiral, projector and unitary payloads") {
    const auto ssh = spectral_flatten(models::ssh(0.3, 1.0, ParameterGrid::circle(9)));
    const auto h = bhf::as_hamiltonian(bhf::parse(bhf::to_string(ssh)));
    require_identical(ssh, h);
    REQUIRE(h.is_chiral());
    CHECK(*h.chiral() == *ssh.chiral());

    const auto p = band_projector(models::dirac_monopole(ParameterGrid::suspension(ParameterGrid::circle(6), 5)), Band::empty);
    const auto any = bhf::parse(bhf::to_string(p));
    REQUIRE(std::holds_alternative<ProjectorFamily>(any));
    require_identical(p, std::get<ProjectorFamily>(any));
    CHECK(std::get<ProjectorFamily>(any).rank() == 1);
    CHECK(doc_of(bhf::to_string(p))["projector"]["rank"] == 1);

    const auto u = ktheory::chiral_unitary(ssh);
    const auto us = bhf::to_string(u);
    CHECK(doc_of(us)["unitary"] == true);
    require_identical(u, bhf::as_unitary(bhf::parse(us)));
    CHECK_THROWS_AS(bhf::as_hamiltonian(bhf::parse(us)), Error);
  }

  TEST_CASE("layout of the document") {
    const auto h = models::ssh(0.0, 1.0, ParameterGrid::circle(4));
    const auto j = doc_of(bhf::to_string(h));
    CHECK(j["version"] == 1);
    CHECK(j["dim"] == 2);
    CHECK(j["space"]["kind"] == "circle");
    CHECK(j["space"]["axes"][0] == "periodic");
    CHECK(j["data"].size() == 4 * 4);
    CHECK(j["chiral"].size() == 4);
    // Point 1 (k = pi/2), entry (1, 0) = e^{i pi/2}.
    CHECK(j["data"][4 + 2][0].get<double>() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(j["data"][4 + 2][1].get<double>() == 1.0);

    const auto s = doc_of(bhf::space_json(ParameterGrid::suspension(ParameterGrid::circle(16), 17)));
    CHECK(s["kind"] == "suspension");
    CHECK(s["sizes"] == nlohmann::json::array({17, 16}));
    CHECK(s["axes"] == nlohmann::json::array({"suspension", "periodic"}));
    CHECK(s["inner"]["kind"] == "circle");
  }

  TEST_CASE("malformed documents are rejected") {
    const auto h = models::ssh(0.0, 1.0, ParameterGrid::circle(4));
    const auto good = doc_of(bhf::to_string(h));
    auto expect_format = [](const nlohmann::json& j) {
      try {
        bhf::parse(j.dump());
        FAIL("accepted a malformed document");
      } catch (const Error& e) {
        CHECK((e.code() == "format" || e.code() == "shape-mismatch" || e.code() == "invalid-grid" ||
               e.code() == "invariant-violation"));
      }
    };
    auto j = good;
    j["version"] = 2;
    expect_format(j);
    j = good;
    j["data"].erase(j["data"].size() - 1);
    expect_format(j);
    j = good;
    j["dim"] = 3;
    expect_format(j);
    j = good;
    j["space"]["sizes"][0] = 5;
    expect_format(j);
    j = good;
    j["space"]["axes"][0] = "suspension";
    expect_format(j);
    j = good;
    j["data"][1] = {0.0, 1.0};  // breaks Hermiticity
    expect_format(j);
    j = good;
    j.erase("data");
    expect_format(j);
    CHECK_THROWS_AS(bhf::parse("not json"), Error);
  }

  TEST_CASE("file write and read") {
    const auto path = (std::filesystem::temp_directory_path() / "bott_bhf_roundtrip.bhf").string();
    const auto h = models::massive_dirac(1.0, ParameterGrid::torus({5, 6}));
    bhf::write(path, h);
    require_identical(h, bhf::as_hamiltonian(bhf::read(path)));
    std::remove(path.c_str());
    CHECK_THROWS_AS(bhf::read("/nonexistent/dir/file.bhf"), Error);
  }
}
