#include <algorithm>
#include <random>

#include "bott/models.hpp"
#include "bott/parallel.hpp"
#include "bott/spectral.hpp"
#include "doctest.h"

using namespace bott;

namespace {

MatrixXc diag(std::initializer_list<double> d) {
  MatrixXc m = MatrixXc::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) m(i, i) = x, ++i;
  return m;
}

double max_dev(const HamiltonianFamily& a, const HamiltonianFamily& b) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, max_abs(a[i] - b[i]));
  return dev;
}

const ParameterGrid c16 = ParameterGrid::circle(16);

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("family invariants are enforced") {
    MatrixXc bad = MatrixXc::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(HamiltonianFamily(c16, 2, std::vector<MatrixXc>(16, bad)), Error);
    CHECK_THROWS_AS(HamiltonianFamily(c16, 2, std::vector<MatrixXc>(15, diag({1, -1}))), Error);
    CHECK_THROWS_AS(HamiltonianFamily(c16, 3, std::vector<MatrixXc>(16, diag({1, -1}))), Error);
    // Gamma must anticommute.
    CHECK_THROWS_AS(HamiltonianFamily(c16, 2, std::vector<MatrixXc>(16, diag({1, -1})), diag({1, -1})), Error);
    CHECK_THROWS_AS(ProjectorFamily(c16, 2, 2, std::vector<MatrixXc>(16, diag({1, 0}))), Error);
    CHECK_THROWS_AS(ProjectorFamily(c16, 2, 1, std::vector<MatrixXc>(16, diag({1, 0.5}))), Error);
    CHECK_THROWS_AS(UnitaryFamily(c16, 2, std::vector<MatrixXc>(16, diag({1, 2}))), Error);
  }

  TEST_CASE("suspension ends must be constant") {
    const auto s = ParameterGrid::suspension(ParameterGrid::circle(4), 3);
    std::vector<MatrixXc> v(s.size(), diag({1, -1}));
    v[1] = diag({-1, 1});  // t = 0, k index 1
    CHECK_THROWS_AS(HamiltonianFamily(s, 2, v), Error);
    v[1] = diag({1, -1});
    v[5] = diag({-1, 1});  // t = 1/2: allowed to vary
    CHECK_NOTHROW(HamiltonianFamily(s, 2, v));
  }

  TEST_CASE("min_gap") {
    CHECK(min_gap(spectral_flatten(models::ssh(0.3, 1.0, c16))) == doctest::Approx(1.0));
    CHECK(min_gap(models::ssh(1.0, 1.0, c16)) < 1e-12);
    // Massive Dirac M=1: minimum |d| over the sampled grid.
    const auto t = ParameterGrid::torus({48, 48});
    double brute = 1e9;
    for (int a = 0; a < 48; ++a) {
      for (int b = 0; b < 48; ++b) {
        const double k1 = t.coordinate(0, a), k2 = t.coordinate(1, b);
        const double z = 1.0 - std::cos(k1) - std::cos(k2);
        brute = std::min(brute, std::sqrt(std::sin(k1) * std::sin(k1) + std::sin(k2) * std::sin(k2) + z * z));
      }
    }
    CHECK(min_gap(models::massive_dirac(1.0, t)) == doctest::Approx(brute).epsilon(1e-12));
    CHECK(min_gap(models::massive_dirac(2.0, t)) < 1e-12);
  }

  TEST_CASE("flattening") {
    const auto g = ParameterGrid::circle(4);
    const auto h = constant_hamiltonian(g, diag({2, -0.5}));
    const auto f = spectral_flatten(h);
    for (const auto& m : f) CHECK(max_abs(m - diag({1, -1})) < 1e-15);

    const auto ssh = spectral_flatten(models::ssh(0.0, 1.0, c16));
    CHECK(max_dev(ssh, models::ssh(0.0, 1.0, c16)) < 1e-12);
    CHECK(ssh.is_chiral());

    const auto mixed = spectral_flatten(models::ssh(0.4, 1.0, c16));
    CHECK(is_flat(mixed));
    CHECK(max_dev(spectral_flatten(mixed), mixed) < 1e-12);
    for (const auto& m : mixed) CHECK(std::abs(m.trace()) < 1e-12);
  }

  TEST_CASE("gapless family is rejected naming the point") {
    try {
      spectral_flatten(models::ssh(1.0, 1.0, c16));
      FAIL("expected gap violation");
    } catch (const Error& e) {
      CHECK(e.code() == "gap-violation");
      CHECK(std::string(e.what()).find("#8 ") != std::string::npos);  // k = pi
    }
    CHECK_THROWS_AS(fermi_projector(models::massive_dirac(2.0, ParameterGrid::torus({8, 8}))), Error);
  }

  TEST_CASE("fermi projector") {
    const auto t = trivial_hamiltonian(ParameterGrid::circle(4), 2);
    const auto p = fermi_projector(t);
    CHECK(p.rank() == 2);
    CHECK(max_abs(p[0] - diag({0, 0, 1, 1})) < 1e-15);

    const auto mono = models::dirac_monopole(ParameterGrid::suspension(ParameterGrid::circle(8), 9));
    CHECK(max_abs(fermi_projector(mono)[0] - diag({0, 1})) < 1e-14);

    const auto md = models::massive_dirac(1.0, ParameterGrid::torus({12, 12}));
    const auto pm = fermi_projector(md);
    CHECK(pm.rank() == 1);
    const auto pf = fermi_projector(spectral_flatten(md));
    for (std::size_t i = 0; i < pm.size(); ++i) CHECK(max_abs(pm[i] - pf[i]) < 1e-10);
  }

  TEST_CASE("band projectors of a flat family") {
    const auto mono = models::dirac_monopole(ParameterGrid::suspension(ParameterGrid::circle(8), 9));
    const auto e = band_projector(mono, Band::empty);
    const auto o = band_projector(mono, Band::occupied);
    const MatrixXc id = MatrixXc::Identity(2, 2);
    for (std::size_t i = 0; i < mono.size(); ++i) {
      CHECK(max_abs(e[i] - 0.5 * (id + mono[i])) < 1e-12);
      CHECK(max_abs(o[i] - 0.5 * (id - mono[i])) < 1e-12);
      CHECK(max_abs(e[i] + o[i] - id) < 1e-12);
    }
  }

  TEST_CASE("direct sum") {
    const auto a = spectral_flatten(models::ssh(0.2, 1.0, c16));
    const auto b = trivial_hamiltonian(c16, 1);
    const auto s = direct_sum(a, HamiltonianFamily(c16, 2, std::vector<MatrixXc>(16, models::pauli().x), models::pauli().z));
    CHECK(s.dim() == 4);
    REQUIRE(s.is_chiral());
    CHECK(max_abs(*s.chiral() - diag({1, -1, 1, -1})) == 0.0);
    CHECK_FALSE(direct_sum(a, b).is_chiral());

    const auto raw = models::ssh(0.3, 1.0, c16);
    const auto big = models::ssh(2.0, 0.5, c16);
    CHECK(min_gap(direct_sum(raw, big)) == std::min(min_gap(raw), min_gap(big)));
    CHECK_THROWS_AS(direct_sum(raw, models::ssh(0.3, 1.0, ParameterGrid::circle(8))), Error);
  }

  TEST_CASE("negate, tensor, trivial") {
    const auto g = ParameterGrid::circle(4);
    const auto n = negate(trivial_hamiltonian(g, 1));
    CHECK(max_abs(n[0] - diag({-1, 1})) == 0.0);
    const auto z = constant_hamiltonian(g, models::pauli().z);
    CHECK(max_abs(tensor(z, z)[2] - diag({1, -1, -1, 1})) == 0.0);
    const auto a = spectral_flatten(models::ssh(0.2, 1.0, ParameterGrid::circle(4)));
    CHECK(is_flat(tensor(a, a)));
  }

  TEST_CASE("negative count must be constant") {
    const auto g = ParameterGrid::circle(4);
    std::vector<MatrixXc> v(4, diag({1, -1}));
    v[2] = diag({1, 1});
    const HamiltonianFamily h(g, 2, v);
    CHECK_THROWS_AS(negative_count(h), Error);
    CHECK_THROWS_AS(band_projector(h, Band::occupied), Error);
  }

  TEST_CASE("pairwise_sum is order-fixed and exact on integers") {
    std::vector<double> v(1000);
    for (int i = 0; i < 1000; ++i) v[static_cast<std::size_t>(i)] = i;
    CHECK(pairwise_sum(v) == 499500.0);
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  }

  TEST_CASE("parallel_for covers every index once") {
    std::vector<int> hit(1000, 0);
    parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
    CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                      if (i == 7) throw Error("x", "boom");
                    }),
                    Error);
  }
}
