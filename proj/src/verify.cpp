#include "bott/verify.hpp"

#include <Eigen/QR>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "bott/invariants.hpp"
#include "bott/kring.hpp"
#include "bott/ktheory.hpp"
#include "bott/models.hpp"
#include "bott/spectral.hpp"
#include "json.hpp"

namespace bott::verify {

namespace {

using invariants::InvariantReport;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string num(double v) { return fmt("%.6g", v); }

std::string report_text(const InvariantReport& r) {
  return std::to_string(r.value) + " (raw " + fmt("%.6f", r.raw) + ")";
}

bool is_exactly(const InvariantReport& r, long value) { return r.converged && r.value == value; }

ParameterGrid sphere(int n_t, int n_k) { return ParameterGrid::suspension(ParameterGrid::circle(n_k), n_t); }

ProjectorFamily band(const HamiltonianFamily& h, Band b) { return band_projector(h, b); }

CheckResult timed(int id, std::string name, const std::function<void(CheckResult&)>& body) {
  CheckResult c;
  c.id = id;
  c.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const Error& e) {
    c.computed = std::string("error: ") + e.code() + ": " + e.what();
    c.pass = false;
  }
  c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

// Open 4D grid for the S^2 x S^2 second-Chern checks.
constexpr int kChartNt = 21;
constexpr int kChartNk = 20;

ParameterGrid s2xs2() {
  const ParameterGrid s = sphere(kChartNt, kChartNk);
  return ParameterGrid::product(s, s);
}

}  // namespace

bool VerifySuiteResult::all_passed() const {
  for (const auto& c : checks) {
    if (!c.skipped && !c.pass) return false;
  }
  return true;
}

CheckResult check_winding() {
  return timed(1, "winding: flattened SSH n=16 is +1, e^{-2ik} is -2", [](CheckResult& c) {
    const ParameterGrid circle = ParameterGrid::circle(16);
    const auto h1 = spectral_flatten(models::ssh(0.5, 1.0, circle));
    const auto h2 = models::chiral_winding(-2, circle);
    const auto start = std::chrono::steady_clock::now();
    const auto w1 = invariants::winding_number(ktheory::chiral_unitary(h1));
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const auto w2 = invariants::winding_number(ktheory::chiral_unitary(h2));
    c.expected = "+1 and -2, < 1 ms";
    c.computed = report_text(w1) + " and " + report_text(w2) + ", " + fmt("%.3f", ms) + " ms";
    c.pass = is_exactly(w1, 1) && is_exactly(w2, -2) && ms < 1.0;
  });
}

CheckResult check_monopole_c1() {
  return timed(2, "monopole C1 on S^2 24x24: empty -1, occupied +1, stable at 48x48", [](CheckResult& c) {
    std::ostringstream os;
    bool ok = true;
    for (int n : {24, 48}) {
      const auto h = models::dirac_monopole(sphere(n, n));
      const auto e = invariants::chern1_link(band(h, Band::empty));
      const auto o = invariants::chern1_link(band(h, Band::occupied));
      os << (n == 24 ? "" : "; ") << n << ": empty " << report_text(e) << ", occupied " << report_text(o);
      ok = ok && is_exactly(e, -1) && is_exactly(o, 1);
    }
    c.expected = "empty -1, occupied +1 at 24 and 48";
    c.computed = os.str();
    c.pass = ok;
  });
}

CheckResult check_suspension_identity() {
  return timed(3, "suspension of flattened SSH equals the Dirac monopole", [](CheckResult& c) {
    const auto flat = spectral_flatten(models::ssh(0.0, 1.0, ParameterGrid::circle(16)));
    const auto s = ktheory::suspend(flat, 17);
    const auto m = models::dirac_monopole(s.grid());
    double dev = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) dev = std::max(dev, max_abs(s[i] - m[i]));
    c.expected = "max deviation < 1e-12";
    c.computed = "max deviation " + num(dev);
    c.pass = dev < 1e-12;
  });
}

CheckResult check_massive_dirac() {
  return timed(4, "massive Dirac C1 (occupied): M=1 is +1, M=3 is 0", [](CheckResult& c) {
    const ParameterGrid t48 = ParameterGrid::torus({48, 48});
    const ParameterGrid t96 = ParameterGrid::torus({96, 96});
    const auto p1 = band(models::massive_dirac(1.0, t48), Band::occupied);
    const auto p3 = band(models::massive_dirac(3.0, t48), Band::occupied);
    const auto c1 = invariants::chern1_link(p1);
    const auto c3 = invariants::chern1_link(p3);
    // Same method on the doubled grid, plus the curvature quadrature.
    const auto q1 = band(models::massive_dirac(1.0, t96), Band::occupied);
    const auto q3 = band(models::massive_dirac(3.0, t96), Band::occupied);
    const auto d1 = invariants::chern1_link(q1);
    const auto d3 = invariants::chern1_link(q3);
    const double k1 = invariants::chern1_curvature(q1);
    const double k3 = invariants::chern1_curvature(q3);
    c.expected = "+1 and 0 at 48^2; 96^2 agrees; curvature within 1e-3";
    c.computed = "48^2: " + report_text(c1) + ", " + report_text(c3) + "; 96^2: " + report_text(d1) + ", " +
                 report_text(d3) + "; curvature " + fmt("%.6f", k1) + ", " + fmt("%.6f", k3);
    c.pass = is_exactly(c1, 1) && is_exactly(c3, 0) && is_exactly(d1, 1) && is_exactly(d3, 0) &&
             std::abs(k1 - 1.0) <= 1e-3 && std::abs(k3) <= 1e-3;
  });
}

CheckResult check_star_product_slices() {
  return timed(5, "monopole * monopole, empty band: C1 = 0 on S^2 x {pt} and {pt} x S^2", [](CheckResult& c) {
    const auto m = models::dirac_monopole(sphere(13, 12));
    const auto p = band(ktheory::star_product(m, m), Band::empty);
    std::ostringstream os;
    bool ok = true;
    // A pole and a generic point of the other factor.
    for (std::size_t at : {std::size_t{0}, std::size_t{5 * 12 + 3}}) {
      const auto a = invariants::chern1_link(ktheory::restrict_to_factor(p, ktheory::Factor::first, at));
      const auto b = invariants::chern1_link(ktheory::restrict_to_factor(p, ktheory::Factor::second, at));
      os << (at == 0 ? "" : "; ") << "pt " << at << ": " << report_text(a) << ", " << report_text(b);
      ok = ok && is_exactly(a, 0) && is_exactly(b, 0);
    }
    c.expected = "0 on both slices";
    c.computed = os.str();
    c.pass = ok;
  });
}

CheckResult check_second_chern(bool quick) {
  return timed(6, "dirac5 C2 (empty band) on the S^2 x S^2 chart is -1; analytic S^4 value -1", [quick](CheckResult& c) {
    c.expected = "value -1, residual < 0.05; analytic(64) within 1e-3 of -1; < 5 min";
    if (quick) {
      c.skipped = true;
      c.computed = "skipped (quick)";
      return;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto p = band(models::dirac5(s2xs2()), Band::empty);
    const auto r = invariants::chern2(p);
    const double analytic = invariants::chern2_dirac_analytic(64);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.computed = "C2 " + report_text(r) + ", residual " + fmt("%.4f", r.residual) + "; analytic " + fmt("%.6f", analytic) +
                 "; " + fmt("%.1f", s) + " s";
    c.pass = is_exactly(r, -1) && std::abs(analytic + 1.0) < 1e-3 && s < 300.0;
  });
}

CheckResult check_generalized_monopole(bool quick) {
  return timed(7, "monopole * monopole, empty band (rank 6 in dim 12): C2 = -1", [quick](CheckResult& c) {
    c.expected = "rank 6, dim 12, value -1, residual < 0.05";
    if (quick) {
      c.skipped = true;
      c.computed = "skipped (quick)";
      return;
    }
    const auto m = models::dirac_monopole(sphere(kChartNt, kChartNk));
    const auto p = band(ktheory::star_product(m, m), Band::empty);
    const auto r = invariants::chern2(p);
    c.computed = "rank " + std::to_string(p.rank()) + ", dim " + std::to_string(p.dim()) + ", C2 " + report_text(r) +
                 ", residual " + fmt("%.4f", r.residual);
    c.pass = p.rank() == 6 && p.dim() == 12 && is_exactly(r, -1);
  });
}

CheckResult check_reflection(bool quick) {
  return timed(8, "reflecting one coordinate: monopole C1 becomes +1/-1, dirac5 C2 becomes +1", [quick](CheckResult& c) {
    c.expected = quick ? "empty +1, occupied -1 (C2 part skipped)" : "empty +1, occupied -1; C2 +1";
    const auto h = ktheory::reflect_coordinate(models::dirac_monopole(sphere(24, 24)), 1);
    const auto e = invariants::chern1_link(band(h, Band::empty));
    const auto o = invariants::chern1_link(band(h, Band::occupied));
    c.computed = "empty " + report_text(e) + ", occupied " + report_text(o);
    c.pass = is_exactly(e, 1) && is_exactly(o, -1);
    if (quick) return;
    const auto d = ktheory::reflect_coordinate(models::dirac5(s2xs2()), 1);
    const auto r = invariants::chern2(band(d, Band::empty));
    c.computed += "; C2 " + report_text(r);
    c.pass = c.pass && is_exactly(r, 1);
  });
}

CheckResult check_dimensional_reduction() {
  return timed(9, "winding of the clutching function is w and equals -C1(empty) of the suspension", [](CheckResult& c) {
    std::ostringstream os;
    bool ok = true;
    for (int w = -3; w <= 3; ++w) {
      const auto s = ktheory::suspend(models::chiral_winding(w, ParameterGrid::circle(32)), 33);
      const auto wind = invariants::winding_number(ktheory::extract_clutching(s));
      const auto c1 = invariants::chern1_link(band(s, Band::empty));
      os << (w == -3 ? "" : " ") << w << ":" << wind.value << "/" << -c1.value;
      ok = ok && is_exactly(wind, w) && is_exactly(c1, -w);
    }
    c.expected = "w:w/w for w = -3..3 (winding / -C1)";
    c.computed = os.str();
    c.pass = ok;
  });
}

namespace {

kring::ExteriorElement random_element(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  kring::ExteriorElement e(d);
  for (const auto& m : kring::basis(d)) e.add_term(m, coeff(rng));
  return e;
}

kring::ExteriorElement random_odd(std::mt19937_64& rng, int d) {
  kring::ExteriorElement e = random_element(rng, d);
  kring::ExteriorElement odd(d);
  for (const auto& [m, v] : e.terms()) {
    if (m.size() % 2 == 1) odd.add_term(m, v);
  }
  return odd;
}

}  // namespace

CheckResult check_ring_laws() {
  return timed(10, "exterior algebra ring laws (fixed seed, d <= 4)", [](CheckResult& c) {
    using kring::ExteriorElement;
    std::mt19937_64 rng(20240917);
    int cases = 0, failures = 0;
    auto expect = [&](bool ok) {
      ++cases;
      if (!ok) ++failures;
    };
    for (int d = 0; d <= 4; ++d) {
      const auto one = ExteriorElement::one(d);
      for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_element(rng, d), b = random_element(rng, d), e = random_element(rng, d);
        expect((a * b) * e == a * (b * e));
        expect(a * (b + e) == a * b + a * e);
        expect((a + b) * e == a * e + b * e);
        expect(one * a == a && a * one == a);
        const auto x = random_odd(rng, d);
        expect((x * x).is_zero());
      }
      const auto monos = kring::basis(d);
      for (const auto& m1 : monos) {
        for (const auto& m2 : monos) {
          const auto x = ExteriorElement::monomial(d, m1), y = ExteriorElement::monomial(d, m2);
          const int sign = (m1.size() * m2.size()) % 2 == 0 ? 1 : -1;
          expect(x * y == (sign == 1 ? y * x : -(y * x)));
        }
      }
      for (int i = 1; i <= d; ++i) {
        const auto b = ExteriorElement::generator(d, i);
        expect((b * b).is_zero());
      }
      expect(monos.size() == (std::size_t{1} << d));
      // Kunneth: basis of Lambda(d1) x basis of Lambda(d2) is a basis of Lambda(d1 + d2), up to sign.
      for (int d1 = 0; d1 <= d; ++d1) {
        const int d2 = d - d1;
        std::set<kring::Monomial> seen;
        bool unit_coeffs = true;
        for (const auto& m1 : kring::basis(d1)) {
          for (const auto& m2 : kring::basis(d2)) {
            const auto k = kring::kunneth(ExteriorElement::monomial(d1, m1), ExteriorElement::monomial(d2, m2));
            unit_coeffs = unit_coeffs && k.terms().size() == 1 && std::abs(k.terms().begin()->second) == 1;
            if (!k.is_zero()) seen.insert(k.terms().begin()->first);
          }
        }
        expect(unit_coeffs && seen.size() == (std::size_t{1} << d));
        for (int d3 = 0; d1 + d2 + d3 <= 4 && d3 <= 2; ++d3) {
          const auto a = random_element(rng, d1), b = random_element(rng, d2), e = random_element(rng, d3);
          expect(kring::kunneth(kring::kunneth(a, b), e) == kring::kunneth(a, kring::kunneth(b, e)));
        }
      }
    }
    const auto b1 = ExteriorElement::generator(2, 1), b2 = ExteriorElement::generator(2, 2);
    expect(kring::to_string((ExteriorElement::one(2) + b1) * (ExteriorElement::one(2) + b2)) == "1 + b1 + b2 + b1b2");
    expect(b1 * b2 == -(b2 * b1));
    expect(kring::kunneth(ExteriorElement::generator(1, 1), ExteriorElement::generator(1, 1)) == b1 * b2);
    c.expected = "all cases pass";
    c.computed = std::to_string(cases - failures) + "/" + std::to_string(cases) + " pass";
    c.pass = failures == 0;
  });
}

CheckResult check_homotopy_endpoints() {
  return timed(11, "similarity homotopy endpoints for random unitary S, N in {1,2,4}", [](CheckResult& c) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    int cases = 0;
    for (int n : {1, 2, 4}) {
      auto random_unitary = [&] {
        MatrixXc g(n, n);
        for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = cplx(normal(rng), normal(rng));
        return MatrixXc(Eigen::HouseholderQR<MatrixXc>(g).householderQ());
      };
      for (int trial = 0; trial < 20; ++trial) {
        const MatrixXc s = random_unitary();
        const MatrixXc frame = random_unitary();
        const int rank = std::max(1, n / 2);
        const MatrixXc p_e = frame.leftCols(rank) * frame.leftCols(rank).adjoint();
        const MatrixXc p_f = s * p_e * s.adjoint();
        const auto [r0, r1] = ktheory::endpoints_check(p_e, p_f, s);
        const MatrixXc id = MatrixXc::Identity(2 * n, 2 * n);
        const double t0 = max_abs(ktheory::similarity_homotopy(s, 0.0) - id);
        const double t1 = max_abs(ktheory::similarity_homotopy(s, 1.0) - block_diag(s, MatrixXc(s.adjoint())));
        worst = std::max({worst, r0, r1, t0, t1});
        ++cases;
      }
    }
    c.expected = "all residuals < 1e-10";
    c.computed = std::to_string(cases) + " cases, worst residual " + num(worst);
    c.pass = worst < 1e-10;
  });
}

CheckResult check_method_cross_check() {
  return timed(12, "curvature vs link C1 at 96^2 within 1e-3, error decay >= quadratic", [](CheckResult& c) {
    std::ostringstream os;
    bool ok = true;
    auto cross = [&](const std::string& label, const std::function<ProjectorFamily(int)>& make) {
      double err[2];
      for (int i = 0; i < 2; ++i) {
        const auto p = make(i == 0 ? 48 : 96);
        err[i] = std::abs(invariants::chern1_curvature(p) - invariants::chern1_link(p).raw);
      }
      const double ratio = err[0] / err[1];
      os << (label == "monopole" ? "" : "; ") << label << " err48 " << num(err[0]) << ", err96 " << num(err[1]) << ", ratio "
         << fmt("%.2f", ratio);
      ok = ok && err[1] <= 1e-3 && ratio >= 4.0;
    };
    cross("monopole", [](int n) { return band(models::dirac_monopole(sphere(n, n)), Band::empty); });
    cross("massive Dirac", [](int n) { return band(models::massive_dirac(1.0, ParameterGrid::torus({n, n})), Band::occupied); });
    c.expected = "err96 <= 1e-3, err48/err96 >= 4";
    c.computed = os.str();
    c.pass = ok;
  });
}

VerifySuiteResult run_suite(const VerifyOptions& options) {
  VerifySuiteResult r;
  r.checks.push_back(check_winding());
  r.checks.push_back(check_monopole_c1());
  r.checks.push_back(check_suspension_identity());
  r.checks.push_back(check_massive_dirac());
  r.checks.push_back(check_star_product_slices());
  r.checks.push_back(check_second_chern(options.quick));
  r.checks.push_back(check_generalized_monopole(options.quick));
  r.checks.push_back(check_reflection(options.quick));
  r.checks.push_back(check_dimensional_reduction());
  r.checks.push_back(check_ring_laws());
  r.checks.push_back(check_homotopy_endpoints());
  r.checks.push_back(check_method_cross_check());
  return r;
}

std::string format_line(const CheckResult& c) {
  const char* status = c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL");
  std::ostringstream os;
  os << "[" << status << "] " << c.id << ". " << c.name << " | expected: " << c.expected << " | computed: " << c.computed
     << " | " << fmt("%.1f", c.runtime_ms) << " ms";
  return os.str();
}

std::string format_table(const VerifySuiteResult& r) {
  std::ostringstream os;
  int passed = 0, skipped = 0;
  for (const auto& c : r.checks) {
    os << format_line(c) << "\n";
    passed += c.pass && !c.skipped;
    skipped += c.skipped;
  }
  os << passed << "/" << r.checks.size() - static_cast<std::size_t>(skipped) << " checks passed";
  if (skipped > 0) os << ", " << skipped << " skipped";
  os << "\n";
  return os.str();
}

std::string to_json(const VerifySuiteResult& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    j.push_back({{"id", c.id},
                 {"name", c.name},
                 {"expected", c.expected},
                 {"computed", c.computed},
                 {"pass", c.pass},
                 {"skipped", c.skipped},
                 {"runtime_ms", c.runtime_ms}});
  }
  return nlohmann::ordered_json{{"checks", j}, {"all_passed", r.all_passed()}}.dump(2);
}

}  // namespace bott::verify
