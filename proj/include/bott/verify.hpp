#pragma once

#include <string>
#include <vector>

namespace bott::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
  bool skipped = false;
  double runtime_ms = 0.0;
};

struct VerifySuiteResult {
  std::vector<CheckResult> checks;

  // Every non-skipped check passed.
  bool all_passed() const;
};

struct VerifyOptions {
  // Skip the 4D second-Chern computations (and the parts of checks that need them).
  bool quick = false;
};

VerifySuiteResult run_suite(const VerifyOptions& options = {});

// Individual checks, numbered as in the suite.
CheckResult check_winding();
CheckResult check_monopole_c1();
CheckResult check_suspension_identity();
CheckResult check_massive_dirac();
CheckResult check_star_product_slices();
CheckResult check_second_chern(bool quick);
CheckResult check_generalized_monopole(bool quick);
CheckResult check_reflection(bool quick);
CheckResult check_dimensional_reduction();
CheckResult check_ring_laws();
CheckResult check_homotopy_endpoints();
CheckResult check_method_cross_check();

std::string format_line(const CheckResult& c);
std::string format_table(const VerifySuiteResult& r);
std::string to_json(const VerifySuiteResult& r);

}  // namespace bott::verify
