#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bott/family.hpp"

namespace bott::kring {

using Monomial = std::vector<int>;  // sorted ascending generator indices, 1-based

// Element of the exterior algebra Lambda(b_1..b_d) with integer coefficients.
// Monomials are kept sorted and zero coefficients are never stored.
class ExteriorElement {
 public:
  explicit ExteriorElement(int d = 0);

  static ExteriorElement zero(int d) { return ExteriorElement(d); }
  static ExteriorElement one(int d) { return scalar(d, 1); }
  static ExteriorElement scalar(int d, std::int64_t c);
  static ExteriorElement generator(int d, int i);
  // c * b_{i1} ... b_{ik}; indices in any order (sign of the sort applied).
  static ExteriorElement monomial(int d, std::vector<int> indices, std::int64_t c = 1);

  int d() const noexcept { return d_; }
  const std::map<Monomial, std::int64_t>& terms() const noexcept { return terms_; }
  std::int64_t coefficient(const Monomial& m) const;
  bool is_zero() const noexcept { return terms_.empty(); }

  // Every monomial of odd (even) degree.
  bool is_odd() const;
  bool is_even() const;

  void add_term(const Monomial& m, std::int64_t c);

  friend bool operator==(const ExteriorElement&, const ExteriorElement&) = default;

 private:
  int d_;
  std::map<Monomial, std::int64_t> terms_;
};

ExteriorElement ext_add(const ExteriorElement& a, const ExteriorElement& b);
ExteriorElement ext_sub(const ExteriorElement& a, const ExteriorElement& b);
ExteriorElement ext_neg(const ExteriorElement& a);
ExteriorElement ext_mul(const ExteriorElement& a, const ExteriorElement& b);

inline ExteriorElement operator+(const ExteriorElement& a, const ExteriorElement& b) { return ext_add(a, b); }
inline ExteriorElement operator-(const ExteriorElement& a, const ExteriorElement& b) { return ext_sub(a, b); }
inline ExteriorElement operator-(const ExteriorElement& a) { return ext_neg(a); }
inline ExteriorElement operator*(const ExteriorElement& a, const ExteriorElement& b) { return ext_mul(a, b); }

// Copy of `a` in Lambda(d) with every index shifted by `offset`.
ExteriorElement relabel(const ExteriorElement& a, int d, int offset);

// a (x) b in Lambda(d_a + d_b): b's generators shifted past a's.
ExteriorElement kunneth(const ExteriorElement& a, const ExteriorElement& b);

// All 2^d basis monomials, ordered by degree then lexicographically.
std::vector<Monomial> basis(int d);

// Canonical form, degree then lexicographic: "1 + b1 + b2 + b1b2", "2b1 - 3b1b2", "0".
std::string to_string(const ExteriorElement& a);

// Integers, b<i>, + - *, parentheses, unary minus; juxtaposition multiplies
// ("b1b2", "2b1"). Throws Error(parse) on malformed input or indices > d.
ExteriorElement parse(std::string_view text, int d);

// w * b over the circle, w the winding of U.
ExteriorElement classify_k1_circle(const UnitaryFamily& u);

struct K0Class {
  int rank = 0;
  ExteriorElement reduced{2};  // c * b1b2
};

// Rank and first Chern number c (link method) of P over a 2-torus.
K0Class classify_k0_torus2(const ProjectorFamily& p);

}  // namespace bott::kring
