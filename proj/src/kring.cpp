#include "bott/kring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bott/invariants.hpp"

namespace bott::kring {

namespace {

void require_same_d(const ExteriorElement& a, const ExteriorElement& b, const char* op) {
  if (a.d() != b.d()) {
    throw Error(errc::shape_mismatch, std::string(op) + ": generator counts differ (" + std::to_string(a.d()) + " vs " +
                                          std::to_string(b.d()) + ")");
  }
}

// Sorts `idx` in place; returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

bool basis_less(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

class Parser {
 public:
  Parser(std::string_view text, int d) : s_(text), d_(d) {}

  ExteriorElement run() {
    ExteriorElement e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(errc::parse, what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  ExteriorElement expr() {
    ExteriorElement acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      acc = c == '+' ? acc + term() : acc - term();
    }
    return acc;
  }

  ExteriorElement term() {
    ExteriorElement acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == 'b' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc * unary();
      } else {
        return acc;
      }
    }
  }

  ExteriorElement unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return atom();
  }

  long long integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 15) fail("integer too large");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }

  ExteriorElement atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ExteriorElement e = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == 'b') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a generator index after 'b'");
      const long long i = integer();
      if (i < 1 || i > d_) fail("generator b" + std::to_string(i) + " outside b1..b" + std::to_string(d_));
      return ExteriorElement::generator(d_, static_cast<int>(i));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ExteriorElement::scalar(d_, integer());
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  int d_;
  std::size_t pos_ = 0;
};

}  // namespace

ExteriorElement::ExteriorElement(int d) : d_(d) {
  if (d < 0) throw Error(errc::shape_mismatch, "generator count must be nonnegative");
}

ExteriorElement ExteriorElement::scalar(int d, std::int64_t c) {
  ExteriorElement e(d);
  e.add_term({}, c);
  return e;
}

ExteriorElement ExteriorElement::generator(int d, int i) { return monomial(d, {i}); }

ExteriorElement ExteriorElement::monomial(int d, std::vector<int> indices, std::int64_t c) {
  ExteriorElement e(d);
  for (int i : indices) {
    if (i < 1 || i > d) throw Error(errc::shape_mismatch, "generator index " + std::to_string(i) + " outside 1.." + std::to_string(d));
  }
  const int sign = sort_with_sign(indices);
  if (sign != 0) e.add_term(indices, sign * c);
  return e;
}

std::int64_t ExteriorElement::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

bool ExteriorElement::is_odd() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.size() % 2 == 1; });
}

bool ExteriorElement::is_even() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.size() % 2 == 0; });
}

void ExteriorElement::add_term(const Monomial& m, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ExteriorElement ext_add(const ExteriorElement& a, const ExteriorElement& b) {
  require_same_d(a, b, "ext_add");
  ExteriorElement r = a;
  for (const auto& [m, c] : b.terms()) r.add_term(m, c);
  return r;
}

ExteriorElement ext_neg(const ExteriorElement& a) {
  ExteriorElement r(a.d());
  for (const auto& [m, c] : a.terms()) r.add_term(m, -c);
  return r;
}

ExteriorElement ext_sub(const ExteriorElement& a, const ExteriorElement& b) {
  require_same_d(a, b, "ext_sub");
  return ext_add(a, ext_neg(b));
}

ExteriorElement ext_mul(const ExteriorElement& a, const ExteriorElement& b) {
  require_same_d(a, b, "ext_mul");
  ExteriorElement r(a.d());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      const int sign = sort_with_sign(m);
      if (sign != 0) r.add_term(m, sign * ca * cb);
    }
  }
  return r;
}

ExteriorElement relabel(const ExteriorElement& a, int d, int offset) {
  ExteriorElement r(d);
  for (const auto& [m, c] : a.terms()) {
    Monomial shifted = m;
    for (int& i : shifted) {
      i += offset;
      if (i < 1 || i > d) throw Error(errc::shape_mismatch, "relabel: index " + std::to_string(i) + " outside 1.." + std::to_string(d));
    }
    r.add_term(shifted, c);
  }
  return r;
}

ExteriorElement kunneth(const ExteriorElement& a, const ExteriorElement& b) {
  const int d = a.d() + b.d();
  return ext_mul(relabel(a, d, 0), relabel(b, d, a.d()));
}

std::vector<Monomial> basis(int d) {
  std::vector<Monomial> out;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    Monomial m;
    for (int i = 0; i < d; ++i) {
      if (mask & (1u << i)) m.push_back(i + 1);
    }
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), basis_less);
  return out;
}

std::string to_string(const ExteriorElement& a) {
  if (a.is_zero()) return "0";
  std::vector<std::pair<Monomial, std::int64_t>> terms(a.terms().begin(), a.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return basis_less(x.first, y.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.empty() || mag != 1) os << mag;
    for (int i : m) os << 'b' << i;
  }
  return os.str();
}

ExteriorElement parse(std::string_view text, int d) { return Parser(text, d).run(); }

ExteriorElement classify_k1_circle(const UnitaryFamily& u) {
  const auto w = invariants::winding_number(u);
  if (!w.converged) throw Error(errc::invariant_violation, "winding did not converge: raw " + std::to_string(w.raw));
  return ExteriorElement::monomial(1, {1}, w.value);
}

K0Class classify_k0_torus2(const ProjectorFamily& p) {
  const ParameterGrid& g = p.grid();
  if (g.rank() != 2 || g.axis(0).kind != AxisKind::periodic || g.axis(1).kind != AxisKind::periodic) {
    throw Error(errc::invalid_grid, "classify_k0_torus2 needs a 2-torus grid, got " + g.describe());
  }
  const auto c = invariants::chern1_link(p);
  return {p.rank(), ExteriorElement::monomial(2, {1, 2}, c.value)};
}

}  // namespace bott::kring
