#pragma once

#include <stdexcept>
#include <string>

namespace bott {

// Every library failure carries a short machine-readable code ("gap-violation",
// "invalid-grid", ...) next to the human message. The CLI prints both on one line.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* invalid_grid = "invalid-grid";
inline constexpr const char* grid_mismatch = "grid-mismatch";
inline constexpr const char* shape_mismatch = "shape-mismatch";
inline constexpr const char* invariant_violation = "invariant-violation";
inline constexpr const char* gap_violation = "gap-violation";
inline constexpr const char* rank_jump = "rank-jump";
inline constexpr const char* not_flat = "not-flat";
inline constexpr const char* missing_chiral = "missing-chiral";
inline constexpr const char* not_suspension = "not-suspension";
inline constexpr const char* singular_matrix = "singular-matrix";
inline constexpr const char* singular_link = "singular-link";
inline constexpr const char* grid_too_coarse = "grid-too-coarse";
inline constexpr const char* bad_axis = "bad-axis";
inline constexpr const char* io = "io";
inline constexpr const char* format = "format";
inline constexpr const char* parse = "parse";
}  // namespace errc

}  // namespace bott
