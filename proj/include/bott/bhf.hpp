#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "bott/family.hpp"

// BHF ("Bloch Hamiltonian Family") container, JSON:
//
//   { "version": 1,
//     "space": { "kind": "suspension", "sizes": [17, 16], "axes": ["suspension", "periodic"],
//                "inner": { "kind": "circle", "sizes": [16], "axes": ["periodic"] } },
//     "dim": 2,
//     "chiral": [[re, im], ...],          // optional, N*N entries row-major
//     "unitary": true,                    // optional, UnitaryFamily
//     "projector": { "rank": 1 },         // optional, ProjectorFamily
//     "data": [[re, im], ...] }           // points * N * N entries
//
// Points are row-major over the grid axes, each matrix row-major. Doubles are
// written in shortest round-trip form, so write-then-read is bit-exact.
namespace bott::bhf {

inline constexpr int kVersion = 1;

using AnyFamily = std::variant<HamiltonianFamily, ProjectorFamily, UnitaryFamily>;

std::string to_string(const HamiltonianFamily& f);
std::string to_string(const ProjectorFamily& f);
std::string to_string(const UnitaryFamily& f);
std::string to_string(const AnyFamily& f);

AnyFamily parse(const std::string& text);
AnyFamily read(const std::string& path);
void write(const std::string& path, const AnyFamily& f);

// Grid descriptor alone, e.g. for reports.
std::string space_json(const ParameterGrid& grid);

// Throws format error unless the document holds the requested family type.
HamiltonianFamily as_hamiltonian(AnyFamily f);
UnitaryFamily as_unitary(AnyFamily f);

}  // namespace bott::bhf
