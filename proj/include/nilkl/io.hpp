#pragma once

#include <iosfwd>
#include <string>

#include "nilkl/algebra.hpp"

// JSON interchange for structure constants. Two accepted layouts:
//
//   {"n": 2, "C": [[j,i,k,re,im], ...], "D": [[j,i,k,re,im], ...]}
//     indices 1-based; C entries require i < k (the i > k orientation is
//     implied by antisymmetry); duplicate index triples are errors.
//
//   {"n": 2, "terms": {"2": {"hol": [[i,k,re,im], ...],
//                            "mixed": [[i,k,re,im], ...]}}}
//     coframe differentials d phi_j, converted through from_coframe; hol
//     entries require i < k.
//
// An optional top-level "label" string is carried through.

namespace nilkl {

HermitianLieData parse_structure_json(const std::string& text);
HermitianLieData parse_structure_file(const std::string& path);

// canonical rendering: entries sorted by index, shortest round-trip floats
std::string structure_to_json(const HermitianLieData& data);

// short hex digest of the canonical constants, for report provenance
std::string structure_digest(const HermitianLieData& data);

}  // namespace nilkl
