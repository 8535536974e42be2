#pragma once

#include <iosfwd>
#include <string>

#include "schurdouble/quiver.hpp"
#include "schurdouble/schur.hpp"
#include "schurdouble/superalgebra.hpp"

namespace schurdouble {

// Presentation schema (version 1):
//   {"schema":"presentation/1","name":...,
//    "labels":[{"name":...,"parity":0,"degree":2}, ...],
//    "unit":{"label":"coeff", ...},
//    "kappa":[{"left":...,"right":...,"result":{"label":"coeff"}}, ...]}
// Coefficients are decimal strings; label order is the basis order (even
// labels first), which is part of the format.
std::string presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const std::string& text);

// Quiver input format: {"vertices": l, "edges": [[s,t], ...]} (1-based).
Quiver quiver_from_json(const std::string& text);

// FNV-1a content hash of the canonical serialization, as 16 hex digits.
std::string content_hash(const std::string& canonical);
std::string presentation_hash(const Presentation& p);

// Structure-constant tables as JSON lines: a header record followed by one
// record per (C,D) with nonzero output.  Deterministic for a fixed input.
void write_table(std::ostream& os, const SchurAlgebra& s,
                 const StructureConstantTable& t,
                 const std::string& scalar_ring);
// Reads a table back, validating the header (hash, n, d, basis order
// version) against the given algebra and re-indexing tuples through it.
StructureConstantTable read_table(std::istream& is, const SchurAlgebra& s);

}  // namespace schurdouble
