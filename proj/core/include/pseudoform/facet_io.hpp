#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pseudoform/complex.hpp"

namespace pseudoform {

// Facet-list text format: one facet per line as whitespace separated labels,
// '#' starts a comment line, blank lines are skipped. Complexes use 4 labels
// per line and surfaces 3.

/// Throws ParseError with the 1-based line of the first bad record.
SimplicialComplex parse_facets(std::istream& in, std::size_t arity = 4);
SimplicialComplex parse_facets_text(std::string_view text, std::size_t arity = 4);

/// Canonical text: sorted facets, labels ascending, single spaces, '\n' after
/// every line. parse then format reproduces canonical text byte for byte.
std::string format_facets(const SimplicialComplex& k);
void write_facets(std::ostream& out, const SimplicialComplex& k);

/// Reads a facet file; arity 0 accepts whatever arity the first facet has.
SimplicialComplex read_facet_file(const std::filesystem::path& path, std::size_t arity = 4);
void write_facet_file(const std::filesystem::path& path, const SimplicialComplex& k);

}  // namespace pseudoform
