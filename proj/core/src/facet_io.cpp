#include "pseudoform/facet_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pseudoform/error.hpp"

namespace pseudoform {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

SimplicialComplex parse_facets(std::istream& in, std::size_t arity) {
  std::vector<Face> facets;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::vector<Vertex> labels;
    std::size_t pos = 0;
    while (pos < body.size()) {
      while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
      if (pos >= body.size()) break;
      std::size_t end = pos;
      while (end < body.size() && body[end] != ' ' && body[end] != '\t') ++end;
      const auto token = body.substr(pos, end - pos);
      Vertex v = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(lineno, "expected a non-negative integer label, got '" + std::string(token) + "'");
      labels.push_back(v);
      pos = end;
    }
    if (arity == 0) arity = labels.size();
    if (labels.size() != arity)
      throw ParseError(lineno, "expected " + std::to_string(arity) + " labels, got " + std::to_string(labels.size()));
    try {
      facets.emplace_back(std::span<const Vertex>(labels));
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (facets.empty()) throw ParseError(lineno, "no facets");
  return SimplicialComplex(std::move(facets));
}

SimplicialComplex parse_facets_text(std::string_view text, std::size_t arity) {
  std::istringstream in{std::string(text)};
  return parse_facets(in, arity);
}

void write_facets(std::ostream& out, const SimplicialComplex& k) {
  for (const Face& f : k.facets()) {
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[i];
    out << '\n';
  }
}

std::string format_facets(const SimplicialComplex& k) {
  std::ostringstream out;
  write_facets(out, k);
  return out.str();
}

SimplicialComplex read_facet_file(const std::filesystem::path& path, std::size_t arity) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  return parse_facets(in, arity);
}

void write_facet_file(const std::filesystem::path& path, const SimplicialComplex& k) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path.string());
  write_facets(out, k);
}

}  // namespace pseudoform
