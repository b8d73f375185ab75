#include "pseudoform/normality.hpp"

namespace pseudoform {

std::vector<std::string> NormalityReport::problems() const {
  std::vector<std::string> out;
  if (!is_pure) out.push_back("not pure 3-dimensional");
  for (const Face& t : ridge_failures) out.push_back("triangle {" + t.to_string() + "} not in exactly two facets");
  for (const Face& f : disconnected_links) out.push_back("link of {" + f.to_string() + "} is disconnected");
  if (!is_connected) out.push_back("complex is disconnected");
  for (Vertex v : non_surface_links) out.push_back("link of " + std::to_string(v) + " is not a closed surface");
  return out;
}

std::optional<SurfaceClass> link_class(const SimplicialComplex& k, Vertex v) {
  auto lk = link(k, v);
  if (closed_surface_defect(lk)) return std::nullopt;
  return classify_surface(Surface(std::move(lk)));
}

NormalityReport validate_normal(const SimplicialComplex& k) {
  NormalityReport r;
  r.is_pure = !k.empty() && k.is_pure() && k.dimension() == 3;
  if (!r.is_pure) {
    r.is_connected = !k.empty() && count_components(k) == 1;
    return r;
  }
  for (const Face& t : k.faces(2))
    if (k.count_facets_containing(t) != 2) r.ridge_failures.push_back(t);
  for (int dim = 0; dim <= 1; ++dim)
    for (const Face& f : k.faces(dim))
      if (count_components(link(k, f)) != 1) r.disconnected_links.push_back(f);
  r.is_connected = count_components(k) == 1;
  for (Vertex v : k.vertices()) {
    auto cls = link_class(k, v);
    if (!cls) r.non_surface_links.push_back(v);
    else if (!cls->is_sphere()) r.singular_vertices.emplace_back(v, *cls);
  }
  const bool ok = r.ridge_failures.empty() && r.disconnected_links.empty() && r.is_connected &&
                  r.non_surface_links.empty();
  r.verdict = ok ? Verdict::NormalClosed : Verdict::NotNormal;
  return r;
}

std::vector<Vertex> singular_vertices(const SimplicialComplex& k) {
  std::vector<Vertex> out;
  for (Vertex v : k.vertices()) {
    auto cls = link_class(k, v);
    if (cls && !cls->is_sphere()) out.push_back(v);
  }
  return out;
}

}  // namespace pseudoform
