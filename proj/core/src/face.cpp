#include "pseudoform/face.hpp"

#include <algorithm>

#include "pseudoform/error.hpp"

namespace pseudoform {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedFacet: return "malformed-facet";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::MissingFace: return "missing-face";
    case ErrorKind::NotASurface: return "not-a-closed-surface";
    case ErrorKind::NotACycle: return "not-a-cycle";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Inconclusive: return "inconclusive";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Replay: return "replay";
  }
  return "unknown";
}

Face::Face(std::initializer_list<Vertex> vertices)
    : Face(std::span<const Vertex>(vertices.begin(), vertices.size())) {}

Face::Face(std::span<const Vertex> vertices) {
  if (vertices.size() > kMaxSize)
    throw Error(ErrorKind::MalformedFacet, "face has more than 5 vertices");
  std::copy(vertices.begin(), vertices.end(), vertices_.begin());
  size_ = static_cast<std::uint8_t>(vertices.size());
  std::sort(vertices_.begin(), vertices_.begin() + size_);
  if (std::adjacent_find(begin(), end()) != end())
    throw Error(ErrorKind::MalformedFacet,
                "duplicate vertex " + std::to_string(*std::adjacent_find(begin(), end())) +
                    " in face");
}

bool Face::contains(Vertex v) const { return std::binary_search(begin(), end(), v); }

bool Face::contains(const Face& other) const {
  return std::includes(begin(), end(), other.begin(), other.end());
}

bool Face::intersects(const Face& other) const {
  auto i = begin();
  auto j = other.begin();
  while (i != end() && j != other.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

Face Face::with(Vertex v) const {
  if (contains(v)) return *this;
  std::array<Vertex, kMaxSize + 1> buf{};
  std::copy(begin(), end(), buf.begin());
  buf[size_] = v;
  return Face(std::span<const Vertex>(buf.data(), size_ + 1u));
}

Face Face::without(Vertex v) const {
  Face out;
  for (Vertex x : *this)
    if (x != v) out.vertices_[out.size_++] = x;
  return out;
}

Face Face::minus(const Face& other) const {
  Face out;
  for (Vertex x : *this)
    if (!other.contains(x)) out.vertices_[out.size_++] = x;
  return out;
}

Face Face::join(const Face& other) const {
  std::array<Vertex, 2 * kMaxSize> buf{};
  auto last = std::set_union(begin(), end(), other.begin(), other.end(), buf.begin());
  return Face(std::span<const Vertex>(buf.data(), static_cast<std::size_t>(last - buf.begin())));
}

Face Face::intersection(const Face& other) const {
  Face out;
  for (Vertex x : *this)
    if (other.contains(x)) out.vertices_[out.size_++] = x;
  return out;
}

Face Face::replaced(Vertex from, Vertex to) const {
  if (!contains(from)) return *this;
  std::array<Vertex, kMaxSize> buf{};
  std::copy(begin(), end(), buf.begin());
  for (std::size_t i = 0; i < size_; ++i)
    if (buf[i] == from) buf[i] = to;
  return Face(std::span<const Vertex>(buf.data(), size_));
}

std::vector<Face> Face::subfaces(std::size_t k) const {
  std::vector<Face> out;
  if (k > size_) return out;
  // Bitmask enumeration is fine for at most 5 vertices.
  for (unsigned mask = 0; mask < (1u << size_); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    Face f;
    for (std::size_t i = 0; i < size_; ++i)
      if (mask & (1u << i)) f.vertices_[f.size_++] = vertices_[i];
    out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Face::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) s += ',';
    s += std::to_string(vertices_[i]);
  }
  return s;
}

std::size_t FaceHash::operator()(const Face& f) const noexcept {
  std::size_t h = f.size();
  for (Vertex v : f) h = h * 1000003u ^ std::hash<Vertex>{}(v);
  return h;
}

}  // namespace pseudoform
