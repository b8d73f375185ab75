#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pseudoform {

using Vertex = std::uint32_t;

/// A simplex given by its vertex set: sorted, duplicate free, at most five
/// vertices (a 4-simplex is the largest face a 3-complex ever needs).
///
/// Unused slots are kept zero so the defaulted ordering is lexicographic on
/// the vertex sequence with proper prefixes sorting first.
class Face {
 public:
  static constexpr std::size_t kMaxSize = 5;

  Face() = default;
  Face(std::initializer_list<Vertex> vertices);
  explicit Face(std::span<const Vertex> vertices);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int dim() const { return static_cast<int>(size_) - 1; }

  const Vertex* begin() const { return vertices_.data(); }
  const Vertex* end() const { return vertices_.data() + size_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }
  Vertex front() const { return vertices_[0]; }
  Vertex back() const { return vertices_[size_ - 1]; }

  bool contains(Vertex v) const;
  /// True when `other` is a (not necessarily proper) face of this one.
  bool contains(const Face& other) const;
  bool intersects(const Face& other) const;

  Face with(Vertex v) const;
  Face without(Vertex v) const;
  Face minus(const Face& other) const;
  Face join(const Face& other) const;
  Face intersection(const Face& other) const;
  /// Replaces `from` by `to`; throws if `to` is already present.
  Face replaced(Vertex from, Vertex to) const;

  /// All subsets with exactly `k` vertices, in lexicographic order.
  std::vector<Face> subfaces(std::size_t k) const;
  /// Subsets of size size()-1, i.e. the boundary faces.
  std::vector<Face> boundary() const { return subfaces(size_ - 1); }

  std::vector<Vertex> to_vector() const { return {begin(), end()}; }
  /// Comma separated, e.g. "0,1,4".
  std::string to_string() const;

  friend auto operator<=>(const Face&, const Face&) = default;

 private:
  std::array<Vertex, kMaxSize> vertices_{};
  std::uint8_t size_ = 0;
};

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept;
};

}  // namespace pseudoform
