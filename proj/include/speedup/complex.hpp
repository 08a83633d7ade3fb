#pragma once

#include "speedup/value.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace speedup {

using IdSet = std::set<ProcessId>;

/// A non-empty chromatic set of vertices, stored sorted by process id.
class Simplex {
 public:
  /// Throws NonChromaticError on a repeated id and EmptyError on no vertices.
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices);

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }

  std::vector<ProcessId> id_list() const;
  IdSet ids() const;
  std::optional<Value> value_of(ProcessId id) const;
  bool contains(const Vertex& v) const;
  bool is_face_of(const Simplex& other) const;
  /// Vertices whose id lies in `ids`, or nothing if none do.
  std::optional<Simplex> restrict_to(const IdSet& ids) const;

  std::size_t hash() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Simplex& a, const Simplex& b) noexcept {
    return a.vertices_ == b.vertices_;
  }
  /// Canonical order: id set first, then the values in id order.
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept;

 private:
  struct Validated {};
  Simplex(Validated, std::vector<Vertex> sorted) : vertices_(std::move(sorted)) {}

  std::vector<Vertex> vertices_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept { return s.hash(); }
};

/// All 2^|s| - 1 non-empty faces of `s`, in canonical order.
std::vector<Simplex> faces(const Simplex& s);

inline IdSet ids(const Simplex& s) { return s.ids(); }

/// An immutable chromatic simplicial complex, stored by its facets.
///
/// Faces are implicit. Facets are subset-maximal and kept in canonical order,
/// so two complexes with the same simplices have identical facet vectors.
class ChromaticComplex {
 public:
  /// Builds the complex generated by `facets`, dropping any that are faces of
  /// others. `n` is the ambient number of processes; 0 means "largest id".
  /// Throws EmptyError on an empty facet set.
  static ChromaticComplex from_facets(std::vector<Simplex> facets, int n = 0);

  int n() const noexcept { return n_; }
  const std::vector<Simplex>& facets() const noexcept { return facets_; }
  std::size_t facet_count() const noexcept { return facets_.size(); }

  /// Sorted, de-duplicated vertex set.
  std::vector<Vertex> vertices() const;
  /// Every simplex (all faces of all facets), sorted and de-duplicated.
  std::vector<Simplex> simplices() const;
  IdSet ids() const;
  /// True iff `s` is a face of some facet.
  bool contains(const Simplex& s) const;

 private:
  ChromaticComplex(std::vector<Simplex> facets, int n) : facets_(std::move(facets)), n_(n) {}

  std::vector<Simplex> facets_;
  int n_ = 0;
};

ChromaticComplex make_complex(std::vector<Simplex> facets, int n = 0);

/// Subcomplex induced by the vertices with ids in `ids`.
/// Throws EmptyResultError if no vertex qualifies, EmptyError if `ids` is empty.
ChromaticComplex project(const ChromaticComplex& k, const IdSet& ids);

bool complexes_equal(const ChromaticComplex& a, const ChromaticComplex& b);

}  // namespace speedup
