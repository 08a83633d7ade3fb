#include "speedup/complex.hpp"

#include "speedup/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace speedup {

namespace {

std::vector<Vertex> validate(std::vector<Vertex> vertices) {
  if (vertices.empty()) {
    throw EmptyError("a simplex must have at least one vertex");
  }
  std::sort(vertices.begin(), vertices.end());
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i - 1].id == vertices[i].id) {
      throw NonChromaticError("process id " + std::to_string(vertices[i].id.value) +
                              " appears twice in a simplex");
    }
  }
  return vertices;
}

}  // namespace

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(validate(std::move(vertices))) {}

Simplex::Simplex(std::initializer_list<Vertex> vertices)
    : vertices_(validate(std::vector<Vertex>(vertices))) {}

std::vector<ProcessId> Simplex::id_list() const {
  std::vector<ProcessId> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(v.id);
  return out;
}

IdSet Simplex::ids() const {
  IdSet out;
  for (const auto& v : vertices_) out.insert(v.id);
  return out;
}

std::optional<Value> Simplex::value_of(ProcessId id) const {
  for (const auto& v : vertices_) {
    if (v.id == id) return v.value;
  }
  return std::nullopt;
}

bool Simplex::contains(const Vertex& v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

std::optional<Simplex> Simplex::restrict_to(const IdSet& ids) const {
  std::vector<Vertex> kept;
  for (const auto& v : vertices_) {
    if (ids.contains(v.id)) kept.push_back(v);
  }
  if (kept.empty()) return std::nullopt;
  return Simplex(Validated{}, std::move(kept));
}

std::size_t Simplex::hash() const noexcept {
  std::size_t h = vertices_.size();
  for (const auto& v : vertices_) h = h * 1000003u ^ VertexHash{}(v);
  return h;
}

std::string Simplex::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) out += ", ";
    out += "(" + std::to_string(vertices_[i].id.value) + "," + vertices_[i].value.to_string() +
           ")";
  }
  return out + "}";
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept {
  const auto& x = a.vertices_;
  const auto& y = b.vertices_;
  const auto ids = std::lexicographical_compare_three_way(
      x.begin(), x.end(), y.begin(), y.end(),
      [](const Vertex& l, const Vertex& r) { return l.id <=> r.id; });
  if (ids != 0) return ids;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (auto c = x[i].value <=> y[i].value; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<Simplex> faces(const Simplex& s) {
  const auto& vs = s.vertices();
  const std::size_t k = vs.size();
  std::vector<Simplex> out;
  out.reserve((std::size_t{1} << k) - 1);
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<Vertex> sub;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) sub.push_back(vs[i]);
    }
    out.emplace_back(std::move(sub));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ChromaticComplex ChromaticComplex::from_facets(std::vector<Simplex> facets, int n) {
  if (facets.empty()) {
    throw EmptyError("a complex needs at least one facet");
  }
  // Largest first, so a candidate only needs checking against kept facets.
  std::sort(facets.begin(), facets.end(), [](const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

  std::unordered_set<Simplex, SimplexHash> covered;
  std::vector<Simplex> kept;
  for (auto& f : facets) {
    if (covered.contains(f)) continue;
    for (auto& face : faces(f)) covered.insert(std::move(face));
    kept.push_back(std::move(f));
  }
  std::sort(kept.begin(), kept.end());

  int max_id = 0;
  for (const auto& f : kept) max_id = std::max(max_id, f.vertices().back().id.value);
  return ChromaticComplex(std::move(kept), n > 0 ? n : max_id);
}

std::vector<Vertex> ChromaticComplex::vertices() const {
  std::vector<Vertex> out;
  for (const auto& f : facets_) {
    out.insert(out.end(), f.vertices().begin(), f.vertices().end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Simplex> ChromaticComplex::simplices() const {
  std::unordered_set<Simplex, SimplexHash> seen;
  std::vector<Simplex> out;
  for (const auto& f : facets_) {
    for (auto& face : faces(f)) {
      if (seen.insert(face).second) out.push_back(std::move(face));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

IdSet ChromaticComplex::ids() const {
  IdSet out;
  for (const auto& f : facets_) {
    for (const auto& v : f.vertices()) out.insert(v.id);
  }
  return out;
}

bool ChromaticComplex::contains(const Simplex& s) const {
  return std::any_of(facets_.begin(), facets_.end(),
                     [&](const Simplex& f) { return s.is_face_of(f); });
}

ChromaticComplex make_complex(std::vector<Simplex> facets, int n) {
  return ChromaticComplex::from_facets(std::move(facets), n);
}

ChromaticComplex project(const ChromaticComplex& k, const IdSet& ids) {
  if (ids.empty()) {
    throw EmptyError("projection onto an empty id set");
  }
  std::vector<Simplex> kept;
  for (const auto& f : k.facets()) {
    if (auto r = f.restrict_to(ids)) kept.push_back(std::move(*r));
  }
  if (kept.empty()) {
    throw EmptyResultError("no vertex has an id in the projection set");
  }
  return ChromaticComplex::from_facets(std::move(kept), k.n());
}

bool complexes_equal(const ChromaticComplex& a, const ChromaticComplex& b) {
  return a.facets() == b.facets();
}

}  // namespace speedup
