#pragma once

// Vertex, edge and face classes of a triangulation: the orbits of local
// simplices under the face gluings. Class numbering follows the smallest
// local representative, so the output is a deterministic function of the
// gluing table.

#include <array>
#include <cstddef>
#include <deque>
#include <vector>

#include "lenscert/detail/disjoint_sets.hpp"
#include "lenscert/triangulation.hpp"

namespace lenscert {

struct EdgeRef {
  std::size_t tet = 0;
  int edge = 0;  // local edge index, see edge_index()

  friend constexpr auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

struct CellStructure {
  std::size_t tetrahedra = 0;

  // Vertex classes, indexed by tet * 4 + local vertex.
  std::vector<std::size_t> vertex_class;
  std::size_t vertex_count = 0;

  // Edge classes, indexed by tet * 6 + local edge. The class orientation is
  // the representative's low-to-high local direction; edge_sign is +1 when a
  // local low-to-high direction agrees with it and -1 otherwise.
  std::vector<std::size_t> edge_class;
  std::vector<int> edge_sign;
  std::vector<EdgeRef> edge_rep;
  std::vector<std::array<std::size_t, 2>> edge_ends;  // tail, head vertex class
  std::size_t edge_count = 0;
  // False when some edge is identified with itself in reverse.
  bool edges_consistent = true;

  // Face classes, indexed by tet * 4 + local face.
  std::vector<std::size_t> face_class;
  std::vector<FaceRef> face_rep;
  std::size_t face_count = 0;

  std::size_t vertex_of(std::size_t tet, int v) const { return vertex_class[tet * 4 + v]; }
  std::size_t edge_of(std::size_t tet, int e) const { return edge_class[tet * 6 + e]; }
  int sign_of(std::size_t tet, int e) const { return edge_sign[tet * 6 + e]; }
};

namespace detail {

// Renumbers union-find roots 0,1,2,... in order of first appearance.
inline std::vector<std::size_t> compact_classes(DisjointSets& sets, std::size_t& count) {
  std::vector<std::size_t> id(sets.size(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> out(sets.size());
  count = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto root = sets.find(i);
    if (id[root] == static_cast<std::size_t>(-1)) id[root] = count++;
    out[i] = id[root];
  }
  return out;
}

}  // namespace detail

inline CellStructure cell_structure(const Triangulation& tri) {
  const std::size_t t = tri.size();
  CellStructure cs;
  cs.tetrahedra = t;

  detail::DisjointSets vertices(4 * t);
  detail::DisjointSets faces(4 * t);
  // Signed adjacency between local edges: (neighbour slot, relative sign).
  std::vector<std::vector<std::pair<std::size_t, int>>> edge_adj(6 * t);

  for (std::size_t a = 0; a < t; ++a) {
    for (int f = 0; f < 4; ++f) {
      FaceRef src{a, f};
      FaceRef dst = tri.partner(src);
      Perm4 p = tri.gluing(src);
      faces.unite(a * 4 + f, dst.tet * 4 + dst.face);
      for (int v = 0; v < 4; ++v)
        if (v != f) vertices.unite(a * 4 + v, dst.tet * 4 + p[v]);
      for (auto [v, w] : {std::array{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}) {
        if (v == f || w == f) continue;
        int image_sign = p[v] < p[w] ? 1 : -1;
        edge_adj[a * 6 + edge_index(v, w)].push_back(
            {dst.tet * 6 + edge_index(p[v], p[w]), image_sign});
      }
    }
  }

  cs.vertex_class = detail::compact_classes(vertices, cs.vertex_count);
  cs.face_class = detail::compact_classes(faces, cs.face_count);
  cs.face_rep.resize(cs.face_count);
  std::vector<bool> face_seen(cs.face_count, false);
  for (std::size_t i = 0; i < 4 * t; ++i) {
    auto c = cs.face_class[i];
    if (!face_seen[c]) {
      face_seen[c] = true;
      cs.face_rep[c] = {i / 4, static_cast<int>(i % 4)};
    }
  }

  // Breadth-first orbit walk over local edges in slot order, propagating the
  // representative's direction.
  cs.edge_class.assign(6 * t, static_cast<std::size_t>(-1));
  cs.edge_sign.assign(6 * t, 0);
  for (std::size_t start = 0; start < 6 * t; ++start) {
    if (cs.edge_class[start] != static_cast<std::size_t>(-1)) continue;
    const std::size_t cls = cs.edge_count++;
    cs.edge_rep.push_back({start / 6, static_cast<int>(start % 6)});
    auto [lo, hi] = edge_vertices(static_cast<int>(start % 6));
    cs.edge_ends.push_back({cs.vertex_of(start / 6, lo), cs.vertex_of(start / 6, hi)});
    cs.edge_class[start] = cls;
    cs.edge_sign[start] = 1;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      auto cur = queue.front();
      queue.pop_front();
      for (auto [next, rel] : edge_adj[cur]) {
        int sign = cs.edge_sign[cur] * rel;
        if (cs.edge_class[next] == static_cast<std::size_t>(-1)) {
          cs.edge_class[next] = cls;
          cs.edge_sign[next] = sign;
          queue.push_back(next);
        } else if (cs.edge_sign[next] != sign) {
          cs.edges_consistent = false;
        }
      }
    }
  }
  return cs;
}

}  // namespace lenscert
