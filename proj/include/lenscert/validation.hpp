#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lenscert/cell_structure.hpp"
#include "lenscert/detail/disjoint_sets.hpp"
#include "lenscert/triangulation.hpp"

namespace lenscert {

struct ValidationReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  std::size_t tetrahedra = 0;
  long euler_characteristic = 0;
  std::vector<long> link_euler;  // one entry per vertex class
  bool edges_consistent = true;
  bool connected = true;

  bool ok() const {
    if (euler_characteristic != 0 || !edges_consistent) return false;
    for (long chi : link_euler)
      if (chi != 2) return false;
    return true;
  }

  std::string failure() const {
    if (!edges_consistent) return "an edge is identified with itself in reverse";
    if (euler_characteristic != 0)
      return "Euler characteristic " + std::to_string(euler_characteristic) + " != 0";
    for (std::size_t v = 0; v < link_euler.size(); ++v)
      if (link_euler[v] != 2)
        return "vertex " + std::to_string(v) + " link has Euler characteristic " +
               std::to_string(link_euler[v]);
    return {};
  }
};

inline bool is_connected(const Triangulation& tri) {
  detail::DisjointSets comps(tri.size());
  for (const auto& p : tri.pairings()) comps.unite(p.source.tet, p.target.tet);
  return comps.count_classes() == 1;
}

/// Counts cells after identification and checks that every vertex link is
/// a sphere via its Euler characteristic. The link of a vertex class is
/// built from one corner triangle per local vertex; its vertices are the
/// orbits of (tet, v, w) "edge ends" under the gluings.
inline ValidationReport validate(const Triangulation& tri) {
  const std::size_t t = tri.size();
  const CellStructure cs = cell_structure(tri);

  ValidationReport r;
  r.vertices = cs.vertex_count;
  r.edges = cs.edge_count;
  r.faces = cs.face_count;
  r.tetrahedra = t;
  r.euler_characteristic = static_cast<long>(r.vertices) - static_cast<long>(r.edges) +
                           static_cast<long>(r.faces) - static_cast<long>(t);
  r.edges_consistent = cs.edges_consistent;
  r.connected = is_connected(tri);

  auto end_index = [](std::size_t tet, int v, int w) { return (tet * 4 + v) * 4 + w; };
  detail::DisjointSets ends(16 * t);
  for (std::size_t a = 0; a < t; ++a)
    for (int f = 0; f < 4; ++f) {
      FaceRef dst = tri.partner({a, f});
      Perm4 p = tri.gluing({a, f});
      for (int v = 0; v < 4; ++v)
        for (int w = 0; w < 4; ++w)
          if (v != f && w != f && v != w)
            ends.unite(end_index(a, v, w), end_index(dst.tet, p[v], p[w]));
    }

  std::vector<long> corners(cs.vertex_count, 0);
  std::vector<long> link_vertices(cs.vertex_count, 0);
  for (std::size_t a = 0; a < t; ++a)
    for (int v = 0; v < 4; ++v) {
      auto cls = cs.vertex_of(a, v);
      ++corners[cls];
      for (int w = 0; w < 4; ++w)
        if (w != v && ends.find(end_index(a, v, w)) == end_index(a, v, w))
          ++link_vertices[cls];
    }
  r.link_euler.resize(cs.vertex_count);
  for (std::size_t c = 0; c < cs.vertex_count; ++c) {
    // Each corner triangle has three edges, glued in pairs.
    long link_edges = 3 * corners[c] / 2;
    r.link_euler[c] = link_vertices[c] - link_edges + corners[c];
  }
  return r;
}

}  // namespace lenscert
