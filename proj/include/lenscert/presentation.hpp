#pragma once

// Fundamental group of a triangulated closed 3-manifold from its 2-skeleton:
// one generator per edge class outside a maximal tree of the identified
// 1-skeleton, one relator per face class (the triangle's boundary word).

#include <cstddef>
#include <deque>
#include <vector>

#include "lenscert/cell_structure.hpp"
#include "lenscert/error.hpp"
#include "lenscert/group.hpp"
#include "lenscert/triangulation.hpp"
#include "lenscert/validation.hpp"

namespace lenscert {

/// Edge-class generators of a presentation, with the tree used.
struct EdgePresentation {
  GroupPresentation presentation;
  std::vector<bool> tree_edge;                 // per edge class
  std::vector<std::size_t> generator_of_edge;  // per edge class; npos for tree edges
};

/// Maximal tree in the identified 1-skeleton, grown breadth-first from
/// vertex class 0 scanning incident edge classes in ascending order.
inline std::vector<bool> skeleton_tree(const CellStructure& cs) {
  std::vector<std::vector<std::size_t>> incident(cs.vertex_count);
  for (std::size_t e = 0; e < cs.edge_count; ++e) {
    auto [u, v] = cs.edge_ends[e];
    incident[u].push_back(e);
    if (v != u) incident[v].push_back(e);
  }
  std::vector<bool> tree(cs.edge_count, false);
  std::vector<bool> seen(cs.vertex_count, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto e : incident[u]) {
      auto [a, b] = cs.edge_ends[e];
      auto w = a == u ? b : a;
      if (seen[w]) continue;
      seen[w] = true;
      tree[e] = true;
      queue.push_back(w);
    }
  }
  return tree;
}

inline EdgePresentation fundamental_group_detail(const Triangulation& tri) {
  if (!is_connected(tri)) throw TriangulationError("triangulation is disconnected");
  const CellStructure cs = cell_structure(tri);

  EdgePresentation out;
  out.tree_edge = skeleton_tree(cs);
  out.generator_of_edge.assign(cs.edge_count, static_cast<std::size_t>(-1));
  auto& pres = out.presentation;
  for (std::size_t e = 0; e < cs.edge_count; ++e)
    if (!out.tree_edge[e]) out.generator_of_edge[e] = pres.generators++;

  // Boundary a -> b -> c -> a of each representative face, a < b < c.
  for (std::size_t c = 0; c < cs.face_count; ++c) {
    auto [tet, f] = cs.face_rep[c];
    auto [a, b, d] = face_vertices(f);
    std::vector<Letter> letters;
    auto push = [&](int from, int to) {
      auto cls = cs.edge_of(tet, edge_index(from, to));
      if (out.tree_edge[cls]) return;
      int sign = cs.sign_of(tet, edge_index(from, to)) * (from < to ? 1 : -1);
      letters.push_back({out.generator_of_edge[cls], sign});
    };
    push(a, b);
    push(b, d);
    push(d, a);
    pres.relators.push_back(Word(std::move(letters)).reduced());
  }
  return out;
}

/// At most e - (v - 1) generators and exactly one relator (of length at
/// most 3) per face class. Requires a connected triangulation.
inline GroupPresentation fundamental_group(const Triangulation& tri) {
  return fundamental_group_detail(tri).presentation;
}

}  // namespace lenscert
