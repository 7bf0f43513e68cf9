#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "lenscert/error.hpp"
#include "lenscert/triangulation.hpp"

namespace lenscert {

/// Dual 1-skeleton: one node per tetrahedron, one edge per face pairing.
/// `in_tree[i]` marks the breadth-first spanning tree grown from `root`.
struct DualGraph {
  std::size_t nodes = 0;
  std::size_t root = 0;
  std::vector<FacePairing> edges;  // Triangulation::pairings() order
  std::vector<bool> in_tree;
  std::vector<std::size_t> order;        // nodes in discovery order
  std::vector<std::size_t> parent_edge;  // tree edge reaching each non-root node

  std::size_t tree_edge_count() const {
    std::size_t n = 0;
    for (bool b : in_tree) n += b ? 1 : 0;
    return n;
  }
};

struct OrientationResult {
  bool orientable = false;
  // Per-tetrahedron sign, filled only when orientable.
  std::vector<int> signs;
  // First non-tree pairing (in pairing order) that breaks consistency.
  std::optional<FacePairing> witness;
  DualGraph dual;
};

/// A pairing is orientation reversing (as a map of boundary faces) exactly
/// when its permutation is odd, so consistent signs satisfy
/// sign(A) * sign(B) == +1 iff the permutation is odd.
inline bool pairing_consistent(const FacePairing& p, int sign_source, int sign_target) {
  return (sign_source * sign_target == 1) == !p.perm.is_even();
}

/// Grows a breadth-first spanning tree from `root`, visiting faces 0..3 of
/// each tetrahedron in order. Throws TriangulationError if disconnected.
inline DualGraph dual_graph(const Triangulation& tri, std::size_t root = 0) {
  DualGraph g;
  g.nodes = tri.size();
  g.root = root;
  g.edges = tri.pairings();
  g.in_tree.assign(g.edges.size(), false);
  if (root >= tri.size()) throw DomainError("spanning tree root out of range");

  // Map each face slot to its pairing index.
  std::vector<std::size_t> edge_of(4 * tri.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    edge_of[e.source.tet * 4 + e.source.face] = i;
    edge_of[e.target.tet * 4 + e.target.face] = i;
  }

  std::vector<bool> seen(tri.size(), false);
  g.parent_edge.assign(tri.size(), static_cast<std::size_t>(-1));
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    auto a = queue.front();
    queue.pop_front();
    g.order.push_back(a);
    for (int f = 0; f < 4; ++f) {
      auto b = tri.partner({a, f}).tet;
      if (seen[b]) continue;
      seen[b] = true;
      g.in_tree[edge_of[a * 4 + f]] = true;
      g.parent_edge[b] = edge_of[a * 4 + f];
      queue.push_back(b);
    }
  }
  if (g.order.size() != tri.size()) throw TriangulationError("triangulation is disconnected");
  return g;
}

/// Propagates signs along the spanning tree, then checks the non-tree
/// pairings.
inline OrientationResult orientation_check(const Triangulation& tri, std::size_t root = 0) {
  OrientationResult res;
  res.dual = dual_graph(tri, root);
  const auto& g = res.dual;

  std::vector<int> sign(tri.size(), 0);
  sign[root] = 1;
  for (auto node : g.order) {
    if (node == root) continue;
    const auto& e = g.edges[g.parent_edge[node]];
    auto other = e.source.tet == node ? e.target.tet : e.source.tet;
    sign[node] = e.perm.is_even() ? -sign[other] : sign[other];
  }

  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (g.in_tree[i]) continue;
    const auto& e = g.edges[i];
    if (!pairing_consistent(e, sign[e.source.tet], sign[e.target.tet])) {
      res.witness = e;
      break;
    }
  }
  res.orientable = !res.witness.has_value();
  if (res.orientable) res.signs = std::move(sign);
  return res;
}

}  // namespace lenscert
