#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "multiskein/diagram.hpp"

namespace multiskein {

// Mutable working form used while building or editing diagrams. Edges and
// crossings are never erased, only marked dead, so ids stay stable during an edit.
struct RawEdge {
  Port tail;
  Port head;
  std::pair<int, int> rank{0, 0};  // position in the parent traversal, used for re-marking
  bool alive = true;
};

struct RawCrossing {
  std::array<int, 4> edge{-1, -1, -1, -1};
  int over_parity = 1;  // over strand occupies slots over_parity and over_parity + 2
  bool alive = true;
};

struct RawDiagram {
  std::vector<RawCrossing> crossings;
  std::vector<RawEdge> edges;
  int loops = 0;

  // ranks are traversal positions of d
  static RawDiagram from(const MarkedDiagram& d);

  int add_crossing(int over_parity);
  int add_edge(Port tail, Port head, std::pair<int, int> rank);
  int edge_at(Port p) const { return crossings[p.crossing].edge[p.slot]; }
  bool is_head(Port p) const { return edges[edge_at(p)].head == p; }
  Port other_end(int e, Port p) const { return edges[e].tail == p ? edges[e].head : edges[e].tail; }
  bool is_over_slot(int x, int slot) const { return (slot - crossings[x].over_parity) % 2 == 0; }
  void reverse_edge(int e) { std::swap(edges[e].tail, edges[e].head); }
  int sign(int x) const;

  // Deletes the crossings `xs`, joining slot s of each to slot pairing(x, s).
  // Chains of edges through deleted crossings become single edges (minimum
  // rank); closed chains become free loops. Throws MoveError if orientations
  // do not match along a chain.
  void remove_crossings(const std::vector<int>& xs, const std::function<int(int, int)>& pairing);
};

// Canonical relabeling. `bases` holds one raw edge per component with
// crossings, in component order. crossing_map[raw id] = new id or -1.
MarkedDiagram normalize(const RawDiagram& raw, const std::vector<int>& bases, std::vector<int>* crossing_map = nullptr);
// Components ordered by smallest rank, base point on the smallest-rank arc.
MarkedDiagram normalize_by_rank(const RawDiagram& raw, std::vector<int>* crossing_map = nullptr);

}  // namespace multiskein
