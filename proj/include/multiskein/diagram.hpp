#pragma once

#include <array>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace multiskein {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The requested site does not admit the move or smoothing.
struct MoveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Half-edge: a slot 0..3 (counterclockwise) at a crossing.
struct Port {
  int crossing = -1;
  int slot = -1;
  friend bool operator==(const Port&, const Port&) = default;
  friend auto operator<=>(const Port&, const Port&) = default;
};

enum class Strand { Under, Over };

struct Visit {
  int crossing;
  Strand strand;
  int component;
  int edge;  // the arc arriving at the crossing
};

struct Index {
  int c = 0;
  int d = 0;
  friend auto operator<=>(const Index&, const Index&) = default;
};

// Oriented marked link diagram in canonical labeling:
//  - arcs are numbered 0.. in traversal order, component by component, each
//    component starting at its base point arc;
//  - crossings are numbered by first visit in that traversal;
//  - each crossing lists its four arcs counterclockwise starting from the
//    incoming under-strand (slot 0 in, slot 2 out);
//  - free loops (crossingless circles) come after all components with crossings.
// Two diagrams are equal iff they are the same marked diagram up to relabeling.
class MarkedDiagram {
 public:
  MarkedDiagram() = default;

  int crossing_count() const { return static_cast<int>(x_.size()); }
  int edge_count() const { return static_cast<int>(head_.size()); }
  int loop_count() const { return loops_; }
  // components that pass through crossings
  int strand_component_count() const { return static_cast<int>(comp_start_.size()) - 1; }
  int component_count() const { return strand_component_count() + loops_; }

  const std::array<int, 4>& crossing(int x) const { return x_.at(x); }
  Port head(int e) const { return head_.at(e); }
  Port tail(int e) const { return tail_.at(e); }
  int component_of_edge(int e) const { return edge_comp_.at(e); }
  int component_begin(int k) const { return comp_start_.at(k); }
  int component_end(int k) const { return comp_start_.at(k + 1); }
  int component_size(int k) const { return component_end(k) - component_begin(k); }
  // arc following e along the orientation
  int next_edge(int e) const;
  // 1 or 3
  int over_in_slot(int x) const { return over_in_.at(x); }
  bool is_head(Port p) const { return head_.at(x_.at(p.crossing)[p.slot]) == p; }
  int edge_at(Port p) const { return x_.at(p.crossing)[p.slot]; }

  // Flat encoding, equal iff diagrams are equal; usable as a hash key.
  std::vector<int> key() const;

  friend bool operator==(const MarkedDiagram& a, const MarkedDiagram& b) {
    return a.x_ == b.x_ && a.comp_start_ == b.comp_start_ && a.loops_ == b.loops_;
  }

 private:
  friend class DiagramAccess;
  std::vector<std::array<int, 4>> x_;
  std::vector<Port> head_;
  std::vector<Port> tail_;
  std::vector<int> over_in_;
  std::vector<int> comp_start_{0};
  std::vector<int> edge_comp_;
  int loops_ = 0;
};

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept;
};

// Parsing and formatting.
MarkedDiagram parse_pd(const std::string& text);
MarkedDiagram parse_diagram_json(const nlohmann::json& j);
std::string to_pd(const MarkedDiagram& d);  // labels 1.. in canonical order
nlohmann::json to_json(const MarkedDiagram& d);

// Structural checks (orientation, Euler per connected piece). Throws DiagramError.
void validate(const MarkedDiagram& d);

int crossing_sign(const MarkedDiagram& d, int p);
int writhe(const MarkedDiagram& d);
std::vector<Visit> traversal(const MarkedDiagram& d);
std::vector<int> bad_points(const MarkedDiagram& d);
Index index_of(const MarkedDiagram& d);
// components of the two strands at p (under strand first)
std::array<int, 2> strand_components(const MarkedDiagram& d, int p);

MarkedDiagram switch_crossing(const MarkedDiagram& d, int p, std::vector<int>* crossing_map = nullptr);
// Base point of component k moves to its arc at offset `position` (0 = current).
MarkedDiagram move_basepoint(const MarkedDiagram& d, int component, int position);
// perm[i] = old index of the component placed at position i; free loops stay last.
MarkedDiagram reorder_components(const MarkedDiagram& d, const std::vector<int>& perm);
MarkedDiagram mirror(const MarkedDiagram& d);  // switch every crossing
// Reverses the orientation of one component (base point keeps its arc).
MarkedDiagram reverse_component(const MarkedDiagram& d, int component);

// Face boundaries traversed with the face on the left.
struct FaceSide {
  int edge;
  Port from;
  Port to;
};
using Face = std::vector<FaceSide>;
std::vector<Face> faces(const MarkedDiagram& d);

enum class Side { Left, Right };

// Adds a kink on arc `edge` with the given crossing sign, loop on `side` of the arc.
MarkedDiagram apply_r1(const MarkedDiagram& d, int edge, int sign, Side side);
// Turns a free loop into a one-crossing kink.
MarkedDiagram apply_r1_loop(const MarkedDiagram& d, int sign, Side side);
MarkedDiagram undo_r1(const MarkedDiagram& d, int face);
// Pushes side i over (or under) side j of face f.
MarkedDiagram apply_r2(const MarkedDiagram& d, int face, int side_i, int side_j, bool i_over);
MarkedDiagram undo_r2(const MarkedDiagram& d, int face);
MarkedDiagram apply_r3(const MarkedDiagram& d, int face);

std::vector<int> r1_undo_sites(const MarkedDiagram& d);
std::vector<int> r2_undo_sites(const MarkedDiagram& d);
std::vector<int> r3_sites(const MarkedDiagram& d);

// Marking-independent canonical representative: same underlying oriented
// diagram, canonical component order and base points.
MarkedDiagram canonical_form(const MarkedDiagram& d);
std::vector<int> canonical_key(const MarkedDiagram& d);

struct CensusEntry {
  std::string name;
  std::string pd;
};
const std::vector<CensusEntry>& census();
MarkedDiagram census_diagram(const std::string& name);

}  // namespace multiskein
