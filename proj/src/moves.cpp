#include <algorithm>
#include <map>

#include "multiskein/diagram.hpp"
#include "multiskein/raw_diagram.hpp"

namespace multiskein {

namespace {

int mod4(int s) { return ((s % 4) + 4) % 4; }

bool over_slot(int slot) { return slot % 2 == 1; }  // canonical labeling

const Face& face_at(const std::vector<Face>& fs, int face) {
  if (face < 0 || face >= static_cast<int>(fs.size())) throw MoveError("no face " + std::to_string(face));
  return fs[face];
}

bool is_r2_bigon(const Face& f) {
  if (f.size() != 2) return false;
  if (f[0].from.crossing == f[0].to.crossing) return false;
  bool o1 = over_slot(f[0].from.slot), o2 = over_slot(f[0].to.slot);
  return o1 == o2;
}

// 0: top (over at both ends), 1: bottom, 2: mixed
int r3_role(const FaceSide& s) {
  bool a = over_slot(s.from.slot), b = over_slot(s.to.slot);
  if (a && b) return 0;
  if (!a && !b) return 1;
  return 2;
}

bool is_r3_triangle(const Face& f) {
  if (f.size() != 3) return false;
  int x0 = f[0].from.crossing, x1 = f[1].from.crossing, x2 = f[2].from.crossing;
  if (x0 == x1 || x1 == x2 || x0 == x2) return false;
  if (f[0].edge == f[1].edge || f[1].edge == f[2].edge || f[0].edge == f[2].edge) return false;
  int count[3] = {0, 0, 0};
  for (const auto& s : f) ++count[r3_role(s)];
  return count[0] == 1 && count[1] == 1 && count[2] == 1;
}

}  // namespace

MarkedDiagram apply_r1(const MarkedDiagram& d, int edge, int sign, Side side) {
  if (edge < 0 || edge >= d.edge_count()) throw MoveError("no arc " + std::to_string(edge));
  if (sign != 1 && sign != -1) throw MoveError("kink sign must be +1 or -1");
  RawDiagram r = RawDiagram::from(d);
  Port T = r.edges[edge].tail, H = r.edges[edge].head;
  r.edges[edge].alive = false;
  int sb = side == Side::Right ? 1 : 3;
  int x = r.add_crossing(1);
  r.add_edge(T, {x, 0}, {edge, 0});
  r.add_edge({x, 2}, {x, sb}, {edge, 1});
  r.add_edge({x, mod4(sb + 2)}, H, {edge, 2});
  if (r.sign(x) != sign) r.crossings[x].over_parity = 0;
  return normalize_by_rank(r);
}

MarkedDiagram apply_r1_loop(const MarkedDiagram& d, int sign, Side side) {
  if (d.loop_count() == 0) throw MoveError("no free loop");
  if (sign != 1 && sign != -1) throw MoveError("kink sign must be +1 or -1");
  RawDiagram r = RawDiagram::from(d);
  r.loops -= 1;
  int sb = side == Side::Right ? 1 : 3;
  int x = r.add_crossing(1);
  int big = d.edge_count();
  r.add_edge({x, mod4(sb + 2)}, {x, 0}, {big, 0});
  r.add_edge({x, 2}, {x, sb}, {big, 1});
  if (r.sign(x) != sign) r.crossings[x].over_parity = 0;
  return normalize_by_rank(r);
}

MarkedDiagram undo_r1(const MarkedDiagram& d, int face) {
  auto fs = faces(d);
  const Face& f = face_at(fs, face);
  if (f.size() != 1) throw MoveError("face is not a monogon");
  RawDiagram r = RawDiagram::from(d);
  r.remove_crossings({f[0].from.crossing}, [](int, int s) { return mod4(s + 2); });
  return normalize_by_rank(r);
}

MarkedDiagram apply_r2(const MarkedDiagram& d, int face, int side_i, int side_j, bool i_over) {
  auto fs = faces(d);
  const Face& f = face_at(fs, face);
  const int n = static_cast<int>(f.size());
  if (side_i < 0 || side_j < 0 || side_i >= n || side_j >= n || side_i == side_j)
    throw MoveError("r2 needs two distinct sides of the face");
  const FaceSide& s1 = f[side_i];
  const FaceSide& s2 = f[side_j];
  if (s1.edge == s2.edge) throw MoveError("r2 needs two distinct arcs");
  RawDiagram r = RawDiagram::from(d);
  int e1 = s1.edge, e2 = s2.edge;
  bool fwd1 = r.edges[e1].tail == s1.from;
  bool fwd2 = r.edges[e2].tail == s2.from;
  r.edges[e1].alive = false;
  r.edges[e2].alive = false;
  int parity = i_over ? 0 : 1;
  int xl = r.add_crossing(parity);
  int xr = r.add_crossing(parity);
  Port U1 = s1.from, V1 = s1.to, U2 = s2.from, V2 = s2.to;
  if (fwd1) {
    r.add_edge(U1, {xl, 0}, {e1, 0});
    r.add_edge({xl, 2}, {xr, 2}, {e1, 1});
    r.add_edge({xr, 0}, V1, {e1, 2});
  } else {
    r.add_edge(V1, {xr, 0}, {e1, 0});
    r.add_edge({xr, 2}, {xl, 2}, {e1, 1});
    r.add_edge({xl, 0}, U1, {e1, 2});
  }
  if (fwd2) {
    r.add_edge(U2, {xr, 1}, {e2, 0});
    r.add_edge({xr, 3}, {xl, 1}, {e2, 1});
    r.add_edge({xl, 3}, V2, {e2, 2});
  } else {
    r.add_edge(V2, {xl, 3}, {e2, 0});
    r.add_edge({xl, 1}, {xr, 3}, {e2, 1});
    r.add_edge({xr, 1}, U2, {e2, 2});
  }
  return normalize_by_rank(r);
}

MarkedDiagram undo_r2(const MarkedDiagram& d, int face) {
  auto fs = faces(d);
  const Face& f = face_at(fs, face);
  if (!is_r2_bigon(f)) throw MoveError("face is not a removable bigon");
  RawDiagram r = RawDiagram::from(d);
  r.remove_crossings({f[0].from.crossing, f[0].to.crossing}, [](int, int s) { return mod4(s + 2); });
  return normalize_by_rank(r);
}

MarkedDiagram apply_r3(const MarkedDiagram& d, int face) {
  auto fs = faces(d);
  const Face& f = face_at(fs, face);
  if (!is_r3_triangle(f)) throw MoveError("face is not an r3 triangle");
  RawDiagram r = RawDiagram::from(d);
  // each strand's outer arcs trade their attachment points
  std::map<Port, Port> remap;
  for (const auto& s : f) {
    Port a{s.from.crossing, mod4(s.from.slot + 2)};
    Port b{s.to.crossing, mod4(s.to.slot + 2)};
    remap[a] = b;
    remap[b] = a;
  }
  auto moved = [&](Port p) {
    auto it = remap.find(p);
    return it == remap.end() ? p : it->second;
  };
  for (auto& e : r.edges) {
    e.tail = moved(e.tail);
    e.head = moved(e.head);
  }
  for (const auto& s : f) r.reverse_edge(s.edge);
  for (int e = 0; e < static_cast<int>(r.edges.size()); ++e) {
    r.crossings[r.edges[e].tail.crossing].edge[r.edges[e].tail.slot] = e;
    r.crossings[r.edges[e].head.crossing].edge[r.edges[e].head.slot] = e;
  }
  return normalize_by_rank(r);
}

std::vector<int> r1_undo_sites(const MarkedDiagram& d) {
  std::vector<int> out;
  auto fs = faces(d);
  for (int i = 0; i < static_cast<int>(fs.size()); ++i)
    if (fs[i].size() == 1) out.push_back(i);
  return out;
}

std::vector<int> r2_undo_sites(const MarkedDiagram& d) {
  std::vector<int> out;
  auto fs = faces(d);
  for (int i = 0; i < static_cast<int>(fs.size()); ++i)
    if (is_r2_bigon(fs[i])) out.push_back(i);
  return out;
}

std::vector<int> r3_sites(const MarkedDiagram& d) {
  std::vector<int> out;
  auto fs = faces(d);
  for (int i = 0; i < static_cast<int>(fs.size()); ++i)
    if (is_r3_triangle(fs[i])) out.push_back(i);
  return out;
}

}  // namespace multiskein
