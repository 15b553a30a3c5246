#include "multiskein/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "multiskein/raw_diagram.hpp"

namespace multiskein {

class DiagramAccess {
 public:
  static MarkedDiagram build(const RawDiagram& raw, const std::vector<int>& bases, std::vector<int>* crossing_map);
};

namespace {

int mod4(int s) { return ((s % 4) + 4) % 4; }

// Union-find over crossings for connected pieces.
struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void join(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

int MarkedDiagram::next_edge(int e) const {
  int k = edge_comp_.at(e);
  int n = e + 1;
  return n == comp_start_[k + 1] ? comp_start_[k] : n;
}

std::vector<int> MarkedDiagram::key() const {
  std::vector<int> k;
  k.reserve(4 * x_.size() + comp_start_.size() + 2);
  k.push_back(static_cast<int>(x_.size()));
  for (const auto& c : x_) k.insert(k.end(), c.begin(), c.end());
  k.insert(k.end(), comp_start_.begin(), comp_start_.end());
  k.push_back(loops_);
  return k;
}

std::size_t VecHash::operator()(const std::vector<int>& v) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : v) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(x)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// raw diagrams

RawDiagram RawDiagram::from(const MarkedDiagram& d) {
  RawDiagram r;
  r.loops = d.loop_count();
  r.crossings.resize(d.crossing_count());
  for (int x = 0; x < d.crossing_count(); ++x) {
    r.crossings[x].edge = d.crossing(x);
    r.crossings[x].over_parity = 1;
  }
  r.edges.resize(d.edge_count());
  for (int e = 0; e < d.edge_count(); ++e) {
    r.edges[e].tail = d.tail(e);
    r.edges[e].head = d.head(e);
    r.edges[e].rank = {e, 0};
  }
  return r;
}

int RawDiagram::add_crossing(int over_parity) {
  RawCrossing c;
  c.over_parity = over_parity;
  crossings.push_back(c);
  return static_cast<int>(crossings.size()) - 1;
}

int RawDiagram::add_edge(Port tail, Port head, std::pair<int, int> rank) {
  RawEdge e;
  e.tail = tail;
  e.head = head;
  e.rank = rank;
  edges.push_back(e);
  int id = static_cast<int>(edges.size()) - 1;
  if (tail.crossing >= 0) crossings[tail.crossing].edge[tail.slot] = id;
  if (head.crossing >= 0) crossings[head.crossing].edge[head.slot] = id;
  return id;
}

int RawDiagram::sign(int x) const {
  int op = crossings[x].over_parity;
  int u_in = is_head({x, mod4(op + 1)}) ? mod4(op + 1) : mod4(op + 3);
  int o_in = is_head({x, op}) ? op : mod4(op + 2);
  return o_in == mod4(u_in + 1) ? 1 : -1;
}

void RawDiagram::remove_crossings(const std::vector<int>& xs, const std::function<int(int, int)>& pairing) {
  std::vector<char> dead(crossings.size(), 0);
  for (int x : xs) dead[x] = 1;
  std::vector<char> used(edges.size(), 0);

  auto touches_dead = [&](int e) {
    return (edges[e].tail.crossing >= 0 && dead[edges[e].tail.crossing]) ||
           (edges[e].head.crossing >= 0 && dead[edges[e].head.crossing]);
  };

  std::vector<int> old_edges;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    if (edges[e].alive && touches_dead(e)) old_edges.push_back(e);

  struct NewEdge {
    Port tail, head;
    std::pair<int, int> rank;
  };
  std::vector<NewEdge> made;

  for (int x = 0; x < static_cast<int>(crossings.size()); ++x) {
    if (!crossings[x].alive || dead[x]) continue;
    for (int s = 0; s < 4; ++s) {
      Port start{x, s};
      int e = edge_at(start);
      if (used[e] || !touches_dead(e)) continue;
      bool forward = edges[e].tail == start;
      Port q = other_end(e, start);
      auto rank = edges[e].rank;
      used[e] = 1;
      while (dead[q.crossing]) {
        // arriving at q; leave through its paired slot
        if ((edges[e].head == q) != forward) throw MoveError("orientation mismatch along reconnected strand");
        Port out{q.crossing, pairing(q.crossing, q.slot)};
        e = edge_at(out);
        if ((edges[e].tail == out) != forward) throw MoveError("orientation mismatch along reconnected strand");
        used[e] = 1;
        rank = std::min(rank, edges[e].rank);
        q = other_end(e, out);
      }
      if ((edges[e].head == q) != forward) throw MoveError("orientation mismatch along reconnected strand");
      made.push_back(forward ? NewEdge{start, q, rank} : NewEdge{q, start, rank});
    }
  }
  // each chain between live ports is found from both ends; keep one copy
  std::sort(made.begin(), made.end(), [](const NewEdge& a, const NewEdge& b) {
    return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
  });
  made.erase(std::unique(made.begin(), made.end(),
                         [](const NewEdge& a, const NewEdge& b) { return a.tail == b.tail && a.head == b.head; }),
             made.end());

  // closed chains entirely inside the removed crossings
  for (int e0 : old_edges) {
    if (used[e0]) continue;
    int e = e0;
    Port q = edges[e].head;
    do {
      used[e] = 1;
      Port out{q.crossing, pairing(q.crossing, q.slot)};
      e = edge_at(out);
      if (edges[e].tail != out) throw MoveError("orientation mismatch along reconnected loop");
      q = edges[e].head;
    } while (e != e0);
    ++loops;
  }

  for (int e : old_edges) edges[e].alive = false;
  for (int x : xs) crossings[x].alive = false;
  for (const auto& ne : made) add_edge(ne.tail, ne.head, ne.rank);
}

// ---------------------------------------------------------------------------
// canonical relabeling

MarkedDiagram DiagramAccess::build(const RawDiagram& raw, const std::vector<int>& bases,
                                   std::vector<int>* crossing_map) {
  MarkedDiagram d;
  const int ne = static_cast<int>(raw.edges.size());
  const int nx = static_cast<int>(raw.crossings.size());
  std::vector<int> new_edge(ne, -1);
  std::vector<int> new_x(nx, -1);
  std::vector<int> order;  // raw crossing ids by new id
  int next = 0;
  for (int base : bases) {
    if (base < 0 || base >= ne || !raw.edges[base].alive) throw DiagramError("base point on a missing arc");
    if (new_edge[base] >= 0) throw DiagramError("two base points on one component");
    int e = base;
    do {
      new_edge[e] = next++;
      Port h = raw.edges[e].head;
      if (h.crossing < 0 || !raw.crossings[h.crossing].alive) throw DiagramError("arc ends at a missing crossing");
      if (new_x[h.crossing] < 0) {
        new_x[h.crossing] = static_cast<int>(order.size());
        order.push_back(h.crossing);
      }
      Port out{h.crossing, mod4(h.slot + 2)};
      int n = raw.edge_at(out);
      if (raw.edges[n].tail != out) throw DiagramError("orientation inconsistency at a crossing");
      e = n;
      if (e != base && new_edge[e] >= 0) throw DiagramError("component walk does not close");
    } while (e != base);
    d.comp_start_.push_back(next);
  }
  for (int e = 0; e < ne; ++e)
    if (raw.edges[e].alive && new_edge[e] < 0) throw DiagramError("component without base point");
  for (int x = 0; x < nx; ++x)
    if (raw.crossings[x].alive && new_x[x] < 0) throw DiagramError("crossing not reached by any component");

  d.x_.resize(order.size());
  d.over_in_.resize(order.size());
  d.head_.resize(next);
  d.tail_.resize(next);
  d.edge_comp_.resize(next);
  for (std::size_t k = 0; k + 1 < d.comp_start_.size(); ++k)
    for (int e = d.comp_start_[k]; e < d.comp_start_[k + 1]; ++e) d.edge_comp_[e] = static_cast<int>(k);

  for (int X = 0; X < static_cast<int>(order.size()); ++X) {
    int x = order[X];
    const auto& rc = raw.crossings[x];
    int u1 = mod4(rc.over_parity + 1), u2 = mod4(rc.over_parity + 3);
    bool h1 = raw.is_head({x, u1}), h2 = raw.is_head({x, u2});
    if (h1 == h2) throw DiagramError("under-strand orientation inconsistent");
    bool o1 = raw.is_head({x, rc.over_parity}), o2 = raw.is_head({x, mod4(rc.over_parity + 2)});
    if (o1 == o2) throw DiagramError("over-strand orientation inconsistent");
    int u_in = h1 ? u1 : u2;
    for (int k = 0; k < 4; ++k) {
      int re = rc.edge[mod4(u_in + k)];
      int e = new_edge[re];
      d.x_[X][k] = e;
      Port p{X, k};
      if (raw.edges[re].head == Port{x, mod4(u_in + k)}) {
        d.head_[e] = p;
      } else {
        d.tail_[e] = p;
      }
    }
    d.over_in_[X] = d.head_[d.x_[X][1]] == Port{X, 1} ? 1 : 3;
  }
  d.loops_ = raw.loops;
  if (crossing_map) *crossing_map = new_x;
  validate(d);
  return d;
}

MarkedDiagram normalize(const RawDiagram& raw, const std::vector<int>& bases, std::vector<int>* crossing_map) {
  return DiagramAccess::build(raw, bases, crossing_map);
}

MarkedDiagram normalize_by_rank(const RawDiagram& raw, std::vector<int>* crossing_map) {
  const int ne = static_cast<int>(raw.edges.size());
  std::vector<char> seen(ne, 0);
  std::vector<std::pair<std::pair<std::pair<int, int>, int>, int>> comps;  // ((rank, id), base)
  for (int e0 = 0; e0 < ne; ++e0) {
    if (!raw.edges[e0].alive || seen[e0]) continue;
    auto best = std::make_pair(raw.edges[e0].rank, e0);
    int e = e0;
    do {
      seen[e] = 1;
      best = std::min(best, std::make_pair(raw.edges[e].rank, e));
      Port h = raw.edges[e].head;
      e = raw.edge_at({h.crossing, mod4(h.slot + 2)});
    } while (e != e0 && !seen[e]);
    comps.push_back({best, best.second});
  }
  std::sort(comps.begin(), comps.end());
  std::vector<int> bases;
  for (const auto& c : comps) bases.push_back(c.second);
  return normalize(raw, bases, crossing_map);
}

// ---------------------------------------------------------------------------
// validation and faces

std::vector<Face> faces(const MarkedDiagram& d) {
  const int nx = d.crossing_count();
  std::vector<char> seen(4 * nx, 0);
  std::vector<Face> out;
  for (int x = 0; x < nx; ++x) {
    for (int s = 0; s < 4; ++s) {
      if (seen[4 * x + s]) continue;
      Face f;
      Port p{x, s};
      while (!seen[4 * p.crossing + p.slot]) {
        seen[4 * p.crossing + p.slot] = 1;
        int e = d.edge_at(p);
        Port q = d.tail(e) == p ? d.head(e) : d.tail(e);
        f.push_back({e, p, q});
        p = {q.crossing, mod4(q.slot + 3)};
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

void validate(const MarkedDiagram& d) {
  const int nx = d.crossing_count();
  const int ne = d.edge_count();
  if (ne != 2 * nx) throw DiagramError("arc count must be twice the crossing count");
  std::vector<int> uses(ne, 0);
  for (int x = 0; x < nx; ++x) {
    for (int s = 0; s < 4; ++s) {
      int e = d.crossing(x)[s];
      if (e < 0 || e >= ne) throw DiagramError("dangling half-edge");
      ++uses[e];
      Port p{x, s};
      if (!(d.head(e) == p) && !(d.tail(e) == p)) throw DiagramError("half-edge mate mismatch");
    }
    if (!d.is_head({x, 0}) || d.is_head({x, 2})) throw DiagramError("under-strand orientation inconsistent");
    if (d.is_head({x, 1}) == d.is_head({x, 3})) throw DiagramError("over-strand orientation inconsistent");
  }
  for (int e = 0; e < ne; ++e) {
    if (uses[e] != 2) throw DiagramError("arc not used exactly twice");
    Port h = d.head(e);
    if (d.edge_at({h.crossing, mod4(h.slot + 2)}) != d.next_edge(e)) throw DiagramError("traversal order broken");
  }
  // Euler characteristic per connected piece
  if (nx == 0) return;
  Dsu dsu(nx);
  for (int e = 0; e < ne; ++e) dsu.join(d.head(e).crossing, d.tail(e).crossing);
  std::vector<int> v(nx, 0), edges(nx, 0), f(nx, 0);
  for (int x = 0; x < nx; ++x) ++v[dsu.find(x)];
  for (int e = 0; e < ne; ++e) ++edges[dsu.find(d.head(e).crossing)];
  for (const auto& face : faces(d)) ++f[dsu.find(face.front().from.crossing)];
  for (int x = 0; x < nx; ++x) {
    if (dsu.find(x) != x) continue;
    if (v[x] - edges[x] + f[x] != 2) throw DiagramError("Euler check failed: diagram is not planar");
  }
}

// ---------------------------------------------------------------------------
// signs, traversal, marking

int crossing_sign(const MarkedDiagram& d, int p) {
  if (p < 0 || p >= d.crossing_count()) throw DiagramError("unknown crossing " + std::to_string(p));
  return d.over_in_slot(p) == 1 ? 1 : -1;
}

int writhe(const MarkedDiagram& d) {
  int w = 0;
  for (int x = 0; x < d.crossing_count(); ++x) w += crossing_sign(d, x);
  return w;
}

std::vector<Visit> traversal(const MarkedDiagram& d) {
  std::vector<Visit> out;
  out.reserve(d.edge_count());
  for (int e = 0; e < d.edge_count(); ++e) {
    Port h = d.head(e);
    out.push_back({h.crossing, h.slot == 0 ? Strand::Under : Strand::Over, d.component_of_edge(e), e});
  }
  return out;
}

std::vector<int> bad_points(const MarkedDiagram& d) {
  std::vector<char> seen(d.crossing_count(), 0);
  std::vector<int> bad;
  for (int e = 0; e < d.edge_count(); ++e) {
    Port h = d.head(e);
    if (seen[h.crossing]) continue;
    seen[h.crossing] = 1;
    if (h.slot != 0) bad.push_back(h.crossing);
  }
  return bad;
}

Index index_of(const MarkedDiagram& d) {
  return {d.crossing_count(), static_cast<int>(bad_points(d).size())};
}

std::array<int, 2> strand_components(const MarkedDiagram& d, int p) {
  if (p < 0 || p >= d.crossing_count()) throw DiagramError("unknown crossing " + std::to_string(p));
  return {d.component_of_edge(d.crossing(p)[0]), d.component_of_edge(d.crossing(p)[1])};
}

namespace {

std::vector<int> current_bases(const MarkedDiagram& d) {
  std::vector<int> b;
  for (int k = 0; k < d.strand_component_count(); ++k) b.push_back(d.component_begin(k));
  return b;
}

}  // namespace

MarkedDiagram switch_crossing(const MarkedDiagram& d, int p, std::vector<int>* crossing_map) {
  if (p < 0 || p >= d.crossing_count()) throw DiagramError("unknown crossing " + std::to_string(p));
  RawDiagram r = RawDiagram::from(d);
  r.crossings[p].over_parity = 0;
  return normalize(r, current_bases(d), crossing_map);
}

MarkedDiagram mirror(const MarkedDiagram& d) {
  RawDiagram r = RawDiagram::from(d);
  for (auto& c : r.crossings) c.over_parity = 0;
  return normalize(r, current_bases(d));
}

MarkedDiagram move_basepoint(const MarkedDiagram& d, int component, int position) {
  if (component < 0 || component >= d.component_count()) throw DiagramError("invalid component");
  if (component >= d.strand_component_count()) {
    if (position != 0) throw DiagramError("a free loop has a single arc position");
    return d;
  }
  if (position < 0 || position >= d.component_size(component)) throw DiagramError("invalid arc position");
  auto bases = current_bases(d);
  bases[component] += position;
  return normalize(RawDiagram::from(d), bases);
}

MarkedDiagram reorder_components(const MarkedDiagram& d, const std::vector<int>& perm) {
  const int m = d.component_count();
  if (static_cast<int>(perm.size()) != m) throw DiagramError("permutation size mismatch");
  std::vector<char> hit(m, 0);
  for (int k : perm) {
    if (k < 0 || k >= m || hit[k]) throw DiagramError("not a permutation");
    hit[k] = 1;
  }
  auto old = current_bases(d);
  std::vector<int> bases;
  for (int k : perm)
    if (k < d.strand_component_count()) bases.push_back(old[k]);
  return normalize(RawDiagram::from(d), bases);
}

MarkedDiagram reverse_component(const MarkedDiagram& d, int component) {
  if (component < 0 || component >= d.component_count()) throw DiagramError("invalid component");
  if (component >= d.strand_component_count()) return d;
  RawDiagram r = RawDiagram::from(d);
  for (int e = d.component_begin(component); e < d.component_end(component); ++e) r.reverse_edge(e);
  return normalize(r, current_bases(d));
}

// ---------------------------------------------------------------------------
// canonical form under change of marking

namespace {

struct PieceCode {
  std::vector<int> code;
  std::vector<int> bases;  // canonical-input edge ids
};

// Relabeling code of the piece containing e0 when marked from e0, further
// components in order of discovery with base on the first arc met.
PieceCode code_from(const MarkedDiagram& d, int e0, std::vector<int>& new_edge, std::vector<int>& new_x,
                    std::vector<int>& comp_seen, int stamp) {
  PieceCode pc;
  std::vector<int> queue{e0};
  std::vector<int> xorder;
  std::vector<int> sizes;
  comp_seen[d.component_of_edge(e0)] = stamp;
  int next = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int base = queue[qi];
    int start = next;
    int e = base;
    do {
      new_edge[e] = next++;
      Port h = d.head(e);
      int x = h.crossing;
      if (new_x[x] < 0) {
        new_x[x] = static_cast<int>(xorder.size());
        xorder.push_back(x);
      }
      int other_out = h.slot % 2 == 0 ? (d.over_in_slot(x) == 1 ? 3 : 1) : 2;
      int oe = d.crossing(x)[other_out];
      int oc = d.component_of_edge(oe);
      if (comp_seen[oc] != stamp) {
        comp_seen[oc] = stamp;
        queue.push_back(oe);
      }
      e = d.next_edge(e);
    } while (e != base);
    sizes.push_back(next - start);
  }
  pc.code.reserve(4 * xorder.size() + sizes.size() + 1);
  pc.code.push_back(static_cast<int>(sizes.size()));
  pc.code.insert(pc.code.end(), sizes.begin(), sizes.end());
  for (int x : xorder)
    for (int s = 0; s < 4; ++s) pc.code.push_back(new_edge[d.crossing(x)[s]]);
  pc.bases = queue;
  for (int x : xorder) new_x[x] = -1;
  return pc;
}

}  // namespace

MarkedDiagram canonical_form(const MarkedDiagram& d) {
  const int ne = d.edge_count();
  if (ne == 0) return d;
  std::vector<int> new_edge(ne, -1), new_x(d.crossing_count(), -1);
  std::vector<int> comp_seen(d.strand_component_count(), -1);
  std::vector<int> piece_of(d.strand_component_count(), -1);
  std::vector<PieceCode> pieces;
  int stamp = 0;
  for (int e0 = 0; e0 < ne; ++e0) {
    int comp = d.component_of_edge(e0);
    PieceCode pc = code_from(d, e0, new_edge, new_x, comp_seen, stamp++);
    int& slot = piece_of[comp];
    if (slot < 0) {
      // first time this piece is seen: register it for all its components
      slot = static_cast<int>(pieces.size());
      for (int b : pc.bases) piece_of[d.component_of_edge(b)] = slot;
      pieces.push_back(std::move(pc));
    } else if (pc.code < pieces[slot].code) {
      pieces[slot] = std::move(pc);
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const PieceCode& a, const PieceCode& b) { return a.code < b.code; });
  std::vector<int> bases;
  for (const auto& p : pieces) bases.insert(bases.end(), p.bases.begin(), p.bases.end());
  return normalize(RawDiagram::from(d), bases);
}

std::vector<int> canonical_key(const MarkedDiagram& d) { return canonical_form(d).key(); }

}  // namespace multiskein
