#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>

#include "multiskein/diagram.hpp"
#include "multiskein/raw_diagram.hpp"

namespace multiskein {

namespace {

int mod4(int s) { return ((s % 4) + 4) % 4; }

struct PdInput {
  std::vector<std::array<long long, 4>> crossings;
  int loops = 0;
};

PdInput scan_pd(const std::string& text) {
  PdInput in;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c)
      throw DiagramError(std::string("PD parse error: expected '") + c + "' at offset " + std::to_string(i));
    ++i;
  };
  auto number = [&]() -> long long {
    skip();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw DiagramError("PD parse error: expected arc label at offset " + std::to_string(start));
    if (i - start > 12) throw DiagramError("PD parse error: arc label too large");
    long long v = std::stoll(text.substr(start, i - start));
    if (v <= 0) throw DiagramError("PD parse error: arc labels must be positive");
    return v;
  };
  skip();
  bool wrapped = false;
  if (text.compare(i, 3, "PD[") == 0) {
    wrapped = true;
    i += 3;
  }
  for (;;) {
    skip();
    if (i >= text.size()) break;
    if (wrapped && text[i] == ']') {
      ++i;
      wrapped = false;
      skip();
      if (i != text.size()) throw DiagramError("PD parse error: trailing input after ']'");
      break;
    }
    if (text[i] == 'O') {
      ++i;
      ++in.loops;
      continue;
    }
    if (text[i] == 'X') {
      ++i;
      expect('[');
      std::array<long long, 4> x{};
      for (int k = 0; k < 4; ++k) x[k] = number();
      expect(']');
      in.crossings.push_back(x);
      continue;
    }
    throw DiagramError("PD parse error: unexpected '" + std::string(1, text[i]) + "' at offset " + std::to_string(i));
  }
  if (wrapped) throw DiagramError("PD parse error: missing closing ']'");
  if (in.crossings.empty() && in.loops == 0) throw DiagramError("PD parse error: empty diagram");
  return in;
}

struct BuiltPd {
  RawDiagram raw;
  std::map<long long, int> edge_of_label;
};

// Orientation inference: under-strand slots fix their arcs; the over strand
// at each crossing must enter on one side and leave on the other.
BuiltPd build_raw(const PdInput& in) {
  BuiltPd out;
  const int nx = static_cast<int>(in.crossings.size());
  std::map<long long, std::vector<Port>> ports;
  for (int x = 0; x < nx; ++x)
    for (int s = 0; s < 4; ++s) ports[in.crossings[x][s]].push_back({x, s});
  std::vector<long long> labels;
  for (const auto& [label, ps] : ports) {
    if (ps.size() != 2)
      throw DiagramError("arc label " + std::to_string(label) + " appears " + std::to_string(ps.size()) +
                         " time(s); each label must appear exactly twice");
    out.edge_of_label[label] = static_cast<int>(labels.size());
    labels.push_back(label);
  }
  const int ne = static_cast<int>(labels.size());
  std::vector<std::array<Port, 2>> eports(ne);
  for (int e = 0; e < ne; ++e) eports[e] = {ports[labels[e]][0], ports[labels[e]][1]};
  auto edge_at = [&](Port p) { return out.edge_of_label[in.crossings[p.crossing][p.slot]]; };

  std::vector<int> head_idx(ne, -1);  // which of eports[e] is the head
  std::deque<int> work;
  auto force = [&](int e, Port head) {
    int idx = eports[e][0] == head ? 0 : 1;
    if (head_idx[e] == idx) return;
    if (head_idx[e] >= 0)
      throw DiagramError("orientation inconsistency: arc " + std::to_string(labels[e]) + " forced both ways");
    head_idx[e] = idx;
    work.push_back(e);
  };
  auto other = [&](int e, Port p) { return eports[e][0] == p ? eports[e][1] : eports[e][0]; };

  for (int e = 0; e < ne; ++e) {
    for (const Port& p : eports[e]) {
      if (p.slot == 0) force(e, p);
      if (p.slot == 2) force(e, other(e, p));
    }
  }
  auto propagate = [&] {
    while (!work.empty()) {
      int e = work.front();
      work.pop_front();
      Port h = eports[e][head_idx[e]];
      Port t = eports[e][1 - head_idx[e]];
      // continue through the same strand at both ends
      Port out_h{h.crossing, mod4(h.slot + 2)};
      force(edge_at(out_h), other(edge_at(out_h), out_h));
      Port in_t{t.crossing, mod4(t.slot + 2)};
      force(edge_at(in_t), in_t);
    }
  };
  propagate();
  // components passing over at every crossing: labels increase along the orientation
  for (int e = 0; e < ne; ++e) {
    if (head_idx[e] >= 0) continue;
    long long L = labels[e];
    int best = -1;
    long long best_label = 0;
    for (int k = 0; k < 2; ++k) {
      Port p = eports[e][k];
      long long cont = labels[edge_at({p.crossing, mod4(p.slot + 2)})];
      bool better;
      if (best < 0) {
        better = true;
      } else if ((cont > L) != (best_label > L)) {
        better = cont > L;
      } else if (cont != best_label) {
        better = cont < best_label;
      } else {
        better = p < eports[e][best];  // two-arc circle: point into the first listed crossing
      }
      if (better) {
        best = k;
        best_label = cont;
      }
    }
    force(e, eports[e][best]);
    propagate();
  }

  RawDiagram& raw = out.raw;
  raw.loops = in.loops;
  raw.crossings.resize(nx);
  for (auto& c : raw.crossings) c.over_parity = 1;
  raw.edges.resize(ne);
  for (int e = 0; e < ne; ++e) {
    raw.edges[e].head = eports[e][head_idx[e]];
    raw.edges[e].tail = eports[e][1 - head_idx[e]];
    raw.edges[e].rank = {static_cast<int>(e), 0};
    for (const Port& p : eports[e]) raw.crossings[p.crossing].edge[p.slot] = e;
  }
  return out;
}

}  // namespace

MarkedDiagram parse_pd(const std::string& text) {
  BuiltPd b = build_raw(scan_pd(text));
  return normalize_by_rank(b.raw);
}

MarkedDiagram parse_diagram_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DiagramError("diagram JSON must be an object");
  PdInput in;
  try {
    if (j.contains("crossings")) {
      for (const auto& x : j.at("crossings")) {
        if (!x.is_array() || x.size() != 4) throw DiagramError("each crossing must list four arc labels");
        std::array<long long, 4> c{};
        for (int k = 0; k < 4; ++k) {
          c[k] = x[k].get<long long>();
          if (c[k] <= 0) throw DiagramError("arc labels must be positive");
        }
        in.crossings.push_back(c);
      }
    }
    in.loops = j.value("loops", 0);
  } catch (const nlohmann::json::exception& e) {
    throw DiagramError(std::string("diagram JSON: ") + e.what());
  }
  if (in.loops < 0) throw DiagramError("loops must be non-negative");
  if (in.crossings.empty() && in.loops == 0) throw DiagramError("empty diagram");
  BuiltPd b = build_raw(in);
  if (!j.contains("order") && !j.contains("basepoints")) return normalize_by_rank(b.raw);

  auto edge_of = [&](long long label) {
    auto it = b.edge_of_label.find(label);
    if (it == b.edge_of_label.end()) throw DiagramError("unknown arc label " + std::to_string(label));
    return it->second;
  };
  // component id of each raw edge
  const int ne = static_cast<int>(b.raw.edges.size());
  std::vector<int> comp(ne, -1);
  std::vector<int> comp_min;  // smallest-label edge per component
  for (int e0 = 0; e0 < ne; ++e0) {
    if (comp[e0] >= 0) continue;
    int id = static_cast<int>(comp_min.size());
    comp_min.push_back(e0);
    int e = e0;
    do {
      comp[e] = id;
      Port h = b.raw.edges[e].head;
      e = b.raw.edge_at({h.crossing, mod4(h.slot + 2)});
    } while (e != e0);
  }
  std::vector<int> order;
  try {
    if (j.contains("order")) {
      for (const auto& v : j.at("order")) {
        long long label = v.get<long long>();
        if (label == 0) continue;  // free loop placeholder
        order.push_back(comp[edge_of(label)]);
      }
    }
    std::vector<int> bases;
    if (j.contains("basepoints")) {
      std::vector<int> bp;
      for (const auto& v : j.at("basepoints")) {
        long long label = v.get<long long>();
        if (label == 0) continue;
        bp.push_back(edge_of(label));
      }
      if (order.empty()) {
        bases = bp;
      } else {
        if (bp.size() != order.size()) throw DiagramError("basepoints and order differ in length");
        for (std::size_t k = 0; k < order.size(); ++k) {
          if (comp[bp[k]] != order[k]) throw DiagramError("base point not on its component");
          bases.push_back(bp[k]);
        }
      }
    } else {
      for (int c : order) bases.push_back(comp_min[c]);
    }
    if (bases.size() != comp_min.size()) throw DiagramError("marking must name every component exactly once");
    return normalize(b.raw, bases);
  } catch (const nlohmann::json::exception& e) {
    throw DiagramError(std::string("diagram JSON: ") + e.what());
  }
}

namespace {

// Crossing output order: canonical, except that a two-arc component passing
// over at both of its crossings has its first arc point into the first listed one.
std::vector<int> output_order(const MarkedDiagram& d) {
  std::vector<int> pos(d.crossing_count());
  for (int x = 0; x < d.crossing_count(); ++x) pos[x] = x;
  for (int k = 0; k < d.strand_component_count(); ++k) {
    if (d.component_size(k) != 2) continue;
    int e = d.component_begin(k);
    Port h = d.head(e), t = d.tail(e);
    if (h.slot == 0 || d.head(e + 1).slot == 0) continue;
    if (pos[h.crossing] > pos[t.crossing]) std::swap(pos[h.crossing], pos[t.crossing]);
  }
  std::vector<int> order(d.crossing_count());
  for (int x = 0; x < d.crossing_count(); ++x) order[pos[x]] = x;
  return order;
}

}  // namespace

std::string to_pd(const MarkedDiagram& d) {
  std::string s;
  for (int x : output_order(d)) {
    if (!s.empty()) s += " ";
    const auto& c = d.crossing(x);
    s += "X[" + std::to_string(c[0] + 1) + "," + std::to_string(c[1] + 1) + "," + std::to_string(c[2] + 1) + "," +
         std::to_string(c[3] + 1) + "]";
  }
  for (int i = 0; i < d.loop_count(); ++i) s += s.empty() ? "O" : " O";
  return s;
}

nlohmann::json to_json(const MarkedDiagram& d) {
  nlohmann::json xs = nlohmann::json::array();
  for (int x : output_order(d)) {
    const auto& c = d.crossing(x);
    xs.push_back({c[0] + 1, c[1] + 1, c[2] + 1, c[3] + 1});
  }
  nlohmann::json order = nlohmann::json::array();
  for (int k = 0; k < d.strand_component_count(); ++k) order.push_back(d.component_begin(k) + 1);
  for (int i = 0; i < d.loop_count(); ++i) order.push_back(0);
  return {{"crossings", xs}, {"loops", d.loop_count()}, {"order", order}, {"basepoints", order}};
}

// ---------------------------------------------------------------------------

const std::vector<CensusEntry>& census() {
  static std::vector<CensusEntry> table;
  static std::once_flag once;
  std::call_once(once, [] {
    std::vector<CensusEntry> base = {
        {"unknot0", "O"},
        {"unknot1", "X[1,2,2,1]"},
        {"unknot1m", "X[1,1,2,2]"},
        {"unlink2", "O O"},
        {"unlink3", "O O O"},
        {"hopf+", "X[1,4,2,3] X[3,2,4,1]"},
        {"hopf-", "X[1,4,2,3] X[4,1,3,2]"},
        {"3_1r", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"},
        {"3_1l", "X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]"},
        {"4_1", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"},
        {"5_1", "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]"},
        {"5_2", "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]"},
        {"6_1", "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]"},
        {"6_2", "X[1,4,2,5] X[5,10,6,11] X[3,9,4,8] X[9,3,10,2] X[7,12,8,1] X[11,6,12,7]"},
        {"6_3", "X[4,2,5,1] X[8,4,9,3] X[12,9,1,10] X[10,5,11,6] X[6,11,7,12] X[2,8,3,7]"},
    };
    struct LinkSeed {
      const char* name;
      const char* pd;
    };
    const LinkSeed links[] = {
        {"L4a1", "X[6,1,7,2] X[8,3,5,4] X[2,5,3,6] X[4,7,1,8]"},
        {"whitehead", "X[6,1,7,2] X[10,7,5,8] X[4,5,1,6] X[2,10,3,9] X[8,4,9,3]"},
    };
    table = base;
    for (const auto& l : links) {
      MarkedDiagram d = parse_pd(l.pd);
      table.push_back({std::string(l.name) + "+", to_pd(d)});
      table.push_back({std::string(l.name) + "-", to_pd(reverse_component(d, 1))});
    }
  });
  return table;
}

MarkedDiagram census_diagram(const std::string& name) {
  for (const auto& e : census())
    if (e.name == name) return parse_pd(e.pd);
  throw DiagramError("no census diagram named '" + name + "'");
}

}  // namespace multiskein
