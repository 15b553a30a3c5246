#include "multiskein/smoothing.hpp"

#include "multiskein/raw_diagram.hpp"

namespace multiskein {

namespace {

int mod4(int s) { return ((s % 4) + 4) % 4; }

std::vector<int> path_from(const MarkedDiagram& d, int p, int slot) {
  std::vector<int> path;
  int e = d.edge_at({p, slot});
  for (;;) {
    path.push_back(e);
    if (d.head(e).crossing == p) return path;
    e = d.next_edge(e);
  }
}

bool horizontal(SmoothingKind k) {
  switch (k) {
    case SmoothingKind::E:
    case SmoothingKind::W:
    case SmoothingKind::HC:
    case SmoothingKind::HT:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string to_string(SmoothingKind k) {
  switch (k) {
    case SmoothingKind::Eplus: return "E+";
    case SmoothingKind::Eminus: return "E-";
    case SmoothingKind::E: return "E";
    case SmoothingKind::W: return "W";
    case SmoothingKind::HC: return "HC";
    case SmoothingKind::HT: return "HT";
    case SmoothingKind::VC: return "VC";
    case SmoothingKind::VT: return "VT";
    case SmoothingKind::S: return "S";
    case SmoothingKind::N: return "N";
  }
  return "?";
}

std::string to_string(const CrossingPattern& p) {
  return std::string(p.sign > 0 ? "+" : "-") +
         (p.locality == Locality::SameComponent ? ",same" : ",different");
}

LocalFrame local_frame(const MarkedDiagram& d, int p) {
  if (p < 0 || p >= d.crossing_count()) throw DiagramError("unknown crossing " + std::to_string(p));
  // incoming slots are 0 and over_in; they are adjacent and NW comes first counterclockwise
  int a = d.over_in_slot(p) == 1 ? 0 : 3;
  return {a, mod4(a + 1), mod4(a + 2), mod4(a + 3)};
}

std::vector<int> path_from_ne(const MarkedDiagram& d, int p) { return path_from(d, p, local_frame(d, p).ne); }
std::vector<int> path_from_se(const MarkedDiagram& d, int p) { return path_from(d, p, local_frame(d, p).se); }

CrossingPattern classify(const MarkedDiagram& d, int p) {
  auto comps = strand_components(d, p);
  return {crossing_sign(d, p), comps[0] == comps[1] ? Locality::SameComponent : Locality::DifferentComponents};
}

bool admissible(const CrossingPattern& pattern, SmoothingKind kind) {
  switch (kind) {
    case SmoothingKind::Eplus:
    case SmoothingKind::Eminus:
    case SmoothingKind::E:
    case SmoothingKind::W:
      return true;
    case SmoothingKind::HC:
    case SmoothingKind::HT:
    case SmoothingKind::VC:
    case SmoothingKind::VT:
      return pattern.locality == Locality::SameComponent;
    case SmoothingKind::S:
    case SmoothingKind::N:
      return pattern.locality == Locality::DifferentComponents;
  }
  return false;
}

int smoothing_component_delta(const CrossingPattern& pattern, SmoothingKind kind) {
  if (!admissible(pattern, kind) || kind == SmoothingKind::Eplus || kind == SmoothingKind::Eminus)
    throw MoveError("inadmissible smoothing " + to_string(kind) + " at a " + to_string(pattern) + " crossing");
  if (pattern.locality == Locality::DifferentComponents) return -1;
  return (kind == SmoothingKind::VC || kind == SmoothingKind::VT) ? 0 : 1;
}

MarkedDiagram smooth(const MarkedDiagram& d, int p, SmoothingKind kind, SmoothingFault fault,
                     std::vector<int>* crossing_map) {
  CrossingPattern pat = classify(d, p);
  if (kind == SmoothingKind::Eplus || kind == SmoothingKind::Eminus || !admissible(pat, kind))
    throw MoveError("inadmissible smoothing " + to_string(kind) + " at a " + to_string(pat) + " crossing");
  if (fault == SmoothingFault::SwapHcHt) {
    if (kind == SmoothingKind::HC) {
      kind = SmoothingKind::HT;
    } else if (kind == SmoothingKind::HT) {
      kind = SmoothingKind::HC;
    }
  } else if (fault == SmoothingFault::VerticalAsHorizontal) {
    if (kind == SmoothingKind::VC) {
      kind = SmoothingKind::HC;
    } else if (kind == SmoothingKind::VT) {
      kind = SmoothingKind::HT;
    }
  }
  LocalFrame f = local_frame(d, p);
  std::vector<int> ne = path_from(d, p, f.ne);
  std::vector<int> se = path_from(d, p, f.se);

  std::vector<const std::vector<int>*> reverse;
  switch (kind) {
    case SmoothingKind::W:
      reverse = {&ne, &se};
      break;
    case SmoothingKind::HC:  // southern circle
    case SmoothingKind::VT:
    case SmoothingKind::N:
      reverse = {&se};
      break;
    case SmoothingKind::HT:  // northern circle
    case SmoothingKind::VC:
    case SmoothingKind::S:
      reverse = {&ne};
      break;
    default:
      break;
  }
  RawDiagram r = RawDiagram::from(d);
  for (const auto* path : reverse)
    for (int e : *path) r.reverse_edge(e);
  int pair[4];
  if (horizontal(kind)) {
    pair[f.nw] = f.ne;
    pair[f.ne] = f.nw;
    pair[f.sw] = f.se;
    pair[f.se] = f.sw;
  } else {
    pair[f.nw] = f.sw;
    pair[f.sw] = f.nw;
    pair[f.ne] = f.se;
    pair[f.se] = f.ne;
  }
  r.remove_crossings({p}, [&](int, int s) { return pair[s]; });
  return normalize_by_rank(r, crossing_map);
}

}  // namespace multiskein
