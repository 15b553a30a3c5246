#pragma once

#include <string>
#include <vector>

#include "multiskein/diagram.hpp"

namespace multiskein {

enum class Locality { SameComponent, DifferentComponents };

struct CrossingPattern {
  int sign = 1;
  Locality locality = Locality::SameComponent;
  friend bool operator==(const CrossingPattern&, const CrossingPattern&) = default;
};

enum class SmoothingKind { Eplus, Eminus, E, W, HC, HT, VC, VT, S, N };

std::string to_string(SmoothingKind k);
std::string to_string(const CrossingPattern& p);

// Deliberate convention errors, used only to check that the test suites notice them.
enum class SmoothingFault { None, SwapHcHt, VerticalAsHorizontal };

// Slots of crossing p in its local frame: both strands exit eastward, the
// strands run SW->NE and NW->SE.
struct LocalFrame {
  int nw, sw, se, ne;
};
LocalFrame local_frame(const MarkedDiagram& d, int p);

CrossingPattern classify(const MarkedDiagram& d, int p);
bool admissible(const CrossingPattern& pattern, SmoothingKind kind);
int smoothing_component_delta(const CrossingPattern& pattern, SmoothingKind kind);

// Deletes p, reconnects and reorients per the kind. The result is re-marked:
// components by first appearance in d's traversal, base point on the first arc.
// crossing_map, if given, receives old crossing id -> new id (-1 for p).
MarkedDiagram smooth(const MarkedDiagram& d, int p, SmoothingKind kind,
                     SmoothingFault fault = SmoothingFault::None, std::vector<int>* crossing_map = nullptr);

// Arcs of the circuit leaving p at NE (resp. SE) up to its return to p.
std::vector<int> path_from_ne(const MarkedDiagram& d, int p);
std::vector<int> path_from_se(const MarkedDiagram& d, int p);

}  // namespace multiskein
