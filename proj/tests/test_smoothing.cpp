#include <set>

#include "doctest.h"
#include "multiskein/diagram.hpp"
#include "multiskein/smoothing.hpp"

using namespace multiskein;

namespace {
const SmoothingKind kinds[] = {SmoothingKind::E,  SmoothingKind::W,  SmoothingKind::HC, SmoothingKind::HT,
                               SmoothingKind::VC, SmoothingKind::VT, SmoothingKind::S,  SmoothingKind::N};
}

TEST_CASE("admissible kinds per pattern") {
  CrossingPattern same{1, Locality::SameComponent};
  CrossingPattern diff{-1, Locality::DifferentComponents};
  int n_same = 0, n_diff = 0;
  for (auto k : kinds) {
    n_same += admissible(same, k);
    n_diff += admissible(diff, k);
  }
  CHECK(n_same == 6);  // plus the switch: seven terms
  CHECK(n_diff == 4);  // plus the switch: five terms
  CHECK_FALSE(admissible(same, SmoothingKind::S));
  CHECK_FALSE(admissible(diff, SmoothingKind::HC));
}

TEST_CASE("smoothing removes one crossing with the predicted component change") {
  for (const auto& e : census()) {
    auto d = census_diagram(e.name);
    for (int p = 0; p < d.crossing_count(); ++p) {
      auto pat = classify(d, p);
      for (auto k : kinds) {
        if (!admissible(pat, k)) continue;
        CAPTURE(e.name);
        CAPTURE(to_string(k));
        std::vector<int> map;
        auto s = smooth(d, p, k, SmoothingFault::None, &map);
        CHECK(s.crossing_count() == d.crossing_count() - 1);
        CHECK(s.component_count() - d.component_count() == smoothing_component_delta(pat, k));
        CHECK(map[p] == -1);
        validate(s);
      }
    }
  }
}

TEST_CASE("hopf link smoothings") {
  auto h = census_diagram("hopf+");
  CHECK(classify(h, 0) == CrossingPattern{1, Locality::DifferentComponents});
  auto e = smooth(h, 0, SmoothingKind::E);
  CHECK(e.component_count() == 1);
  CHECK(writhe(e) == 1);
  CHECK(to_pd(e) == "X[1,2,2,1]");
}

TEST_CASE("self-crossing: horizontal smoothings split, vertical ones do not") {
  auto t = census_diagram("3_1r");
  CHECK(classify(t, 0) == CrossingPattern{1, Locality::SameComponent});
  for (auto k : {SmoothingKind::E, SmoothingKind::W, SmoothingKind::HC, SmoothingKind::HT})
    CHECK(smooth(t, 0, k).component_count() == 2);
  for (auto k : {SmoothingKind::VC, SmoothingKind::VT}) CHECK(smooth(t, 0, k).component_count() == 1);
  auto h = census_diagram("hopf+");
  for (auto k : {SmoothingKind::E, SmoothingKind::W, SmoothingKind::S, SmoothingKind::N})
    CHECK(smooth(h, 0, k).component_count() == 1);
}

TEST_CASE("local frame and paths") {
  auto t = census_diagram("3_1r");
  auto f = local_frame(t, 0);
  std::set<int> slots{f.nw, f.sw, f.se, f.ne};
  CHECK(slots == std::set<int>{0, 1, 2, 3});
  // the two circuits from p partition the knot's arcs
  CHECK(path_from_ne(t, 0).size() + path_from_se(t, 0).size() == static_cast<std::size_t>(t.edge_count()));
}

TEST_CASE("fault modes change the vertical smoothings only as documented") {
  auto t = census_diagram("3_1r");
  CHECK(smooth(t, 0, SmoothingKind::VC, SmoothingFault::VerticalAsHorizontal) ==
        smooth(t, 0, SmoothingKind::HC));
  CHECK(smooth(t, 0, SmoothingKind::HC, SmoothingFault::SwapHcHt) == smooth(t, 0, SmoothingKind::HT));
}
