#include "doctest.h"
#include "json.hpp"
#include "multiskein/diagram.hpp"

using namespace multiskein;

TEST_CASE("census basics") {
  CHECK(census().size() == 19);
  auto t = census_diagram("3_1r");
  CHECK(t.crossing_count() == 3);
  CHECK(t.component_count() == 1);
  CHECK(writhe(t) == 3);
  CHECK(writhe(census_diagram("3_1l")) == -3);
  CHECK(writhe(census_diagram("4_1")) == 0);
  CHECK(census_diagram("unlink3").loop_count() == 3);
  CHECK(census_diagram("hopf+").component_count() == 2);
  CHECK_THROWS(census_diagram("9_42"));
}

TEST_CASE("pd round trip and relabeling invariance") {
  for (const auto& e : census()) {
    CAPTURE(e.name);
    auto d = parse_pd(e.pd);
    CHECK(parse_pd(to_pd(d)) == d);
    CHECK(parse_diagram_json(to_json(d)) == d);
    validate(d);
  }
  // same trefoil, labels shifted by 10
  CHECK(parse_pd("X[11,14,12,15] X[13,16,14,11] X[15,12,16,13]") == census_diagram("3_1r"));
}

TEST_CASE("pd parse errors") {
  CHECK_THROWS_AS(parse_pd("X[1,2,3]"), DiagramError);
  CHECK_THROWS_AS(parse_pd("X[1,2,3,4]"), DiagramError);  // labels used once
  CHECK_THROWS_AS(parse_pd(""), DiagramError);
  CHECK_THROWS_AS(parse_diagram_json(nlohmann::json::parse(R"({"crossings": [[1,2,2]]})")), DiagramError);
}

TEST_CASE("crossing signs") {
  auto h = census_diagram("hopf+");
  CHECK(crossing_sign(h, 0) == 1);
  CHECK(crossing_sign(h, 1) == 1);
  auto m = mirror(h);
  CHECK(writhe(m) == -2);
  CHECK(mirror(m) == h);
  auto s = switch_crossing(census_diagram("3_1r"), 0);
  CHECK(writhe(s) == 1);
}

TEST_CASE("descending diagrams have no bad points") {
  CHECK(bad_points(census_diagram("unknot0")).empty());
  CHECK(bad_points(census_diagram("unknot1")).empty());
  CHECK(index_of(census_diagram("unknot0")) == Index{0, 0});
  // an alternating knot diagram is never descending
  CHECK_FALSE(bad_points(census_diagram("3_1r")).empty());
  CHECK(index_of(census_diagram("3_1r")).c == 3);
}

TEST_CASE("marking changes keep the canonical key") {
  auto w = census_diagram("whitehead+");
  auto key = canonical_key(w);
  for (int k = 0; k < w.strand_component_count(); ++k)
    for (int pos = 0; pos < w.component_size(k); ++pos) CHECK(canonical_key(move_basepoint(w, k, pos)) == key);
  CHECK(canonical_key(reorder_components(w, {1, 0})) == key);
  CHECK(canonical_key(census_diagram("3_1l")) != canonical_key(census_diagram("3_1r")));
}

TEST_CASE("reidemeister moves change writhe as expected and can be undone") {
  for (const char* name : {"unknot0", "3_1r", "hopf-", "whitehead-"}) {
    CAPTURE(name);
    auto d = census_diagram(name);
    auto key = canonical_key(d);
    if (d.edge_count() > 0) {
      auto r1 = apply_r1(d, 0, -1, Side::Left);
      CHECK(writhe(r1) == writhe(d) - 1);
      bool back = false;
      for (int f : r1_undo_sites(r1)) back = back || canonical_key(undo_r1(r1, f)) == key;
      CHECK(back);
    }
    auto fs = faces(d);
    for (int f = 0; f < static_cast<int>(fs.size()); ++f) {
      if (fs[f].size() < 2 || fs[f][0].edge == fs[f][1].edge) continue;
      auto r2 = apply_r2(d, f, 0, 1, true);
      CHECK(r2.crossing_count() == d.crossing_count() + 2);
      CHECK(writhe(r2) == writhe(d));
      bool back = false;
      for (int g : r2_undo_sites(r2)) back = back || canonical_key(undo_r2(r2, g)) == key;
      CHECK(back);
      break;
    }
  }
  auto loop = apply_r1_loop(census_diagram("unknot0"), 1, Side::Right);
  CHECK(loop.crossing_count() == 1);
  CHECK(writhe(loop) == 1);
}

TEST_CASE("r3 is an involution on its sites") {
  auto k = apply_r2(census_diagram("3_1r"), 0, 0, 1, true);
  for (int t : r3_sites(k)) {
    auto m = apply_r3(k, t);
    CHECK(writhe(m) == writhe(k));
    bool back = false;
    for (int t2 : r3_sites(m)) back = back || canonical_key(apply_r3(m, t2)) == canonical_key(k);
    CHECK(back);
  }
}
