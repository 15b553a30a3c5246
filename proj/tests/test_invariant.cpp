#include "doctest.h"
#include "multiskein/invariant.hpp"

using namespace multiskein;

namespace {

ZElement A(int k = 1) { return ZElement::A(k); }
ZElement b() { return ZElement::b(); }
ZElement c() { return ZElement::c(); }
ZElement cp() { return ZElement::cp(); }
ZElement d() { return ZElement::d(); }
ZElement v(int n) { return ZElement::v(n); }
ZElement k(std::int64_t n) { return ZElement::constant(n); }

ZElement trefoil_f() {
  return ((c() * cp() - k(2) * b()) * A() - b() * d() + (b() * c() * cp() - k(1)) * A(-1) - d() * A(-2)) * v(1);
}

}  // namespace

TEST_CASE("worked examples") {
  CHECK(evaluate_f_z(census_diagram("hopf+")) == -(b() * v(2)) - cp() * (A() + b() * A(-1)) * v(1));
  CHECK(evaluate_f_z(census_diagram("3_1r")) == trefoil_f());
  CHECK(evaluate_F_z(census_diagram("3_1r")) == A(-3) * trefoil_f());
}

TEST_CASE("base cases") {
  CHECK(evaluate_f_z(census_diagram("unknot0")) == v(1));
  CHECK(evaluate_f_z(census_diagram("unlink3")) == v(3));
  CHECK(evaluate_f_z(census_diagram("unknot1")) == A() * v(1));
  CHECK(evaluate_f_z(census_diagram("unknot1m")) == A(-1) * v(1));
  CHECK(evaluate_F_z(census_diagram("unknot1m")) == v(1));
}

TEST_CASE("frozen census values") {
  CHECK(evaluate_F_z(census_diagram("4_1")).to_string() ==
        "((c*c' - b)*A^2 + (-b*c*c'^2 + b*d)*A + 2*b*c*c' - 1 + (-c*c'^2 + d)*A^-1 + (c*c' - b)*A^-2)*v1");
  CHECK(evaluate_F_z(census_diagram("whitehead+")) == evaluate_F_z(census_diagram("whitehead-")));
}

TEST_CASE("chirality") {
  CHECK(evaluate_F_z(census_diagram("3_1r")) != evaluate_F_z(census_diagram("3_1l")));
  CHECK(evaluate_F_z(census_diagram("hopf+")) != evaluate_F_z(census_diagram("hopf-")));
  // 4_1 is amphichiral
  CHECK(evaluate_F_z(census_diagram("4_1")) == evaluate_F_z(mirror(census_diagram("4_1"))));
}

TEST_CASE("memo modes agree") {
  for (const char* name : {"5_2", "L4a1+", "whitehead-"}) {
    auto dg = census_diagram(name);
    EvaluationConfig<ZElement> cfg{z_assignment()};
    auto cross = evaluate_f(dg, cfg);
    cfg.memo = MemoMode::Exact;
    CHECK(evaluate_f(dg, cfg) == cross);
    cfg.memo = MemoMode::Off;
    CHECK(evaluate_f(dg, cfg) == cross);
  }
}

TEST_CASE("resolution at any crossing gives the same value") {
  auto dg = census_diagram("6_2");
  EvaluationConfig<ZElement> cfg{z_assignment()};
  auto ref = evaluate_f(dg, cfg);
  cfg.policy = ResolutionPolicy::SpecifiedCrossing;
  for (int p = 0; p < dg.crossing_count(); ++p) {
    cfg.crossing = p;
    CHECK(evaluate_f(dg, cfg) == ref);
  }
  auto terms = resolve_at(dg, 0, EvaluationConfig<ZElement>{z_assignment()});
  CHECK(terms.size() == (classify(dg, 0).locality == Locality::SameComponent ? 7u : 5u));
}

TEST_CASE("marking and order independence") {
  for (const char* name : {"hopf-", "3_1l", "L4a1-", "whitehead+"}) {
    CAPTURE(name);
    auto dg = census_diagram(name);
    EvaluationConfig<ZElement> cfg{z_assignment()};
    auto m = check_marking_independence(dg, cfg);
    CHECK(m.ok());
    CHECK(m.markings_checked > 0);
    auto o = check_order_independence(dg, cfg);
    CHECK(o.ok());
    CHECK(o.pairs_checked == dg.crossing_count() * (dg.crossing_count() - 1) / 2);
  }
}

TEST_CASE("crossing cap") {
  EvaluationConfig<ZElement> cfg{z_assignment()};
  cfg.crossing_cap = 4;
  CHECK_THROWS_AS(evaluate_f(census_diagram("5_1"), cfg), CapExceeded);
  CHECK_NOTHROW(evaluate_f(census_diagram("4_1"), cfg));
}

TEST_CASE("degree bounds") {
  for (const auto& e : census()) {
    CAPTURE(e.name);
    CHECK(degree_bounds(evaluate_F_z(census_diagram(e.name))).within_bounds());
  }
  CHECK(degree_bounds(c() * cp() * cp()).cp == 2);
}

TEST_CASE("random diagrams are deterministic and keep F") {
  RandomDiagramOptions opt;
  opt.max_crossings = 7;
  opt.moves = 10;
  auto r1 = random_diagram(42, opt);
  auto r2 = random_diagram(42, opt);
  CHECK(r1.result == r2.result);
  CHECK(r1.moves == r2.moves);
  CHECK(r1.result.crossing_count() <= 7);
  CHECK(evaluate_F_z(r1.result) == evaluate_F_z(r1.start));
}

TEST_CASE("fuzz summary is reproducible") {
  FuzzOptions opt;
  opt.trials = 12;
  opt.diagram.max_crossings = 7;
  opt.diagram.moves = 10;
  opt.threads = 2;
  auto a = fuzz(opt);
  opt.threads = 1;
  auto b = fuzz(opt);
  CHECK(a.failures == 0);
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("fault injection") {
  FuzzOptions opt;
  opt.trials = 20;
  opt.diagram.max_crossings = 7;
  opt.diagram.moves = 10;
  opt.fault = SmoothingFault::VerticalAsHorizontal;
  CHECK(fuzz(opt).failures > 0);
  // swapping HC and HT is invisible: the relations force c3 = c4
  opt.fault = SmoothingFault::SwapHcHt;
  CHECK(fuzz(opt).failures == 0);
}

TEST_CASE("laurent backend under the kauffman preset") {
  EvaluationConfig<Laurent> cfg{kauffman_assignment()};
  auto F = evaluate_F(census_diagram("3_1r"), cfg);
  CHECK(F.den == 1);
  CHECK(F.num == specialize(evaluate_F_z(census_diagram("3_1r")), dubrovnik_images()));
}
