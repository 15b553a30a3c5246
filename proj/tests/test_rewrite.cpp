#include <random>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "multiskein/rewrite.hpp"
#include "multiskein/zring.hpp"

using namespace multiskein;
using namespace multiskein::rw;

TEST_CASE("quadratic system diverges only on the d^2 c' overlap") {
  System sys = skein_system(false, 8);
  auto rep = check_local_confluence(sys);
  CHECK_FALSE(rep.confluent());
  REQUIRE(rep.non_joinable() == 1);
  for (const auto& p : rep.pairs) {
    if (p.joinable) continue;
    CHECK(sys.render(p.overlap) == "cp*d^2");
    std::set<std::string> normals{sys.render(p.normal1), sys.render(p.normal2)};
    CHECK(normals == std::set<std::string>{"cp^3", "c*cp^2"});
  }
  CHECK(rep.uncertified.empty());
}

TEST_CASE("cubic system is locally confluent") {
  System sys = skein_system(true, 8);
  auto rep = check_local_confluence(sys);
  CHECK(rep.confluent());
  CHECK(rep.non_joinable() == 0);
  CHECK(rep.pairs.size() == 18);
  CHECK(rep.uncertified.empty());
}

TEST_CASE("critical pairs skip disjoint overlaps") {
  System sys = skein_system(true, 2);
  for (const auto& p : critical_pairs(sys)) {
    const Mono& l1 = sys.rules()[p.rule1].lhs;
    const Mono& l2 = sys.rules()[p.rule2].lhs;
    bool shared = false;
    for (std::size_t i = 0; i < l1.size(); ++i) shared = shared || (l1[i] > 0 && l2[i] > 0);
    CHECK(shared);
  }
}

TEST_CASE("random strategies reach the same normal form as z_normalize") {
  System sys = skein_system(true, 8);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> small(0, 3), kk(-3, 3), nn(0, 6), cc(-4, 4);
  for (int t = 0; t < 100; ++t) {
    RawZ raw;
    for (int s = 0; s < 4; ++s) {
      ZMonomial m;
      m.k = kk(rng);
      m.eps = small(rng);
      m.i = small(rng);
      m.j = small(rng);
      m.delta = small(rng);
      m.n = nn(rng);
      raw.push_back({m, cc(rng)});
    }
    Poly expected = from_zelement(sys, z_normalize(raw));
    Poly start = from_raw_z(sys, raw);
    CHECK(normal_form(sys, start) == expected);
    for (int s = 0; s < 3; ++s) CHECK(normal_form_random(sys, start, rng) == expected);
  }
}

TEST_CASE("json systems") {
  auto j = nlohmann::json::parse(R"({
    "generators": [{"name": "x", "weight": 2}, {"name": "y", "weight": 1}],
    "rules": [{"lhs": {"x": 1}, "rhs": [{"coeff": 1, "mono": {"y": 1}}]}]
  })");
  System sys = system_from_json(j);
  CHECK(sys.rules().size() == 1);
  CHECK(check_local_confluence(sys).confluent());

  // weight never decreases: reported as uncertified
  auto k = nlohmann::json::parse(R"({
    "generators": [{"name": "x"}, {"name": "y"}],
    "rules": [{"name": "up", "lhs": {"x": 1}, "rhs": [{"coeff": 1, "mono": {"y": 2}}]}]
  })");
  CHECK(system_from_json(k).uncertified_rules() == std::vector<std::string>{"up"});
  CHECK_THROWS(system_from_json(nlohmann::json::parse(R"({"generators": [], "rules": [{"lhs": {"q": 1}, "rhs": []}]})")));
}
