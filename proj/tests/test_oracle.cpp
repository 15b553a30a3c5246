#include "doctest.h"
#include "multiskein/expression.hpp"
#include "multiskein/invariant.hpp"
#include "multiskein/oracle.hpp"

using namespace multiskein;

namespace {

Laurent hf(const std::string& text) { return parse_expression(text, homfly_space()).num; }
Laurent dv(const std::string& text) { return parse_expression(text, dubrovnik_space()).num; }

}  // namespace

TEST_CASE("homfly oracle on classical examples") {
  // With b = l^-2, c1 = m/l these are the usual trefoil and figure-eight values.
  CHECK(oracle::homfly(census_diagram("3_1r")) == hf("-b^2 - 2*b + c1^2"));
  CHECK(oracle::homfly(census_diagram("4_1")) == hf("-b - 1 - b^-1 + b^-1*c1^2"));
  CHECK(oracle::homfly(census_diagram("unlink2")) == hf("-(1 + b)*c1^-1"));
  CHECK(oracle::homfly(census_diagram("unknot1")) == hf("1"));
}

TEST_CASE("dubrovnik oracle") {
  CHECK(oracle::dubrovnik(census_diagram("unknot1m")) == dv("1"));
  CHECK(oracle::dubrovnik_hat(census_diagram("unknot1")) == dv("A"));
  CHECK(oracle::dubrovnik(census_diagram("unlink2")) == dv("(A - A^-1)*z^-1 + 1"));
  CHECK(oracle::dubrovnik(census_diagram("3_1r")) ==
        dv("A^-2*z^2 + 2*A^-2 + A^-3*z - A^-4*z^2 - A^-4 - A^-5*z"));
}

TEST_CASE("oracle sign and writhe agree with the diagram") {
  for (const auto& e : census()) {
    auto d = census_diagram(e.name);
    CHECK(oracle::writhe(oracle::from_diagram(d)) == writhe(d));
  }
}

TEST_CASE("engine agrees with both oracles on the census") {
  for (const auto& e : census()) {
    CAPTURE(e.name);
    auto d = census_diagram(e.name);
    CHECK(specialize(evaluate_F_z(d), dubrovnik_images()) == oracle::dubrovnik(d));
    auto h = evaluate_f(d, EvaluationConfig<Laurent>{homfly_assignment()});
    CHECK(h.den == 1);
    CHECK(h.num == oracle::homfly(d));
  }
}

TEST_CASE("oracle cap") {
  oracle::OracleOptions opt;
  opt.crossing_cap = 3;
  CHECK_THROWS_AS(oracle::homfly(census_diagram("4_1"), opt), CapExceeded);
}
