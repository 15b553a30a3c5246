#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "multiskein/zring.hpp"

namespace multiskein {

// Commutative monomial rewriting over a finite alphabet of generators.
namespace rw {

using Mono = std::vector<int>;
using Poly = std::map<Mono, std::int64_t>;  // no zero coefficients

struct Generator {
  std::string name;
  int weight = 1;
  bool exclusive = false;  // at most one exclusive generator per monomial (the v family)
};

struct Rule {
  std::string name;
  Mono lhs;
  Poly rhs;
};

struct TerminationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class System {
 public:
  System(std::vector<Generator> gens, std::vector<Rule> rules, std::vector<std::string> tiebreak = {});

  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<Rule>& rules() const { return rules_; }
  int index_of(const std::string& name) const;  // -1 if absent

  int weight(const Mono& m) const;
  // (weight, tie-break counts) compared lexicographically
  std::vector<int> order_key(const Mono& m) const;
  bool admissible(const Mono& m) const;  // exclusive-degree <= 1

  // Rules whose rhs does not strictly decrease the order key, by name.
  std::vector<std::string> uncertified_rules() const;

  Mono one() const { return Mono(gens_.size(), 0); }
  std::string render(const Mono& m) const;
  std::string render(const Poly& p) const;

 private:
  std::vector<Generator> gens_;
  std::vector<Rule> rules_;
  std::vector<int> tiebreak_;
};

struct Step {
  Poly result;
  int rule = -1;
  Mono term;
};

bool divides(const Mono& d, const Mono& m);
Poly poly_of(const Mono& m, std::int64_t c = 1);
void add_into(Poly& acc, const Poly& p, std::int64_t scale = 1);
Poly mul(const Poly& p, const Mono& m);

// One rewrite: the largest reducible term, first applicable rule in declared order.
std::optional<Step> reduce_once(const System& sys, const Poly& p);
Poly normal_form(const System& sys, const Poly& p, std::size_t max_steps = 1000000);
// Random term and random applicable rule at every step.
Poly normal_form_random(const System& sys, const Poly& p, std::mt19937_64& rng, std::size_t max_steps = 1000000);

struct CriticalPair {
  int rule1 = -1;
  int rule2 = -1;
  Mono overlap;
  Poly reduct1;
  Poly reduct2;
  Poly normal1;
  Poly normal2;
  bool joinable = false;
};

std::vector<CriticalPair> critical_pairs(const System& sys);

struct ConfluenceReport {
  std::vector<CriticalPair> pairs;
  std::vector<std::string> uncertified;
  bool confluent() const;
  std::size_t non_joinable() const;
  nlohmann::json to_json(const System& sys) const;
  std::string to_text(const System& sys) const;
};

ConfluenceReport check_local_confluence(const System& sys);

// The quadratic system when with_cubic is false, the one with the c'^3 rule
// otherwise. The v-rule family is instantiated for n = 1..v_depth.
System skein_system(bool with_cubic, int v_depth = 8);

// JSON system description; see schemas/rewrite_system.schema.json.
System system_from_json(const nlohmann::json& j, int v_depth = 8);

// Bridges to the Z ring (generators A, Ai, b, c, cp, d, v1..).
Poly from_raw_z(const System& sys, const RawZ& raw);
Poly from_zelement(const System& sys, const ZElement& e);

}  // namespace rw
}  // namespace multiskein
