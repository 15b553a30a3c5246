#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "multiskein/laurent.hpp"
#include "multiskein/scaled.hpp"
#include "multiskein/smoothing.hpp"
#include "multiskein/zring.hpp"

namespace multiskein {

enum class Base { A, b, c1, c2, c3, c4, d1, d2, bP, c1P, c2P, d1P, d2P };

inline constexpr std::array<Base, 13> all_bases{Base::A,  Base::b,   Base::c1,  Base::c2,  Base::c3,
                                                 Base::c4, Base::d1,  Base::d2,  Base::bP,  Base::c1P,
                                                 Base::c2P, Base::d1P, Base::d2P};

std::string base_name(Base b);  // "c1", "c1'" ...
std::optional<Base> base_from_name(const std::string& name);
bool is_primed(Base b);

struct CoefficientSymbol {
  Base base = Base::b;
  bool bar = false;
  bool hat = false;
  friend auto operator<=>(const CoefficientSymbol&, const CoefficientSymbol&) = default;
};

// Both are involutions. hat swaps c3/c4, d1/d2, d1'/d2' and records the flag.
CoefficientSymbol bar(CoefficientSymbol s);
CoefficientSymbol hat(CoefficientSymbol s);
// Same symbol with the hat flag dropped; the base already carries the swap.
CoefficientSymbol plain(CoefficientSymbol s);
std::string to_string(const CoefficientSymbol& s);

// f(resolved) = -sum coeff * f(target)
struct SkeinExpansion {
  SmoothingKind resolved = SmoothingKind::Eplus;
  std::vector<std::pair<SmoothingKind, CoefficientSymbol>> terms;
};
SkeinExpansion expansion_for(const CrossingPattern& pattern);

enum class RelationKind { Product, Commutativity, PrimeEquality, VIdentity };

// A formal identity. Each side is a sum of products of one or two symbols.
struct Relation {
  RelationKind kind = RelationKind::Product;
  std::string origin;  // e.g. "case 3 #1 [bar first, hat both]"
  std::vector<std::vector<CoefficientSymbol>> lhs, rhs;
};
std::string to_string(const Relation& r);

// Relation lists of the five two-crossing cases, completed under bar and hat,
// plus commutativity, d1' = d2' and one entry standing for the v-identity family.
const std::vector<Relation>& relation_set();
// Only the transcribed relations (no completion).
const std::vector<Relation>& base_relations();
// All 16 bar/hat variants of r, deduplicated.
std::vector<Relation> complete(const Relation& r);
bool same_relation(const Relation& a, const Relation& b);

template <class E>
struct CoefficientAssignment {
  std::string name;
  std::map<Base, Scaled<E>> values;
  std::function<Scaled<E>(int)> v;  // n >= 1
  // Optional explicit inverses; otherwise unit_inverse of the value is used.
  std::map<Base, Scaled<E>> inverses;

  const Scaled<E>& value(Base b) const;
  std::optional<Scaled<E>> inverse(Base b) const;
  // Value of a symbol; nullopt when a needed inverse is missing.
  std::optional<Scaled<E>> eval(const CoefficientSymbol& s) const;
};

struct RelationFailure {
  std::string relation;
  std::string lhs, rhs;  // rendered values, or the reason evaluation failed
};

struct RelationReport {
  std::string assignment;
  int passed = 0;
  int skipped = 0;  // commutativity, vacuous in commutative targets
  std::vector<RelationFailure> failed;
  bool ok() const { return failed.empty(); }
  nlohmann::json to_json() const;
  std::string to_text() const;
};

template <class E>
RelationReport verify_relations(const CoefficientAssignment<E>& a, int v_depth = 8);

CoefficientAssignment<ZElement> z_assignment();
CoefficientAssignment<Laurent> kauffman_assignment();  // generators A, z
CoefficientAssignment<Laurent> homfly_assignment();    // generators b, c1
LaurentSpacePtr homfly_space();
std::vector<std::string> preset_names();

// {"generators": [...], "values": {"c1": "-z/4", ...}, "v": {"1": "1", "recurrence": true}}
// Unlisted symbols default to 0. v_n comes from an explicit map entry or,
// with "recurrence", from solving the v-identity (needs c1+c2+c3+c4 a unit).
CoefficientAssignment<Laurent> assignment_from_json(const nlohmann::json& j);

extern template struct CoefficientAssignment<ZElement>;
extern template struct CoefficientAssignment<Laurent>;
extern template RelationReport verify_relations(const CoefficientAssignment<ZElement>&, int);
extern template RelationReport verify_relations(const CoefficientAssignment<Laurent>&, int);

}  // namespace multiskein
