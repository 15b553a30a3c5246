#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "multiskein/laurent.hpp"
#include "multiskein/scaled.hpp"

namespace multiskein {

// Exponent signature A^k b^eps c^i c'^j d^delta v_n (n = 0: no v factor).
struct ZMonomial {
  int n = 0;
  int k = 0;
  int i = 0;
  int j = 0;
  int delta = 0;
  int eps = 0;

  auto tie() const { return std::tie(n, k, i, j, delta, eps); }
  friend bool operator<(const ZMonomial& a, const ZMonomial& b) { return a.tie() < b.tie(); }
  friend bool operator==(const ZMonomial& a, const ZMonomial& b) { return a.tie() == b.tie(); }

  bool is_normal() const;
};

// Formal integer combination of monomials with no constraint beyond v-degree <= 1.
using RawZ = std::vector<std::pair<ZMonomial, std::int64_t>>;

// Element of the quotient ring Z in normal form under the full (cubic) rewriting system.
class ZElement {
 public:
  using Term = std::pair<ZMonomial, std::int64_t>;

  ZElement() = default;

  static ZElement constant(std::int64_t c);
  static ZElement monomial(const ZMonomial& m, std::int64_t c = 1);
  static ZElement A(int k = 1);
  static ZElement b();
  static ZElement c();
  static ZElement cp();
  static ZElement d();
  static ZElement v(int n);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  ZElement zero_like() const { return {}; }
  ZElement one_like() const { return constant(1); }

  ZElement operator-() const;
  ZElement& operator+=(const ZElement& o);
  ZElement& operator-=(const ZElement& o);
  friend ZElement operator+(ZElement a, const ZElement& b) { return a += b; }
  friend ZElement operator-(ZElement a, const ZElement& b) { return a -= b; }
  friend ZElement operator*(const ZElement& a, const ZElement& b);
  ZElement scaled(std::int64_t k) const;
  ZElement exact_div(std::int64_t k) const;
  std::int64_t content() const;
  // multiplies by A^k without renormalizing (A commutes with every rule)
  ZElement shift_A(int k) const;

  // Units are +-A^k b^eps; integer factors go to the denominator.
  std::optional<Scaled<ZElement>> unit_inverse() const;

  friend bool operator==(const ZElement& a, const ZElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ZElement& a, const ZElement& b) { return !(a == b); }

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  friend ZElement z_normalize(const RawZ& raw);
  std::vector<Term> terms_;
};

// Reduces a raw element to normal form. Throws on malformed monomials.
ZElement z_normalize(const RawZ& raw);

// Images of the generators of Z in a Laurent ring.
struct ZImages {
  Laurent A;
  Laurent A_inv;
  Laurent b;
  Laurent c;
  Laurent cp;
  Laurent d;
  std::function<Laurent(int)> v;  // n >= 1
};

ZImages dubrovnik_images();
LaurentSpacePtr dubrovnik_space();  // generators A, z

// Names of the defining identities of Z violated by the images (v-rule up to depth).
std::vector<std::string> check_z_images(const ZImages& images, int v_depth = 8);

// Ring homomorphism Z -> Laurent. Throws std::invalid_argument if the images
// violate an identity.
Laurent specialize(const ZElement& e, const ZImages& images, int v_depth = 8);

}  // namespace multiskein
