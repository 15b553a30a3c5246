#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace multiskein {

template <class E>
struct Scaled;

// Generator names shared by all elements of one Laurent ring.
class LaurentSpace {
 public:
  explicit LaurentSpace(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  int size() const { return static_cast<int>(names_.size()); }
  // -1 when absent
  int find(const std::string& name) const;

 private:
  std::vector<std::string> names_;
};

using LaurentSpacePtr = std::shared_ptr<const LaurentSpace>;

// Sparse integer Laurent polynomial. Terms are kept sorted by exponent vector,
// zero coefficients are never stored.
class Laurent {
 public:
  using Exponents = std::vector<int>;
  using Term = std::pair<Exponents, std::int64_t>;

  Laurent() = default;
  explicit Laurent(LaurentSpacePtr space) : space_(std::move(space)) {}

  static Laurent constant(LaurentSpacePtr space, std::int64_t c);
  static Laurent monomial(LaurentSpacePtr space, Exponents e, std::int64_t c = 1);
  static Laurent generator(LaurentSpacePtr space, const std::string& name, int power = 1);

  const LaurentSpacePtr& space() const { return space_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Laurent zero_like() const { return Laurent(space_); }
  Laurent one_like() const { return constant(space_, 1); }

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent scaled(std::int64_t k) const;
  Laurent pow(int n) const;  // n >= 0, or negative for units

  // Divides every coefficient by k; throws if not exact.
  Laurent exact_div(std::int64_t k) const;
  std::int64_t content() const;  // gcd of coefficients, 0 for zero

  // Inverse for elements of the form u*m with m a monomial; the integer part
  // goes to the denominator.
  std::optional<Scaled<Laurent>> unit_inverse() const;

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  void check_space(const Laurent& o) const;
  void adopt_space(const Laurent& o);
  static void canonicalize(std::vector<Term>& terms);

  LaurentSpacePtr space_;
  std::vector<Term> terms_;
};

}  // namespace multiskein
