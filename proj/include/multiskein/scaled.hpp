#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "multiskein/checked.hpp"

namespace multiskein {

// num/den with a positive integer denominator. Lets coefficients such as c/4
// or -z/4 live over an integer ring; den is kept coprime to the content of num.
template <class E>
struct Scaled {
  E num;
  std::int64_t den = 1;

  Scaled() = default;
  Scaled(E n, std::int64_t d = 1) : num(std::move(n)), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num.is_zero()) {
      den = 1;
      return;
    }
    std::int64_t g = std::gcd(num.content(), den);
    if (g > 1) {
      num = num.exact_div(g);
      den /= g;
    }
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_integral() const { return den == 1; }

  Scaled zero_like() const { return Scaled(num.zero_like()); }
  Scaled one_like() const { return Scaled(num.one_like()); }

  Scaled operator-() const { return Scaled(-num, den); }

  friend Scaled operator+(const Scaled& a, const Scaled& b) {
    std::int64_t l = checked_lcm(a.den, b.den);
    return Scaled(a.num.scaled(l / a.den) + b.num.scaled(l / b.den), l);
  }
  friend Scaled operator-(const Scaled& a, const Scaled& b) { return a + (-b); }
  friend Scaled operator*(const Scaled& a, const Scaled& b) {
    return Scaled(a.num * b.num, checked_mul(a.den, b.den));
  }
  Scaled& operator+=(const Scaled& o) { return *this = *this + o; }
  Scaled& operator-=(const Scaled& o) { return *this = *this - o; }

  friend bool operator==(const Scaled& a, const Scaled& b) {
    return a.num.scaled(b.den) == b.num.scaled(a.den);
  }
  friend bool operator!=(const Scaled& a, const Scaled& b) { return !(a == b); }

  std::optional<Scaled> inverse() const {
    auto inv = num.unit_inverse();
    if (!inv) return std::nullopt;
    return Scaled(inv->num.scaled(den), inv->den);
  }

  std::string to_string() const {
    if (den == 1) return num.to_string();
    return "(" + num.to_string() + ")/" + std::to_string(den);
  }
};

}  // namespace multiskein
