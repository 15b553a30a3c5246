#include "multiskein/laurent.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "multiskein/checked.hpp"
#include "multiskein/scaled.hpp"

namespace multiskein {

LaurentSpace::LaurentSpace(std::vector<std::string> names) : names_(std::move(names)) {}

int LaurentSpace::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

Laurent Laurent::constant(LaurentSpacePtr space, std::int64_t c) {
  Exponents e(space->size(), 0);
  return monomial(std::move(space), std::move(e), c);
}

Laurent Laurent::monomial(LaurentSpacePtr space, Exponents e, std::int64_t c) {
  if (static_cast<int>(e.size()) != space->size()) throw std::invalid_argument("exponent vector size mismatch");
  Laurent r(std::move(space));
  if (c != 0) r.terms_.emplace_back(std::move(e), c);
  return r;
}

Laurent Laurent::generator(LaurentSpacePtr space, const std::string& name, int power) {
  int i = space->find(name);
  if (i < 0) throw std::invalid_argument("unknown generator '" + name + "'");
  Exponents e(space->size(), 0);
  e[i] = power;
  return monomial(std::move(space), std::move(e), 1);
}

void Laurent::check_space(const Laurent& o) const {
  if (!space_ || !o.space_ || space_ == o.space_) return;
  if (space_->names() != o.space_->names()) throw std::invalid_argument("mixing Laurent elements of different rings");
}

void Laurent::adopt_space(const Laurent& o) {
  check_space(o);
  if (!space_) space_ = o.space_;
}

void Laurent::canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second = checked_add(out.back().second, t.second);
    } else {
      out.push_back(std::move(t));
    }
    if (out.back().second == 0) out.pop_back();
  }
  terms = std::move(out);
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.second = checked_mul(t.second, -1);
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  adopt_space(o);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
      merged.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->first < i->first) {
      merged.push_back(*j++);
    } else {
      std::int64_t c = checked_add(i->second, j->second);
      if (c != 0) merged.emplace_back(std::move(i->first), c);
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
  a.check_space(b);
  Laurent r(a.space_ ? a.space_ : b.space_);
  if (a.is_zero() || b.is_zero()) return r;
  std::map<Laurent::Exponents, std::int64_t> acc;
  Laurent::Exponents e(a.terms_.front().first.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      auto& slot = acc[e];
      slot = checked_add(slot, checked_mul(ca, cb));
    }
  }
  for (auto& [ex, c] : acc)
    if (c != 0) r.terms_.emplace_back(ex, c);
  return r;
}

Laurent Laurent::scaled(std::int64_t k) const {
  if (k == 0) return zero_like();
  Laurent r = *this;
  for (auto& t : r.terms_) t.second = checked_mul(t.second, k);
  return r;
}

Laurent Laurent::pow(int n) const {
  if (n < 0) {
    auto inv = unit_inverse();
    if (!inv || inv->den != 1) throw std::domain_error("negative power of a non-unit");
    return inv->num.pow(-n);
  }
  Laurent r = one_like();
  Laurent base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

Laurent Laurent::exact_div(std::int64_t k) const {
  if (k == 0) throw std::domain_error("division by zero");
  Laurent r = *this;
  for (auto& t : r.terms_) {
    if (t.second % k != 0) throw std::domain_error("inexact integer division of a Laurent polynomial");
    t.second /= k;
  }
  return r;
}

std::int64_t Laurent::content() const {
  std::int64_t g = 0;
  for (const auto& t : terms_) g = std::gcd(g, t.second);
  return g;
}

std::optional<Scaled<Laurent>> Laurent::unit_inverse() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [e, c] = terms_.front();
  Exponents ne(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
  std::int64_t sign = c < 0 ? -1 : 1;
  return Scaled<Laurent>(monomial(space_, std::move(ne), sign), c * sign);
}

namespace {

std::string render_monomial(const std::vector<std::string>& names, const Laurent::Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

}  // namespace

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono = space_ ? render_monomial(space_->names(), e) : std::string();
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mono.empty()) {
      out += std::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += std::to_string(mag) + "*" + mono;
    }
    first = false;
  }
  return out;
}

nlohmann::json Laurent::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : terms_) {
    nlohmann::json ex = nlohmann::json::object();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) ex[space_->names()[i]] = e[i];
    terms.push_back({{"coeff", c}, {"exponents", ex}});
  }
  nlohmann::json gens = space_ ? nlohmann::json(space_->names()) : nlohmann::json::array();
  return {{"generators", gens}, {"terms", terms}, {"text", to_string()}};
}

}  // namespace multiskein
