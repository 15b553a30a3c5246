#include "multiskein/zring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "multiskein/checked.hpp"

namespace multiskein {

bool ZMonomial::is_normal() const {
  if (n < 0 || i < 0 || j < 0 || delta < 0 || eps < 0) return false;
  if (eps > 1 || delta > 1 || j > 2) return false;
  if (delta == 1 && j > 0) return false;
  if (i > 0 && n > 1) return false;
  return true;
}

namespace {

// Scalar rules in closed form: dd -> cc', dc' -> bc'c', c'^3 -> cc'^2, b^2 -> 1.
void normalize_scalar(ZMonomial& m) {
  m.i += m.delta / 2;
  m.j += m.delta / 2;
  m.delta %= 2;
  if (m.delta == 1 && m.j >= 1) {
    m.delta = 0;
    m.eps += 1;
    m.j += 1;
  }
  if (m.j >= 3) {
    m.i += m.j - 2;
    m.j = 2;
  }
  m.eps %= 2;
}

void check_raw(const ZMonomial& m) {
  if (m.n < 0 || m.i < 0 || m.j < 0 || m.delta < 0 || m.eps < 0)
    throw std::invalid_argument("raw Z monomial with negative exponent");
}

}  // namespace

ZElement z_normalize(const RawZ& raw) {
  std::map<ZMonomial, std::int64_t> acc;
  std::vector<std::pair<ZMonomial, std::int64_t>> work(raw.begin(), raw.end());
  while (!work.empty()) {
    auto [m, coeff] = work.back();
    work.pop_back();
    if (coeff == 0) continue;
    check_raw(m);
    normalize_scalar(m);
    if (m.i > 0 && m.n >= 2) {
      // c v_{n+1} -> -(A + A^-1 b + d) v_n
      ZMonomial base = m;
      base.i -= 1;
      base.n -= 1;
      ZMonomial a = base, ai = base, dd = base;
      a.k += 1;
      ai.k -= 1;
      ai.eps += 1;
      dd.delta += 1;
      std::int64_t neg = checked_mul(coeff, -1);
      work.emplace_back(a, neg);
      work.emplace_back(ai, neg);
      work.emplace_back(dd, neg);
      continue;
    }
    auto& slot = acc[m];
    slot = checked_add(slot, coeff);
  }
  ZElement r;
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.emplace_back(m, c);
  return r;
}

ZElement ZElement::constant(std::int64_t c) { return monomial(ZMonomial{}, c); }

ZElement ZElement::monomial(const ZMonomial& m, std::int64_t c) { return z_normalize({{m, c}}); }

ZElement ZElement::A(int k) {
  ZMonomial m;
  m.k = k;
  return monomial(m);
}

ZElement ZElement::b() {
  ZMonomial m;
  m.eps = 1;
  return monomial(m);
}

ZElement ZElement::c() {
  ZMonomial m;
  m.i = 1;
  return monomial(m);
}

ZElement ZElement::cp() {
  ZMonomial m;
  m.j = 1;
  return monomial(m);
}

ZElement ZElement::d() {
  ZMonomial m;
  m.delta = 1;
  return monomial(m);
}

ZElement ZElement::v(int n) {
  if (n < 1) throw std::invalid_argument("v_n needs n >= 1");
  ZMonomial m;
  m.n = n;
  return monomial(m);
}

ZElement ZElement::operator-() const {
  ZElement r = *this;
  for (auto& t : r.terms_) t.second = checked_mul(t.second, -1);
  return r;
}

ZElement& ZElement::operator+=(const ZElement& o) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t a = 0, b = 0;
  while (a < terms_.size() || b < o.terms_.size()) {
    if (b == o.terms_.size() || (a < terms_.size() && terms_[a].first < o.terms_[b].first)) {
      merged.push_back(terms_[a++]);
    } else if (a == terms_.size() || o.terms_[b].first < terms_[a].first) {
      merged.push_back(o.terms_[b++]);
    } else {
      std::int64_t c = checked_add(terms_[a].second, o.terms_[b].second);
      if (c != 0) merged.emplace_back(terms_[a].first, c);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

ZElement& ZElement::operator-=(const ZElement& o) { return *this += -o; }

ZElement operator*(const ZElement& a, const ZElement& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RawZ raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.n > 0 && mb.n > 0) throw std::domain_error("product of two v-generators is not defined in Z");
      ZMonomial m;
      m.n = ma.n + mb.n;
      m.k = ma.k + mb.k;
      m.i = ma.i + mb.i;
      m.j = ma.j + mb.j;
      m.delta = ma.delta + mb.delta;
      m.eps = ma.eps + mb.eps;
      raw.emplace_back(m, checked_mul(ca, cb));
    }
  }
  return z_normalize(raw);
}

ZElement ZElement::scaled(std::int64_t k) const {
  if (k == 0) return {};
  ZElement r = *this;
  for (auto& t : r.terms_) t.second = checked_mul(t.second, k);
  return r;
}

ZElement ZElement::exact_div(std::int64_t k) const {
  if (k == 0) throw std::domain_error("division by zero");
  ZElement r = *this;
  for (auto& t : r.terms_) {
    if (t.second % k != 0) throw std::domain_error("inexact integer division in Z");
    t.second /= k;
  }
  return r;
}

std::int64_t ZElement::content() const {
  std::int64_t g = 0;
  for (const auto& t : terms_) g = std::gcd(g, t.second);
  return g;
}

ZElement ZElement::shift_A(int k) const {
  ZElement r = *this;
  for (auto& t : r.terms_) t.first.k += k;
  // order is (n, k, ...) so a uniform shift keeps it sorted
  return r;
}

std::optional<Scaled<ZElement>> ZElement::unit_inverse() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = terms_.front();
  if (m.n != 0 || m.i != 0 || m.j != 0 || m.delta != 0) return std::nullopt;
  ZMonomial inv = m;
  inv.k = -m.k;  // b is its own inverse
  std::int64_t sign = c < 0 ? -1 : 1;
  return Scaled<ZElement>(monomial(inv, sign), c * sign);
}

namespace {

struct SignedTerm {
  bool neg = false;
  std::string body;  // empty means 1
};

std::string join_factors(std::initializer_list<std::string> parts) {
  std::string s;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!s.empty()) s += "*";
    s += p;
  }
  return s;
}

std::string power(const std::string& name, int e) {
  if (e == 0) return "";
  if (e == 1) return name;
  return name + "^" + std::to_string(e);
}

std::string scalar_monomial(const ZMonomial& m) {
  return join_factors({power("b", m.eps), power("c", m.i), power("c'", m.j), power("d", m.delta)});
}

int render_weight(const ZMonomial& m) { return m.eps + 2 * m.i + 2 * m.j + 4 * m.delta; }

std::string render_terms(const std::vector<SignedTerm>& ts) {
  std::string s;
  for (std::size_t t = 0; t < ts.size(); ++t) {
    std::string body = ts[t].body.empty() ? "1" : ts[t].body;
    if (t == 0) {
      s += ts[t].neg ? "-" + body : body;
    } else {
      s += ts[t].neg ? " - " + body : " + " + body;
    }
  }
  return s;
}

SignedTerm scale_term(std::int64_t c, const std::string& rest) {
  SignedTerm t;
  t.neg = c < 0;
  std::int64_t mag = c < 0 ? -c : c;
  t.body = mag == 1 ? rest : join_factors({std::to_string(mag), rest});
  if (t.body.empty()) t.body = "1";
  return t;
}

std::vector<SignedTerm> render_v_group(std::vector<std::pair<ZMonomial, std::int64_t>> terms) {
  // by A power descending, then weight descending
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    if (x.first.k != y.first.k) return x.first.k > y.first.k;
    int wx = render_weight(x.first), wy = render_weight(y.first);
    if (wx != wy) return wx > wy;
    return std::tie(x.first.i, x.first.j, x.first.delta, x.first.eps) >
           std::tie(y.first.i, y.first.j, y.first.delta, y.first.eps);
  });
  std::vector<SignedTerm> out;
  std::size_t s = 0;
  while (s < terms.size()) {
    std::size_t e = s;
    while (e < terms.size() && terms[e].first.k == terms[s].first.k) ++e;
    std::string a = power("A", terms[s].first.k);
    if (e - s == 1) {
      out.push_back(scale_term(terms[s].second, join_factors({scalar_monomial(terms[s].first), a})));
    } else {
      std::vector<SignedTerm> inner;
      for (std::size_t t = s; t < e; ++t) inner.push_back(scale_term(terms[t].second, scalar_monomial(terms[t].first)));
      if (a.empty()) {
        out.insert(out.end(), inner.begin(), inner.end());
      } else {
        out.push_back({false, "(" + render_terms(inner) + ")*" + a});
      }
    }
    s = e;
  }
  return out;
}

}  // namespace

std::string ZElement::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<SignedTerm> top;
  std::size_t s = 0;
  while (s < terms_.size()) {
    std::size_t e = s;
    while (e < terms_.size() && terms_[e].first.n == terms_[s].first.n) ++e;
    int n = terms_[s].first.n;
    auto group = render_v_group({terms_.begin() + s, terms_.begin() + e});
    if (n == 0) {
      top.insert(top.end(), group.begin(), group.end());
    } else {
      std::string v = "v" + std::to_string(n);
      if (group.size() == 1) {
        SignedTerm t = group.front();
        t.body = (t.body.empty() || t.body == "1") ? v : t.body + "*" + v;
        top.push_back(t);
      } else {
        top.push_back({false, "(" + render_terms(group) + ")*" + v});
      }
    }
    s = e;
  }
  return render_terms(top);
}

nlohmann::json ZElement::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    terms.push_back({{"coeff", c}, {"A", m.k}, {"b", m.eps}, {"c", m.i}, {"cp", m.j}, {"d", m.delta}, {"v", m.n}});
  }
  return {{"ring", "Z"}, {"terms", terms}, {"text", to_string()}};
}

LaurentSpacePtr dubrovnik_space() {
  static const LaurentSpacePtr space = std::make_shared<LaurentSpace>(std::vector<std::string>{"A", "z"});
  return space;
}

ZImages dubrovnik_images() {
  auto sp = dubrovnik_space();
  Laurent A = Laurent::generator(sp, "A");
  Laurent Ai = Laurent::generator(sp, "A", -1);
  Laurent z = Laurent::generator(sp, "z");
  Laurent zi = Laurent::generator(sp, "z", -1);
  Laurent delta = (A - Ai) * zi + Laurent::constant(sp, 1);
  ZImages im;
  im.A = A;
  im.A_inv = Ai;
  im.b = Laurent::constant(sp, -1);
  im.c = -z;
  im.cp = -z;
  im.d = z;
  im.v = [delta](int n) { return delta.pow(n - 1); };
  return im;
}

std::vector<std::string> check_z_images(const ZImages& im, int v_depth) {
  std::vector<std::string> bad;
  Laurent one = im.A.one_like();
  if (im.A * im.A_inv != one) bad.push_back("A*A^-1 = 1");
  if (im.d * im.cp != im.b * im.cp * im.cp) bad.push_back("d*c' = b*c'^2");
  if (im.b * im.b != one) bad.push_back("b^2 = 1");
  if (im.d * im.d != im.c * im.cp) bad.push_back("d^2 = c*c'");
  if (im.cp * im.cp * im.cp != im.c * im.cp * im.cp) bad.push_back("c'^3 = c*c'^2");
  for (int n = 1; n <= v_depth; ++n) {
    Laurent lhs = im.c * im.v(n + 1) + (im.A + im.A_inv * im.b + im.d) * im.v(n);
    if (!lhs.is_zero()) bad.push_back("c*v" + std::to_string(n + 1) + " = -(A + A^-1*b + d)*v" + std::to_string(n));
  }
  return bad;
}

Laurent specialize(const ZElement& e, const ZImages& im, int v_depth) {
  auto bad = check_z_images(im, v_depth);
  if (!bad.empty()) throw std::invalid_argument("specialization images violate " + bad.front());
  Laurent out = im.A.zero_like();
  std::map<int, Laurent> vcache;
  for (const auto& [m, c] : e.terms()) {
    Laurent t = im.A.one_like().scaled(c);
    t = t * (m.k >= 0 ? im.A.pow(m.k) : im.A_inv.pow(-m.k));
    t = t * im.b.pow(m.eps) * im.c.pow(m.i) * im.cp.pow(m.j) * im.d.pow(m.delta);
    if (m.n > 0) {
      auto it = vcache.find(m.n);
      if (it == vcache.end()) it = vcache.emplace(m.n, im.v(m.n)).first;
      t = t * it->second;
    }
    out += t;
  }
  return out;
}

}  // namespace multiskein
