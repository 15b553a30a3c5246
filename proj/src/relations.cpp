#include "multiskein/relations.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "multiskein/expression.hpp"

namespace multiskein {

namespace {

// Transcribed relation lists. Each product is written (symbol from resolving
// p, symbol from resolving q). "~x" is the bar of x. Primes follow which
// crossing pattern each symbol is resolved at, see README.
const std::vector<std::pair<int, std::vector<const char*>>> case_lists = {
    {1,
     {"c2' ~d1' = ~d1' c2'", "c2' ~c2' = ~d1' d2'", "b' d2' = ~b' d2'", "b' c2' = ~b' c2'",
      "d2' ~b' = d2' b'", "d1' d2' + d2' ~c1' = d2' d1' + ~c1' d2'",
      "d1' c2' + d2' ~d2' = ~c1' c2' + d2' c1'", "d2' ~d1' = ~c2' c2'", "d2' ~c2' = ~c2' d2'",
      "c2' ~b' = c2' b'", "c2' ~c1' + c1' d2' = ~d2' d2' + c2' d1'",
      "c2' ~d2' + c1' c2' = ~d2' c2' + c2' c1'"}},
    {2,
     {"b' c1' = b c1'",
      "c2' c1 + c1' c2 = c1 c2' + c2 c1'",
      "c2' c2 + c1' c1 = c2 c2' + c1 c1'",
      "b' c2' = b c2'",
      "d1' ~c2 + d2' ~c1 = ~c2 d1' + ~c1 d2'",
      "d2' ~b = d2' b'",
      "b' d2' = ~b d2'",
      "d1' ~c1 + d2' ~c2 = ~c1 d1' + ~c2 d2'",
      "d1' ~b = d1' b'",
      "b' d1' = ~b d1'",
      "c1' c4 + c2' c4 = c3 c1' + c3 c2'",
      "c1' d1 + c2' d1 = ~d1 d2' + ~d1 d1'",
      "c2' c3 + c1' c3 = c4 c1' + c4 c2'",
      "c2' d2 + c1' d2 = ~d2 d2' + ~d2 d1'",
      "d2' ~d1 + d1' ~d1 = d1 c1' + d1 c2'",
      "d2' ~c4 + d1' ~c4 = ~c3 d1' + ~c3 d2'",
      "d2' ~d2 + d1' ~d2 = d2 c1' + d2 c2'",
      "d1' ~c3 + d2' ~c3 = ~c4 d1' + ~c4 d2'"}},
    {3,
     {"c4 ~d1' = c2 c2'", "c4 ~c2' = c2 d2'", "c2 ~d2' + c3 c2' = c1 c2' + c2 c1'",
      "c2 ~c1' + c3 d2' = c1 d2' + c2 d1'", "c2 ~b' = c2 b'", "c2 ~d1' = c3 c2'", "c2 ~c2' = c3 d2'",
      "c4 ~d2' + c1 c2' = c4 c2' + c4 c1'", "c4 ~c1' + c1 d2' = c4 d2' + c4 d1'", "c4 ~b' = c4 b'",
      "d1 ~d2' + d2 c2' = d1 c2' + d1 c1'", "d1 ~c1' + d2 d2' = d1 d2' + d1 d1'", "d1 ~b' = d1 b'",
      "d1 ~d1' = d2 c2'", "d1 ~c2' = d2 d2'"}},
    {4,
     {"c4 ~d2' + c3 ~d1' + c2 c2' + c1 c1' = ~d2' c3 + ~d1' c4 + c2' c2 + c1' c1",
      "c1 b' = c1 b",
      "b c1 = b' c1",
      "c4 ~d1' + c3 ~d2' + c2 c1' + c1 c2' = ~d1' c3 + ~d2' c4 + c2' c1 + c1' c2",
      "c2 b' = c2 b",
      "b c2 = b' c2",
      "d2 ~d1 + d1 ~d1 = ~c1' c3 + ~c2' c4 + d2' c2 + d1' c1",
      "d1 ~c4 + d2 ~c4 = ~c1 d2 + ~c2 d1",
      "b c3 = ~b' c3",
      "b d2 = ~b d2",
      "d2 ~d2 + d1 ~d2 = ~c1' c4 + ~c2' c3 + d1' c2 + d2' c1",
      "d1 ~c3 + d2 ~c3 = ~c1 d1 + ~c2 d2",
      "b c4 = ~b' c4",
      "b d1 = ~b d1",
      "c3 ~c1' + c4 ~c2' + c2 d2' + c1 d2' = ~d1 d2 + ~d1 d1",
      "c4 ~b' = c3 b",
      "d1 ~c1 + d2 ~c2 = ~c3 d1 + ~c3 d2",
      "d1 ~b = d1 b",
      "d2 ~c1 + d1 ~c2 = ~c4 d1 + ~c4 d2",
      "d2 ~b = d2 b"}},
    {5,
     {"c3 c2 = c4 c2",
      "c3 c3 = c2 c2",
      "c3 d2 = c2 d1",
      "b c3 = b c4",
      "c2 c1 + c4 c2 = c1 c2 + c2 c3",
      "c2 c4 + c4 c3 = c1 c3 + c2 c1",
      "c2 d1 + c4 d1 = c1 d1 + c2 d2",
      "c3 c1 + c1 c2 = c3 c2 + c3 c3",
      "c3 c4 + c1 c4 = c3 c4 + c3 c1",
      "c1 d1 = c4 d2",
      "c4 c3 = c2 c2",
      "c2 c3 = c4 c2",
      "c2 d2 = c4 d1",
      "d2 c2 = d1 c3",
      "d2 c3 = d1 c2",
      "d2 d2 = d1 d1",
      "d2 c1 + d1 c2 = d2 c2 + d2 c3",
      "d1 c4 + d2 c4 = d2 c3 + d2 c1"}},
};

CoefficientSymbol parse_symbol(const std::string& tok) {
  CoefficientSymbol s;
  std::string name = tok;
  if (!name.empty() && name[0] == '~') {
    s.bar = true;
    name = name.substr(1);
  }
  auto b = base_from_name(name);
  if (!b) throw std::logic_error("bad symbol in relation table: " + tok);
  s.base = *b;
  return s;
}

std::vector<std::vector<CoefficientSymbol>> parse_side(const std::string& side) {
  std::vector<std::vector<CoefficientSymbol>> out;
  std::istringstream in(side);
  std::string tok;
  std::vector<CoefficientSymbol> cur;
  while (in >> tok) {
    if (tok == "+") {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(parse_symbol(tok));
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Relation parse_relation(const std::string& text, std::string origin) {
  auto eq = text.find('=');
  Relation r;
  r.origin = std::move(origin);
  r.lhs = parse_side(text.substr(0, eq));
  r.rhs = parse_side(text.substr(eq + 1));
  return r;
}

std::string render_side(const std::vector<std::vector<CoefficientSymbol>>& side) {
  std::string s;
  for (std::size_t i = 0; i < side.size(); ++i) {
    if (i) s += " + ";
    for (std::size_t k = 0; k < side[i].size(); ++k) {
      if (k) s += "*";
      s += to_string(side[i][k]);
    }
  }
  return s;
}

using Side = std::vector<std::vector<CoefficientSymbol>>;

Side sorted_side(Side s) {
  std::sort(s.begin(), s.end());
  return s;
}

Side transform(const Side& side, bool bar1, bool bar2, bool hat1, bool hat2) {
  Side out = side;
  for (auto& term : out) {
    for (std::size_t k = 0; k < term.size(); ++k) {
      bool b = k == 0 ? bar1 : bar2;
      bool h = k == 0 ? hat1 : hat2;
      if (b) term[k] = bar(term[k]);
      if (h) term[k] = plain(hat(term[k]));
    }
  }
  return out;
}

}  // namespace

std::string base_name(Base b) {
  switch (b) {
    case Base::A: return "A";
    case Base::b: return "b";
    case Base::c1: return "c1";
    case Base::c2: return "c2";
    case Base::c3: return "c3";
    case Base::c4: return "c4";
    case Base::d1: return "d1";
    case Base::d2: return "d2";
    case Base::bP: return "b'";
    case Base::c1P: return "c1'";
    case Base::c2P: return "c2'";
    case Base::d1P: return "d1'";
    case Base::d2P: return "d2'";
  }
  return "?";
}

std::optional<Base> base_from_name(const std::string& name) {
  std::string n = name;
  if (n.size() > 1 && n.back() == 'P') n = n.substr(0, n.size() - 1) + "'";
  for (Base b : all_bases)
    if (base_name(b) == n) return b;
  return std::nullopt;
}

bool is_primed(Base b) {
  return b == Base::bP || b == Base::c1P || b == Base::c2P || b == Base::d1P || b == Base::d2P;
}

CoefficientSymbol bar(CoefficientSymbol s) {
  s.bar = !s.bar;
  return s;
}

CoefficientSymbol hat(CoefficientSymbol s) {
  switch (s.base) {
    case Base::c3: s.base = Base::c4; break;
    case Base::c4: s.base = Base::c3; break;
    case Base::d1: s.base = Base::d2; break;
    case Base::d2: s.base = Base::d1; break;
    case Base::d1P: s.base = Base::d2P; break;
    case Base::d2P: s.base = Base::d1P; break;
    default: break;
  }
  s.hat = !s.hat;
  return s;
}

CoefficientSymbol plain(CoefficientSymbol s) {
  s.hat = false;
  return s;
}

std::string to_string(const CoefficientSymbol& s) {
  std::string n = base_name(s.base);
  if (s.hat) n = "hat(" + n + ")";
  return s.bar ? "bar(" + n + ")" : n;
}

SkeinExpansion expansion_for(const CrossingPattern& pattern) {
  using K = SmoothingKind;
  SkeinExpansion x;
  if (pattern.locality == Locality::SameComponent) {
    x.terms = {{K::Eminus, {Base::b}}, {K::E, {Base::c1}},  {K::W, {Base::c2}}, {K::HC, {Base::c3}},
               {K::HT, {Base::c4}},    {K::VC, {Base::d1}}, {K::VT, {Base::d2}}};
  } else {
    x.terms = {{K::Eminus, {Base::bP}}, {K::E, {Base::c1P}}, {K::W, {Base::c2P}}, {K::S, {Base::d1P}},
               {K::N, {Base::d2P}}};
  }
  if (pattern.sign < 0) {
    x.resolved = K::Eminus;
    x.terms[0].first = K::Eplus;
    for (auto& t : x.terms) t.second = bar(t.second);
  }
  return x;
}

std::string to_string(const Relation& r) {
  switch (r.kind) {
    case RelationKind::VIdentity:
      return "A*v(n) + A^-1*b*v(n) + (c1 + c2 + c3 + c4)*v(n+1) + (d1 + d2)*v(n) = 0";
    default:
      return render_side(r.lhs) + " = " + render_side(r.rhs);
  }
}

bool same_relation(const Relation& a, const Relation& b) {
  if (a.kind != b.kind) return false;
  auto al = sorted_side(a.lhs), ar = sorted_side(a.rhs);
  auto bl = sorted_side(b.lhs), br = sorted_side(b.rhs);
  return (al == bl && ar == br) || (al == br && ar == bl);
}

std::vector<Relation> complete(const Relation& r) {
  std::vector<Relation> out;
  for (int mask = 0; mask < 16; ++mask) {
    bool b1 = mask & 1, b2 = mask & 2, h1 = mask & 4, h2 = mask & 8;
    Relation v = r;
    v.lhs = transform(r.lhs, b1, b2, h1, h2);
    v.rhs = transform(r.rhs, b1, b2, h1, h2);
    if (mask) {
      v.origin += " [";
      if (b1 || b2) v.origin += std::string("bar ") + (b1 && b2 ? "both" : b1 ? "first" : "second");
      if ((b1 || b2) && (h1 || h2)) v.origin += ", ";
      if (h1 || h2) v.origin += std::string("hat ") + (h1 && h2 ? "both" : h1 ? "first" : "second");
      v.origin += "]";
    }
    bool dup = std::any_of(out.begin(), out.end(), [&](const Relation& o) { return same_relation(o, v); });
    if (!dup) out.push_back(std::move(v));
  }
  return out;
}

const std::vector<Relation>& base_relations() {
  static const std::vector<Relation> rels = [] {
    std::vector<Relation> out;
    for (const auto& [c, list] : case_lists)
      for (std::size_t i = 0; i < list.size(); ++i)
        out.push_back(parse_relation(list[i], "case " + std::to_string(c) + " #" + std::to_string(i + 1)));
    return out;
  }();
  return rels;
}

const std::vector<Relation>& relation_set() {
  static const std::vector<Relation> rels = [] {
    std::vector<Relation> out;
    for (const auto& r : base_relations())
      for (auto& v : complete(r)) {
        bool dup = std::any_of(out.begin(), out.end(), [&](const Relation& o) { return same_relation(o, v); });
        if (!dup) out.push_back(std::move(v));
      }
    for (std::size_t i = 0; i < all_bases.size(); ++i)
      for (std::size_t k = i + 1; k < all_bases.size(); ++k) {
        Relation c;
        c.kind = RelationKind::Commutativity;
        c.origin = "commutativity";
        c.lhs = {{{all_bases[i]}, {all_bases[k]}}};
        c.rhs = {{{all_bases[k]}, {all_bases[i]}}};
        out.push_back(std::move(c));
      }
    Relation dp;
    dp.kind = RelationKind::PrimeEquality;
    dp.origin = "d1' = d2'";
    dp.lhs = {{{Base::d1P}}};
    dp.rhs = {{{Base::d2P}}};
    out.push_back(std::move(dp));
    Relation vi;
    vi.kind = RelationKind::VIdentity;
    vi.origin = "v-identity";
    out.push_back(std::move(vi));
    return out;
  }();
  return rels;
}

// ---- assignments ----

template <class E>
const Scaled<E>& CoefficientAssignment<E>::value(Base b) const {
  auto it = values.find(b);
  if (it == values.end()) throw std::out_of_range("assignment " + name + " has no value for " + base_name(b));
  return it->second;
}

template <class E>
std::optional<Scaled<E>> CoefficientAssignment<E>::inverse(Base b) const {
  auto it = inverses.find(b);
  if (it != inverses.end()) return it->second;
  return value(b).inverse();
}

template <class E>
std::optional<Scaled<E>> CoefficientAssignment<E>::eval(const CoefficientSymbol& s) const {
  const Scaled<E>& x = value(s.base);
  if (!s.bar) return x;
  if (s.base == Base::b || s.base == Base::bP) return inverse(s.base);
  auto u = inverse(is_primed(s.base) ? Base::bP : Base::b);
  if (!u) return std::nullopt;
  return *u * x;
}

template struct CoefficientAssignment<ZElement>;
template struct CoefficientAssignment<Laurent>;

namespace {

template <class E>
std::optional<Scaled<E>> eval_side(const CoefficientAssignment<E>& a,
                                   const std::vector<std::vector<CoefficientSymbol>>& side) {
  Scaled<E> one = a.value(Base::b).one_like();
  Scaled<E> sum = one.zero_like();
  for (const auto& term : side) {
    Scaled<E> p = one;
    for (const auto& s : term) {
      auto v = a.eval(s);
      if (!v) return std::nullopt;
      p = p * *v;
    }
    sum += p;
  }
  return sum;
}

}  // namespace

template <class E>
RelationReport verify_relations(const CoefficientAssignment<E>& a, int v_depth) {
  RelationReport rep;
  rep.assignment = a.name;
  for (const auto& r : relation_set()) {
    if (r.kind == RelationKind::Commutativity) {
      ++rep.skipped;
      continue;
    }
    if (r.kind == RelationKind::VIdentity) {
      auto ainv = a.inverse(Base::A);
      if (!ainv) {
        rep.failed.push_back({to_string(r), "A has no inverse", ""});
        continue;
      }
      Scaled<E> csum = a.value(Base::c1) + a.value(Base::c2) + a.value(Base::c3) + a.value(Base::c4);
      Scaled<E> dsum = a.value(Base::d1) + a.value(Base::d2);
      for (int n = 1; n <= v_depth; ++n) {
        std::string at = "v-identity at n=" + std::to_string(n);
        try {
          Scaled<E> vn = a.v(n);
          Scaled<E> lhs = a.value(Base::A) * vn + *ainv * a.value(Base::b) * vn + csum * a.v(n + 1) + dsum * vn;
          if (lhs.is_zero()) {
            ++rep.passed;
          } else {
            rep.failed.push_back({at, lhs.to_string(), "0"});
          }
        } catch (const std::out_of_range& e) {
          rep.failed.push_back({at, e.what(), ""});
        }
      }
      continue;
    }
    auto l = eval_side(a, r.lhs);
    auto rv = eval_side(a, r.rhs);
    if (!l || !rv) {
      rep.failed.push_back({r.origin + ": " + to_string(r), "missing unit inverse", ""});
    } else if (*l == *rv) {
      ++rep.passed;
    } else {
      rep.failed.push_back({r.origin + ": " + to_string(r), l->to_string(), rv->to_string()});
    }
  }
  return rep;
}

template RelationReport verify_relations(const CoefficientAssignment<ZElement>&, int);
template RelationReport verify_relations(const CoefficientAssignment<Laurent>&, int);

nlohmann::json RelationReport::to_json() const {
  nlohmann::json j;
  j["assignment"] = assignment;
  j["passed"] = passed;
  j["skipped"] = skipped;
  j["ok"] = ok();
  j["failed"] = nlohmann::json::array();
  for (const auto& f : failed) j["failed"].push_back({{"relation", f.relation}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  return j;
}

std::string RelationReport::to_text() const {
  std::ostringstream o;
  o << "assignment " << assignment << ": " << passed << " passed, " << failed.size() << " failed, " << skipped
    << " skipped (commutativity)\n";
  for (const auto& f : failed) o << "  FAIL " << f.relation << "\n    lhs = " << f.lhs << "\n    rhs = " << f.rhs << "\n";
  return o.str();
}

CoefficientAssignment<ZElement> z_assignment() {
  using S = Scaled<ZElement>;
  CoefficientAssignment<ZElement> a;
  a.name = "z";
  const ZElement b = ZElement::b(), c = ZElement::c(), cp = ZElement::cp(), d = ZElement::d();
  a.values[Base::A] = S(ZElement::A(1));
  a.values[Base::b] = S(b);
  a.values[Base::bP] = S(b);
  for (Base x : {Base::c1, Base::c2, Base::c3, Base::c4}) a.values[x] = S(c, 4);
  for (Base x : {Base::d1, Base::d2}) a.values[x] = S(d, 2);
  for (Base x : {Base::c1P, Base::c2P}) a.values[x] = S(cp, 2);
  for (Base x : {Base::d1P, Base::d2P}) a.values[x] = S(b * cp, 2);
  a.v = [](int n) { return S(ZElement::v(n)); };
  return a;
}

CoefficientAssignment<Laurent> kauffman_assignment() {
  using S = Scaled<Laurent>;
  auto sp = dubrovnik_space();
  CoefficientAssignment<Laurent> a;
  a.name = "kauffman";
  Laurent z = Laurent::generator(sp, "z");
  a.values[Base::A] = S(Laurent::generator(sp, "A"));
  a.values[Base::b] = S(Laurent::constant(sp, -1));
  a.values[Base::bP] = S(Laurent::constant(sp, -1));
  for (Base x : {Base::c1, Base::c2, Base::c3, Base::c4}) a.values[x] = S(-z, 4);
  for (Base x : {Base::c1P, Base::c2P}) a.values[x] = S(-z, 2);
  for (Base x : {Base::d1, Base::d2, Base::d1P, Base::d2P}) a.values[x] = S(z, 2);
  ZImages im = dubrovnik_images();
  a.v = [im](int n) { return S(im.v(n)); };
  return a;
}

CoefficientAssignment<Laurent> homfly_assignment() {
  using S = Scaled<Laurent>;
  auto sp = homfly_space();
  CoefficientAssignment<Laurent> a;
  a.name = "homfly";
  Laurent zero(sp);
  for (Base x : all_bases) a.values[x] = S(zero);
  a.values[Base::A] = S(Laurent::constant(sp, 1));
  Laurent b = Laurent::generator(sp, "b");
  Laurent c1 = Laurent::generator(sp, "c1");
  a.values[Base::b] = a.values[Base::bP] = S(b);
  a.values[Base::c1] = a.values[Base::c1P] = S(c1);
  // each further split component multiplies by -(1 + b)/c1
  Laurent ratio = -(Laurent::constant(sp, 1) + b) * Laurent::generator(sp, "c1", -1);
  a.v = [ratio](int n) { return S(ratio.pow(n - 1)); };
  return a;
}

LaurentSpacePtr homfly_space() {
  static const LaurentSpacePtr sp = std::make_shared<LaurentSpace>(std::vector<std::string>{"b", "c1"});
  return sp;
}

std::vector<std::string> preset_names() { return {"z", "kauffman", "homfly"}; }

CoefficientAssignment<Laurent> assignment_from_json(const nlohmann::json& j) {
  using S = Scaled<Laurent>;
  if (!j.contains("generators") || !j["generators"].is_array())
    throw std::invalid_argument("assignment needs a \"generators\" array");
  auto sp = std::make_shared<LaurentSpace>(j["generators"].get<std::vector<std::string>>());
  CoefficientAssignment<Laurent> a;
  a.name = j.value("name", std::string("custom"));
  for (Base x : all_bases) a.values[x] = S(Laurent(sp));
  a.values[Base::A] = S(Laurent::constant(sp, 1));
  if (j.contains("values")) {
    for (const auto& [key, val] : j["values"].items()) {
      auto b = base_from_name(key);
      if (!b) throw std::invalid_argument("unknown coefficient symbol \"" + key + "\"");
      a.values[*b] = parse_expression(val.get<std::string>(), sp);
    }
  }
  std::map<int, S> explicit_v;
  bool recurrence = false;
  if (j.contains("v")) {
    for (const auto& [key, val] : j["v"].items()) {
      if (key == "recurrence") {
        recurrence = val.get<bool>();
        continue;
      }
      int n = std::stoi(key);
      if (n < 1) throw std::invalid_argument("v index must be >= 1");
      explicit_v[n] = parse_expression(val.get<std::string>(), sp);
    }
  }
  if (!explicit_v.count(1)) explicit_v[1] = S(Laurent::constant(sp, 1));
  if (recurrence) {
    S csum = a.values[Base::c1] + a.values[Base::c2] + a.values[Base::c3] + a.values[Base::c4];
    auto cinv = csum.inverse();
    auto ainv = a.values[Base::A].inverse();
    if (!cinv || !ainv)
      throw std::invalid_argument("v recurrence needs A and c1 + c2 + c3 + c4 to be units");
    S step = -(*cinv) * (a.values[Base::A] + *ainv * a.values[Base::b] + a.values[Base::d1] + a.values[Base::d2]);
    S v1 = explicit_v[1];
    a.v = [v1, step](int n) {
      S r = v1;
      for (int i = 1; i < n; ++i) r = r * step;
      return r;
    };
  } else {
    a.v = [explicit_v](int n) {
      auto it = explicit_v.find(n);
      if (it == explicit_v.end()) throw std::out_of_range("assignment gives no value for v" + std::to_string(n));
      return it->second;
    };
  }
  return a;
}

}  // namespace multiskein
