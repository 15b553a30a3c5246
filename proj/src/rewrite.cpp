#include "multiskein/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "multiskein/checked.hpp"

namespace multiskein::rw {

System::System(std::vector<Generator> gens, std::vector<Rule> rules, std::vector<std::string> tiebreak)
    : gens_(std::move(gens)), rules_(std::move(rules)) {
  for (const auto& name : tiebreak) {
    int i = index_of(name);
    if (i < 0) throw std::invalid_argument("tie-break generator '" + name + "' not declared");
    tiebreak_.push_back(i);
  }
  for (const auto& r : rules_) {
    if (r.lhs.size() != gens_.size()) throw std::invalid_argument("rule " + r.name + ": lhs arity mismatch");
    for (const auto& [m, c] : r.rhs)
      if (m.size() != gens_.size()) throw std::invalid_argument("rule " + r.name + ": rhs arity mismatch");
  }
}

int System::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return -1;
}

int System::weight(const Mono& m) const {
  int w = 0;
  for (std::size_t i = 0; i < m.size(); ++i) w += gens_[i].weight * m[i];
  return w;
}

std::vector<int> System::order_key(const Mono& m) const {
  std::vector<int> key{weight(m)};
  for (int t : tiebreak_) key.push_back(m[t]);
  return key;
}

bool System::admissible(const Mono& m) const {
  int ex = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (gens_[i].exclusive) ex += m[i];
  return ex <= 1;
}

std::vector<std::string> System::uncertified_rules() const {
  std::vector<std::string> bad;
  for (const auto& r : rules_) {
    auto k = order_key(r.lhs);
    for (const auto& [m, c] : r.rhs) {
      if (!(order_key(m) < k)) {
        bad.push_back(r.name);
        break;
      }
    }
  }
  return bad;
}

std::string System::render(const Mono& m) const {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += gens_[i].name;
    if (m[i] != 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string System::render(const Poly& p) const {
  if (p.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    std::int64_t c = it->second;
    std::int64_t mag = c < 0 ? -c : c;
    std::string mono = render(it->first);
    std::string body = mono == "1" ? std::to_string(mag) : (mag == 1 ? mono : std::to_string(mag) + "*" + mono);
    if (first) {
      s += c < 0 ? "-" + body : body;
    } else {
      s += (c < 0 ? " - " : " + ") + body;
    }
    first = false;
  }
  return s;
}

bool divides(const Mono& d, const Mono& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Poly poly_of(const Mono& m, std::int64_t c) {
  Poly p;
  if (c != 0) p[m] = c;
  return p;
}

void add_into(Poly& acc, const Poly& p, std::int64_t scale) {
  for (const auto& [m, c] : p) {
    auto& slot = acc[m];
    slot = checked_add(slot, checked_mul(c, scale));
    if (slot == 0) acc.erase(m);
  }
}

Poly mul(const Poly& p, const Mono& m) {
  Poly r;
  for (const auto& [pm, c] : p) {
    Mono x = pm;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += m[i];
    r[x] = c;
  }
  return r;
}

namespace {

Mono quotient(const Mono& m, const Mono& d) {
  Mono q = m;
  for (std::size_t i = 0; i < q.size(); ++i) q[i] -= d[i];
  return q;
}

// Replaces term by the rule's image, in place. Returns the image monomials.
Poly apply_in_place(const System& sys, Poly& p, const Mono& term, int rule) {
  const Rule& r = sys.rules()[rule];
  auto it = p.find(term);
  std::int64_t c = it->second;
  p.erase(it);
  Poly image = mul(r.rhs, quotient(term, r.lhs));
  auto key = sys.order_key(term);
  for (const auto& [m, mc] : image) {
    if (!(sys.order_key(m) < key)) {
      throw TerminationError("rule " + r.name + " does not decrease the order on " + sys.render(term) + " -> " +
                             sys.render(m));
    }
  }
  add_into(p, image, c);
  return image;
}

Poly apply(const System& sys, const Poly& p, const Mono& term, int rule) {
  Poly out = p;
  apply_in_place(sys, out, term, rule);
  return out;
}

int first_rule(const System& sys, const Mono& m) {
  for (std::size_t r = 0; r < sys.rules().size(); ++r)
    if (divides(sys.rules()[r].lhs, m)) return static_cast<int>(r);
  return -1;
}

void check_budget(const System& sys, std::size_t steps, std::size_t max_steps, const Poly& p) {
  if (steps > max_steps)
    throw TerminationError("rewriting exceeded " + std::to_string(max_steps) + " steps; current " + sys.render(p));
}

}  // namespace

std::optional<Step> reduce_once(const System& sys, const Poly& p) {
  const Mono* best = nullptr;
  int best_rule = -1;
  std::vector<int> best_key;
  for (const auto& [m, c] : p) {
    for (std::size_t r = 0; r < sys.rules().size(); ++r) {
      if (!divides(sys.rules()[r].lhs, m)) continue;
      auto key = sys.order_key(m);
      if (!best || best_key < key || (best_key == key && *best < m)) {
        best = &m;
        best_rule = static_cast<int>(r);
        best_key = key;
      }
      break;
    }
  }
  if (!best) return std::nullopt;
  Step s;
  s.term = *best;
  s.rule = best_rule;
  s.result = apply(sys, p, *best, best_rule);
  return s;
}

// Same strategy as repeated reduce_once (greatest reducible term first), but
// terms are visited once in descending order: images are always smaller.
Poly normal_form(const System& sys, const Poly& p, std::size_t max_steps) {
  using Key = std::pair<std::vector<int>, Mono>;
  std::map<Key, std::int64_t, std::greater<>> todo;
  auto add = [&](const Mono& m, std::int64_t c) {
    auto& slot = todo[{sys.order_key(m), m}];
    slot = checked_add(slot, c);
  };
  for (const auto& [m, c] : p) add(m, c);
  Poly out;
  std::size_t steps = 0;
  while (!todo.empty()) {
    auto it = todo.begin();
    Mono m = it->first.second;
    std::int64_t c = it->second;
    todo.erase(it);
    if (c == 0) continue;
    int r = first_rule(sys, m);
    if (r < 0) {
      out[m] = c;
      continue;
    }
    Poly tmp{{m, c}};
    for (const auto& [im, ic] : apply_in_place(sys, tmp, m, r)) add(im, checked_mul(ic, c));
    if (++steps > max_steps) {
      for (const auto& [k, kc] : todo) out[k.second] = kc;
      check_budget(sys, steps, max_steps, out);
    }
  }
  return out;
}

// Picks a random reducible term, then a random rule that applies to it.
Poly normal_form_random(const System& sys, const Poly& p, std::mt19937_64& rng, std::size_t max_steps) {
  Poly cur = p;
  std::vector<Mono> redexes;
  for (const auto& [m, c] : cur)
    if (first_rule(sys, m) >= 0) redexes.push_back(m);
  std::size_t steps = 0;
  while (!redexes.empty()) {
    std::size_t i = rng() % redexes.size();
    Mono t = std::move(redexes[i]);
    redexes[i] = std::move(redexes.back());
    redexes.pop_back();
    if (!cur.count(t)) continue;  // cancelled meanwhile
    std::vector<int> rules;
    for (std::size_t r = 0; r < sys.rules().size(); ++r)
      if (divides(sys.rules()[r].lhs, t)) rules.push_back(static_cast<int>(r));
    for (const auto& [m, c] : apply_in_place(sys, cur, t, rules[rng() % rules.size()]))
      if (cur.count(m) && first_rule(sys, m) >= 0) redexes.push_back(m);
    check_budget(sys, ++steps, max_steps, cur);
  }
  return cur;
}

namespace {

Mono lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool shares_variable(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return true;
  return false;
}

// proper divisors of m other than 1
void proper_divisors(const Mono& m, std::size_t at, Mono& cur, std::vector<Mono>& out) {
  if (at == m.size()) {
    bool one = std::all_of(cur.begin(), cur.end(), [](int e) { return e == 0; });
    if (!one && cur != m) out.push_back(cur);
    return;
  }
  for (int e = 0; e <= m[at]; ++e) {
    cur[at] = e;
    proper_divisors(m, at + 1, cur, out);
  }
  cur[at] = 0;
}

CriticalPair make_pair_at(const System& sys, int r1, int r2, const Mono& overlap) {
  CriticalPair cp;
  cp.rule1 = r1;
  cp.rule2 = r2;
  cp.overlap = overlap;
  const Rule& a = sys.rules()[r1];
  const Rule& b = sys.rules()[r2];
  cp.reduct1 = mul(a.rhs, quotient(overlap, a.lhs));
  cp.reduct2 = mul(b.rhs, quotient(overlap, b.lhs));
  cp.normal1 = normal_form(sys, cp.reduct1);
  cp.normal2 = normal_form(sys, cp.reduct2);
  cp.joinable = cp.normal1 == cp.normal2;
  return cp;
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const System& sys) {
  std::vector<CriticalPair> out;
  const auto& rules = sys.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    // self-overlaps l*l/g for proper divisors g
    std::vector<Mono> divs;
    Mono scratch = sys.one();
    proper_divisors(rules[i].lhs, 0, scratch, divs);
    for (const auto& g : divs) {
      Mono m = rules[i].lhs;
      for (std::size_t k = 0; k < m.size(); ++k) m[k] = 2 * m[k] - g[k];
      if (!sys.admissible(m)) continue;
      out.push_back(make_pair_at(sys, static_cast<int>(i), static_cast<int>(i), m));
    }
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      if (!shares_variable(rules[i].lhs, rules[j].lhs)) continue;
      Mono m = lcm(rules[i].lhs, rules[j].lhs);
      if (!sys.admissible(m)) continue;
      out.push_back(make_pair_at(sys, static_cast<int>(i), static_cast<int>(j), m));
    }
  }
  return out;
}

bool ConfluenceReport::confluent() const { return uncertified.empty() && non_joinable() == 0; }

std::size_t ConfluenceReport::non_joinable() const {
  return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return !p.joinable; }));
}

nlohmann::json ConfluenceReport::to_json(const System& sys) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : pairs) {
    arr.push_back({{"rules", {sys.rules()[p.rule1].name, sys.rules()[p.rule2].name}},
                   {"overlap", sys.render(p.overlap)},
                   {"reduct1", sys.render(p.reduct1)},
                   {"reduct2", sys.render(p.reduct2)},
                   {"normal1", sys.render(p.normal1)},
                   {"normal2", sys.render(p.normal2)},
                   {"joinable", p.joinable}});
  }
  return {{"confluent", confluent()},
          {"pairs", arr},
          {"non_joinable", non_joinable()},
          {"uncertified_rules", uncertified}};
}

std::string ConfluenceReport::to_text(const System& sys) const {
  std::ostringstream os;
  for (const auto& name : uncertified) os << "rule " << name << " does not strictly decrease the weight order\n";
  for (const auto& p : pairs) {
    os << (p.joinable ? "joinable      " : "NOT joinable  ") << sys.render(p.overlap) << "  ["
       << sys.rules()[p.rule1].name << " / " << sys.rules()[p.rule2].name << "]  " << sys.render(p.normal1)
       << (p.joinable ? " == " : " != ") << sys.render(p.normal2) << "\n";
  }
  os << pairs.size() << " critical pairs, " << non_joinable() << " not joinable: "
     << (confluent() ? "locally confluent" : "NOT locally confluent") << "\n";
  return os.str();
}

ConfluenceReport check_local_confluence(const System& sys) {
  ConfluenceReport rep;
  rep.uncertified = sys.uncertified_rules();
  if (!rep.uncertified.empty()) return rep;
  rep.pairs = critical_pairs(sys);
  return rep;
}

namespace {

struct Builder {
  std::vector<Generator> gens;

  Mono mono(std::initializer_list<std::pair<const char*, int>> parts) const {
    Mono m(gens.size(), 0);
    for (const auto& [name, e] : parts) {
      auto it = std::find_if(gens.begin(), gens.end(), [&](const Generator& g) { return g.name == name; });
      if (it == gens.end()) throw std::logic_error(std::string("no generator ") + name);
      m[it - gens.begin()] += e;
    }
    return m;
  }
};

}  // namespace

System skein_system(bool with_cubic, int v_depth) {
  Builder B;
  B.gens = {{"A", 1, false}, {"Ai", 1, false}, {"b", 1, false}, {"c", 2, false}, {"cp", 2, false}, {"d", 4, false}};
  for (int n = 1; n <= v_depth + 1; ++n) B.gens.push_back({"v" + std::to_string(n), 8 * (n - 1), true});

  std::vector<Rule> rules;
  rules.push_back({"dc'->bc'c'", B.mono({{"d", 1}, {"cp", 1}}), poly_of(B.mono({{"b", 1}, {"cp", 2}}))});
  rules.push_back({"bb->1", B.mono({{"b", 2}}), poly_of(B.mono({}))});
  rules.push_back({"dd->cc'", B.mono({{"d", 2}}), poly_of(B.mono({{"c", 1}, {"cp", 1}}))});
  rules.push_back({"AA^-1->1", B.mono({{"A", 1}, {"Ai", 1}}), poly_of(B.mono({}))});
  if (with_cubic) rules.push_back({"c'c'c'->cc'c'", B.mono({{"cp", 3}}), poly_of(B.mono({{"c", 1}, {"cp", 2}}))});
  for (int n = 1; n <= v_depth; ++n) {
    std::string vn = "v" + std::to_string(n);
    std::string vn1 = "v" + std::to_string(n + 1);
    Poly rhs;
    rhs[B.mono({{"A", 1}, {vn.c_str(), 1}})] = -1;
    rhs[B.mono({{"Ai", 1}, {"b", 1}, {vn.c_str(), 1}})] = -1;
    rhs[B.mono({{"d", 1}, {vn.c_str(), 1}})] = -1;
    rules.push_back({"cv" + std::to_string(n + 1) + "->-(A+A^-1b+d)v" + std::to_string(n),
                     B.mono({{"c", 1}, {vn1.c_str(), 1}}), rhs});
  }
  std::vector<std::string> tiebreak;
  if (with_cubic) tiebreak.push_back("cp");
  return System(B.gens, rules, tiebreak);
}

namespace {

// Resolves a generator key inside a rule. Family keys: "v" means v_n, "v+1" means v_{n+1}.
int family_index(const std::vector<Generator>& gens, const std::string& key, const std::string& family, int n) {
  std::string base = key;
  int shift = 0;
  auto plus = key.find('+');
  if (plus != std::string::npos) {
    base = key.substr(0, plus);
    shift = std::stoi(key.substr(plus + 1));
  }
  if (base != family) return -1;
  std::string name = family + std::to_string(n + shift);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return static_cast<int>(i);
  return -1;
}

Mono parse_mono(const std::vector<Generator>& gens, const nlohmann::json& j, const std::string& family, int n) {
  Mono m(gens.size(), 0);
  for (const auto& [key, val] : j.items()) {
    int idx = -1;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == key) idx = static_cast<int>(i);
    if (idx < 0 && !family.empty()) idx = family_index(gens, key, family, n);
    if (idx < 0) throw std::invalid_argument("unknown generator '" + key + "' in rule");
    int e = val.get<int>();
    if (e < 0) throw std::invalid_argument("negative exponent in rule monomial");
    m[idx] += e;
  }
  return m;
}

bool mentions_family(const nlohmann::json& rule, const std::string& family) {
  if (family.empty()) return false;
  auto test = [&](const nlohmann::json& mono) {
    for (const auto& [key, val] : mono.items())
      if (key == family || key.rfind(family + "+", 0) == 0) return true;
    return false;
  };
  if (test(rule.at("lhs"))) return true;
  for (const auto& t : rule.at("rhs"))
    if (test(t.at("mono"))) return true;
  return false;
}

}  // namespace

System system_from_json(const nlohmann::json& j, int v_depth) {
  std::vector<Generator> gens;
  std::string family;
  for (const auto& g : j.at("generators")) {
    std::string name = g.at("name").get<std::string>();
    if (g.contains("family") && g.at("family").get<bool>()) {
      if (!family.empty()) throw std::invalid_argument("at most one generator family");
      family = name;
      int step = g.value("weight_step", 8);
      int base = g.value("weight", 0);
      for (int n = 1; n <= v_depth + 1; ++n) gens.push_back({name + std::to_string(n), base + step * (n - 1), true});
    } else {
      gens.push_back({name, g.value("weight", 1), g.value("exclusive", false)});
    }
  }
  std::vector<Rule> rules;
  for (const auto& r : j.at("rules")) {
    std::string name = r.value("name", "rule" + std::to_string(rules.size() + 1));
    bool fam = mentions_family(r, family);
    int lo = fam ? 1 : 0;
    int hi = fam ? v_depth : 0;
    for (int n = lo; n <= hi; ++n) {
      Rule rule;
      rule.name = fam ? name + "[n=" + std::to_string(n) + "]" : name;
      rule.lhs = parse_mono(gens, r.at("lhs"), family, n);
      for (const auto& t : r.at("rhs")) {
        Mono m = parse_mono(gens, t.at("mono"), family, n);
        auto& slot = rule.rhs[m];
        slot = checked_add(slot, t.at("coeff").get<std::int64_t>());
        if (slot == 0) rule.rhs.erase(m);
      }
      rules.push_back(std::move(rule));
    }
  }
  std::vector<std::string> tiebreak;
  if (j.contains("tiebreak")) tiebreak = j.at("tiebreak").get<std::vector<std::string>>();
  return System(gens, rules, tiebreak);
}

Poly from_raw_z(const System& sys, const RawZ& raw) {
  auto idx = [&](const std::string& name) {
    int i = sys.index_of(name);
    if (i < 0) throw std::invalid_argument("system lacks generator " + name);
    return i;
  };
  int iA = idx("A"), iAi = idx("Ai"), ib = idx("b"), ic = idx("c"), icp = idx("cp"), id = idx("d");
  Poly p;
  for (const auto& [m, c] : raw) {
    Mono x = sys.one();
    if (m.k >= 0) {
      x[iA] = m.k;
    } else {
      x[iAi] = -m.k;
    }
    x[ib] = m.eps;
    x[ic] = m.i;
    x[icp] = m.j;
    x[id] = m.delta;
    if (m.n > 0) x[idx("v" + std::to_string(m.n))] = 1;
    auto& slot = p[x];
    slot = checked_add(slot, c);
    if (slot == 0) p.erase(x);
  }
  return p;
}

Poly from_zelement(const System& sys, const ZElement& e) {
  RawZ raw(e.terms().begin(), e.terms().end());
  return from_raw_z(sys, raw);
}

}  // namespace multiskein::rw
