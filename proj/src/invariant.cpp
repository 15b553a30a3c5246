#include "multiskein/invariant.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace multiskein {

template <class E>
Evaluator<E>::Evaluator(EvaluationConfig<E> cfg) : cfg_(std::move(cfg)) {
  for (Base b : all_bases)
    for (bool bar : {false, true}) {
      auto v = cfg_.assignment.eval({b, bar});
      if (v) symbols_[{b, bar}] = *v;
    }
  a_ = cfg_.assignment.value(Base::A);
  if (auto inv = cfg_.assignment.inverse(Base::A)) {
    a_inv_ = *inv;
    has_a_inv_ = true;
  }
}

template <class E>
const Scaled<E>& Evaluator<E>::symbol_value(const CoefficientSymbol& s) const {
  auto it = symbols_.find({s.base, s.bar});
  if (it == symbols_.end())
    throw std::domain_error("assignment " + cfg_.assignment.name + " lacks the unit needed for " + to_string(s));
  return it->second;
}

template <class E>
Scaled<E> Evaluator<E>::a_power(int k) const {
  if (k < 0 && !has_a_inv_) throw std::domain_error("A is not a unit in assignment " + cfg_.assignment.name);
  const Scaled<E>& x = k < 0 ? a_inv_ : a_;
  Scaled<E> r = a_.one_like();
  for (int i = 0; i < std::abs(k); ++i) r = r * x;
  return r;
}

template <class E>
Scaled<E> Evaluator<E>::base_value(const MarkedDiagram& d) const {
  return a_power(writhe(d)) * cfg_.assignment.v(d.component_count());
}

template <class E>
std::vector<int> Evaluator<E>::memo_key(const MarkedDiagram& d) const {
  return cfg_.memo == MemoMode::Cross ? canonical_key(d) : d.key();
}

template <class E>
std::vector<ResolvedTerm<E>> Evaluator<E>::resolve(const MarkedDiagram& d, int p) const {
  if (p < 0 || p >= d.crossing_count()) throw DiagramError("unknown crossing " + std::to_string(p));
  SkeinExpansion ex = expansion_for(classify(d, p));
  std::vector<ResolvedTerm<E>> out;
  out.reserve(ex.terms.size());
  for (const auto& [kind, sym] : ex.terms) {
    ResolvedTerm<E> t{kind, sym, -symbol_value(sym), {}, {}};
    if (kind == SmoothingKind::Eplus || kind == SmoothingKind::Eminus) {
      t.diagram = switch_crossing(d, p, &t.crossing_map);
    } else {
      t.diagram = smooth(d, p, kind, cfg_.fault, &t.crossing_map);
    }
    out.push_back(std::move(t));
  }
  return out;
}

template <class E>
Scaled<E> Evaluator<E>::eval(const MarkedDiagram& d, int forced) {
  if (cfg_.crossing_cap > 0 && d.crossing_count() > cfg_.crossing_cap)
    throw CapExceeded("diagram has " + std::to_string(d.crossing_count()) + " crossings, cap is " +
                      std::to_string(cfg_.crossing_cap));
  const bool use_memo = cfg_.memo != MemoMode::Off && forced < 0;
  std::vector<int> key;
  if (use_memo) {
    key = memo_key(d);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  int p = forced;
  if (p < 0) {
    auto bad = bad_points(d);
    if (!bad.empty()) p = bad.front();
  }
  Scaled<E> result;
  if (p < 0) {
    result = base_value(d);
  } else {
    ++expanded_;
    // children sharing a coefficient are summed before the multiplication
    std::vector<std::pair<Scaled<E>, Scaled<E>>> groups;
    for (auto& t : resolve(d, p)) {
      Scaled<E> v = eval(t.diagram, -1);
      auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& x) { return x.first == t.coeff; });
      if (g == groups.end()) {
        groups.emplace_back(std::move(t.coeff), std::move(v));
      } else {
        g->second += v;
      }
    }
    result = a_.zero_like();
    for (const auto& [c, v] : groups)
      if (!c.is_zero()) result += c * v;
  }
  if (use_memo) memo_.emplace(std::move(key), result);
  return result;
}

template <class E>
Scaled<E> Evaluator<E>::f(const MarkedDiagram& d) {
  return eval(d, -1);
}

template <class E>
Scaled<E> Evaluator<E>::F(const MarkedDiagram& d) {
  return a_power(-writhe(d)) * f(d);
}

template <class E>
Scaled<E> Evaluator<E>::f_at(const MarkedDiagram& d, int p) {
  if (p < 0 || p >= d.crossing_count()) throw DiagramError("unknown crossing " + std::to_string(p));
  return eval(d, p);
}

template <class E>
nlohmann::json Evaluator<E>::trace(const MarkedDiagram& d, int max_depth) {
  nlohmann::json node;
  Index idx = index_of(d);
  node["pd"] = to_pd(d);
  node["index"] = {idx.c, idx.d};
  node["value"] = f(d).to_string();
  auto bad = bad_points(d);
  if (bad.empty() || max_depth <= 0) return node;
  int p = bad.front();
  node["crossing"] = p;
  node["pattern"] = to_string(classify(d, p));
  node["children"] = nlohmann::json::array();
  for (const auto& t : resolve(d, p)) {
    node["children"].push_back({{"kind", to_string(t.kind)},
                                {"symbol", to_string(t.symbol)},
                                {"coefficient", t.coeff.to_string()},
                                {"node", trace(t.diagram, max_depth - 1)}});
  }
  return node;
}

template class Evaluator<ZElement>;
template class Evaluator<Laurent>;

template <class E>
Scaled<E> evaluate_f(const MarkedDiagram& d, const EvaluationConfig<E>& cfg) {
  Evaluator<E> ev(cfg);
  if (cfg.policy == ResolutionPolicy::SpecifiedCrossing && d.crossing_count() > 0) return ev.f_at(d, cfg.crossing);
  return ev.f(d);
}

template <class E>
Scaled<E> evaluate_F(const MarkedDiagram& d, const EvaluationConfig<E>& cfg) {
  Scaled<E> f = evaluate_f(d, cfg);
  const auto& a = cfg.assignment;
  int w = writhe(d);
  auto unit = w > 0 ? a.inverse(Base::A) : std::optional<Scaled<E>>(a.value(Base::A));
  if (!unit) throw std::domain_error("writhe normalization needs A to be a unit");
  for (int i = 0; i < std::abs(w); ++i) f = f * *unit;
  return f;
}

template <class E>
std::vector<ResolvedTerm<E>> resolve_at(const MarkedDiagram& d, int p, const EvaluationConfig<E>& cfg) {
  return Evaluator<E>(cfg).resolve(d, p);
}

template Scaled<ZElement> evaluate_f(const MarkedDiagram&, const EvaluationConfig<ZElement>&);
template Scaled<Laurent> evaluate_f(const MarkedDiagram&, const EvaluationConfig<Laurent>&);
template Scaled<ZElement> evaluate_F(const MarkedDiagram&, const EvaluationConfig<ZElement>&);
template Scaled<Laurent> evaluate_F(const MarkedDiagram&, const EvaluationConfig<Laurent>&);
template std::vector<ResolvedTerm<ZElement>> resolve_at(const MarkedDiagram&, int, const EvaluationConfig<ZElement>&);
template std::vector<ResolvedTerm<Laurent>> resolve_at(const MarkedDiagram&, int, const EvaluationConfig<Laurent>&);

ZElement integral(const Scaled<ZElement>& x) {
  if (x.den != 1) throw std::logic_error("non-integral value in Z: " + x.to_string());
  return x.num;
}

ZElement evaluate_f_z(const MarkedDiagram& d) {
  return integral(evaluate_f(d, EvaluationConfig<ZElement>{z_assignment()}));
}

ZElement evaluate_F_z(const MarkedDiagram& d) {
  return integral(evaluate_F(d, EvaluationConfig<ZElement>{z_assignment()}));
}

namespace {

template <class E>
EvaluationConfig<E> exact_memo(EvaluationConfig<E> cfg) {
  if (cfg.memo == MemoMode::Cross) cfg.memo = MemoMode::Exact;
  return cfg;
}

}  // namespace

template <class E>
OrderReport check_order_independence(const MarkedDiagram& d, const EvaluationConfig<E>& cfg) {
  Evaluator<E> ev(exact_memo(cfg));
  OrderReport rep;
  auto two_step = [&](int p, int q) {
    Scaled<E> sum = ev.config().assignment.value(Base::A).zero_like();
    for (const auto& t : ev.resolve(d, p)) {
      int q2 = t.crossing_map.at(q);
      for (const auto& u : ev.resolve(t.diagram, q2)) sum += t.coeff * u.coeff * ev.f(u.diagram);
    }
    return sum;
  };
  for (int p = 0; p < d.crossing_count(); ++p)
    for (int q = p + 1; q < d.crossing_count(); ++q) {
      Scaled<E> pq = two_step(p, q), qp = two_step(q, p);
      ++rep.pairs_checked;
      if (pq != qp) rep.mismatches.push_back({p, q, pq.to_string(), qp.to_string()});
    }
  return rep;
}

template <class E>
MarkingReport check_marking_independence(const MarkedDiagram& d, const EvaluationConfig<E>& cfg) {
  Evaluator<E> ev(exact_memo(cfg));
  MarkingReport rep;
  const Scaled<E> ref = ev.f(d);
  auto check = [&](const MarkedDiagram& m, const std::string& what) {
    ++rep.markings_checked;
    Scaled<E> v = ev.f(m);
    if (v != ref) rep.mismatches.push_back(what + ": " + v.to_string() + " vs " + ref.to_string());
  };
  for (int k = 0; k < d.strand_component_count(); ++k)
    for (int pos = 1; pos < d.component_size(k); ++pos)
      check(move_basepoint(d, k, pos), "base point " + std::to_string(k) + "@" + std::to_string(pos));
  const int n = d.strand_component_count();
  if (n > 1) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
      std::string name = "order";
      for (int x : perm) name += " " + std::to_string(x);
      check(reorder_components(d, perm), name);
    }
  }
  for (int p = 0; p < d.crossing_count(); ++p) {
    ++rep.resolutions_checked;
    Scaled<E> v = ev.f_at(d, p);
    if (v != ref) rep.mismatches.push_back("resolve at " + std::to_string(p) + ": " + v.to_string());
  }
  return rep;
}

template OrderReport check_order_independence(const MarkedDiagram&, const EvaluationConfig<ZElement>&);
template OrderReport check_order_independence(const MarkedDiagram&, const EvaluationConfig<Laurent>&);
template MarkingReport check_marking_independence(const MarkedDiagram&, const EvaluationConfig<ZElement>&);
template MarkingReport check_marking_independence(const MarkedDiagram&, const EvaluationConfig<Laurent>&);

// ---- random diagrams ----

namespace {

int pick(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

// One random move; returns false when the chosen kind has no site.
bool random_move(MarkedDiagram& d, std::mt19937_64& rng, const RandomDiagramOptions& opt, std::string& what) {
  enum Kind { R1, R1Loop, R2, R3, UndoR1, UndoR2, Switch };
  std::vector<Kind> kinds;
  const int x = d.crossing_count();
  if (x + 1 <= opt.max_crossings && d.edge_count() > 0) kinds.push_back(R1);
  if (x + 1 <= opt.max_crossings && d.loop_count() > 0) kinds.push_back(R1Loop);
  if (x + 2 <= opt.max_crossings && d.edge_count() > 0) kinds.push_back(R2);
  if (x > 0) {
    kinds.push_back(R3);
    kinds.push_back(UndoR1);
    kinds.push_back(UndoR2);
    if (opt.allow_switch) kinds.push_back(Switch);
  }
  if (kinds.empty()) return false;
  Side side = pick(rng, 2) ? Side::Left : Side::Right;
  int sign = pick(rng, 2) ? 1 : -1;
  switch (kinds[pick(rng, static_cast<int>(kinds.size()))]) {
    case R1: {
      int e = pick(rng, d.edge_count());
      d = apply_r1(d, e, sign, side);
      what = "r1 arc " + std::to_string(e) + (sign > 0 ? " +" : " -");
      return true;
    }
    case R1Loop:
      d = apply_r1_loop(d, sign, side);
      what = std::string("r1 loop") + (sign > 0 ? " +" : " -");
      return true;
    case R2: {
      auto fs = faces(d);
      int f = pick(rng, static_cast<int>(fs.size()));
      int n = static_cast<int>(fs[f].size());
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && fs[f][i].edge != fs[f][j].edge) pairs.emplace_back(i, j);
      if (pairs.empty()) return false;
      auto [i, j] = pairs[pick(rng, static_cast<int>(pairs.size()))];
      bool over = pick(rng, 2);
      d = apply_r2(d, f, i, j, over);
      what = "r2 face " + std::to_string(f) + " sides " + std::to_string(i) + "," + std::to_string(j);
      return true;
    }
    case R3: {
      auto sites = r3_sites(d);
      if (sites.empty()) return false;
      int f = sites[pick(rng, static_cast<int>(sites.size()))];
      d = apply_r3(d, f);
      what = "r3 face " + std::to_string(f);
      return true;
    }
    case UndoR1: {
      auto sites = r1_undo_sites(d);
      if (sites.empty()) return false;
      int f = sites[pick(rng, static_cast<int>(sites.size()))];
      d = undo_r1(d, f);
      what = "undo r1 face " + std::to_string(f);
      return true;
    }
    case UndoR2: {
      auto sites = r2_undo_sites(d);
      if (sites.empty()) return false;
      int f = sites[pick(rng, static_cast<int>(sites.size()))];
      d = undo_r2(d, f);
      what = "undo r2 face " + std::to_string(f);
      return true;
    }
    case Switch: {
      int p = pick(rng, x);
      d = switch_crossing(d, p);
      what = "switch " + std::to_string(p);
      return true;
    }
  }
  return false;
}

}  // namespace

RandomDiagram random_moves(const MarkedDiagram& start, std::uint64_t seed, const RandomDiagramOptions& opt) {
  std::mt19937_64 rng(seed);
  RandomDiagram r;
  r.start = start;
  r.result = start;
  // a few extra attempts cover kinds that had no site
  for (int attempt = 0; static_cast<int>(r.moves.size()) < opt.moves && attempt < 4 * opt.moves + 8; ++attempt) {
    std::string what;
    if (random_move(r.result, rng, opt, what)) r.moves.push_back(what);
  }
  return r;
}

RandomDiagram random_diagram(std::uint64_t seed, const RandomDiagramOptions& opt) {
  std::vector<const CensusEntry*> pool;
  for (const auto& e : census())
    if (census_diagram(e.name).crossing_count() <= opt.max_crossings) pool.push_back(&e);
  std::mt19937_64 rng(seed);
  const CensusEntry& e = *pool[pick(rng, static_cast<int>(pool.size()))];
  RandomDiagram r = random_moves(census_diagram(e.name), rng(), opt);
  r.seed_name = e.name;
  return r;
}

// ---- fuzz ----

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MULTISKEIN_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

FuzzSummary fuzz(const FuzzOptions& opt) {
  FuzzSummary sum;
  sum.trials = opt.trials;
  sum.results.resize(opt.trials);
  const int workers = std::min(worker_count(opt.threads), std::max(1, opt.trials));
  auto run = [&](int w) {
    EvaluationConfig<ZElement> cfg{z_assignment()};
    cfg.fault = opt.fault;
    Evaluator<ZElement> ev(cfg);
    for (int i = w; i < opt.trials; i += workers) {
      FuzzTrial& t = sum.results[i];
      t.index = i;
      std::uint64_t seed = opt.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i);
      try {
        RandomDiagram r = random_diagram(seed, opt.diagram);
        t.seed_name = r.seed_name;
        t.crossings = r.result.crossing_count();
        t.moves = static_cast<int>(r.moves.size());
        Scaled<ZElement> a = ev.F(r.start), b = ev.F(r.result);
        if (a != b) {
          t.ok = false;
          t.detail = "F changed: " + to_pd(r.start) + " -> " + to_pd(r.result) + ": " + a.to_string() + " vs " +
                     b.to_string();
        }
      } catch (const std::exception& ex) {
        t.ok = false;
        t.detail = std::string("error: ") + ex.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& th : pool) th.join();
  for (const auto& t : sum.results)
    if (!t.ok) ++sum.failures;
  return sum;
}

nlohmann::json FuzzSummary::to_json() const {
  nlohmann::json j;
  j["trials"] = trials;
  j["failures"] = failures;
  j["results"] = nlohmann::json::array();
  for (const auto& t : results) {
    nlohmann::json r{{"index", t.index},
                     {"seed_diagram", t.seed_name},
                     {"crossings", t.crossings},
                     {"moves", t.moves},
                     {"ok", t.ok}};
    if (!t.detail.empty()) r["detail"] = t.detail;
    j["results"].push_back(std::move(r));
  }
  return j;
}

std::string FuzzSummary::to_text() const {
  std::ostringstream o;
  o << "trials " << trials << ", failures " << failures << "\n";
  for (const auto& t : results)
    if (!t.ok) o << "  trial " << t.index << " (" << t.seed_name << "): " << t.detail << "\n";
  return o.str();
}

DegreeBounds degree_bounds(const ZElement& x) {
  DegreeBounds b;
  for (const auto& [m, c] : x.terms()) {
    b.b = std::max(b.b, m.eps);
    b.d = std::max(b.d, m.delta);
    b.cp = std::max(b.cp, m.j);
  }
  return b;
}

}  // namespace multiskein
