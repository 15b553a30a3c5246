#include "multiskein/oracle.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "multiskein/invariant.hpp"
#include "multiskein/relations.hpp"
#include "multiskein/zring.hpp"

// Deliberately uses nothing from the smoothing or evaluator code: the
// oracles switch and smooth on their own edge-label representation.

namespace multiskein::oracle {

namespace {

struct Place {
  int crossing;
  int slot;
};

std::map<int, std::vector<Place>> places(const Link& l) {
  std::map<int, std::vector<Place>> out;
  for (int x = 0; x < static_cast<int>(l.crossings.size()); ++x)
    for (int s = 0; s < 4; ++s) out[l.crossings[x].edge[s]].push_back({x, s});
  return out;
}

bool is_in(const Crossing& c, int s) { return s == c.under_in || s == c.over_in; }

// Place where edge e arrives (its head).
Place head_of(const Link& l, const std::map<int, std::vector<Place>>& pl, int e) {
  for (const Place& p : pl.at(e))
    if (is_in(l.crossings[p.crossing], p.slot)) return p;
  throw std::logic_error("oracle: arc without a head");
}

struct Walk {
  int components = 0;
  int first_bad = -1;  // first crossing met on its under strand, -1 if descending
};

// Components in order of their smallest label, each from that label along
// the orientation.
Walk walk(const Link& l) {
  Walk w;
  auto pl = places(l);
  std::map<int, bool> done;
  std::vector<char> seen(l.crossings.size(), 0);
  for (const auto& [e0, unused] : pl) {
    if (done[e0]) continue;
    ++w.components;
    int e = e0;
    do {
      done[e] = true;
      Place h = head_of(l, pl, e);
      if (!seen[h.crossing]) {
        seen[h.crossing] = 1;
        if (h.slot % 2 == 0 && w.first_bad < 0) w.first_bad = h.crossing;
      }
      e = l.crossings[h.crossing].edge[(h.slot + 2) % 4];
    } while (e != e0);
  }
  return w;
}

// Drops crossing x and joins the slot pairs; the rest keeps its labels.
Link smooth_pairs(const Link& l, int x, std::array<std::pair<int, int>, 2> pairs) {
  Link out;
  out.loops = l.loops;
  const Crossing& c = l.crossings[x];
  for (int y = 0; y < static_cast<int>(l.crossings.size()); ++y)
    if (y != x) out.crossings.push_back(l.crossings[y]);
  std::vector<std::pair<int, int>> joins{{c.edge[pairs[0].first], c.edge[pairs[0].second]},
                                         {c.edge[pairs[1].first], c.edge[pairs[1].second]}};
  for (std::size_t k = 0; k < joins.size(); ++k) {
    auto [a, b] = joins[k];
    if (a == b) {
      ++out.loops;
      continue;
    }
    for (auto& y : out.crossings)
      for (int& e : y.edge)
        if (e == b) e = a;
    for (std::size_t m = k + 1; m < joins.size(); ++m) {
      if (joins[m].first == b) joins[m].first = a;
      if (joins[m].second == b) joins[m].second = a;
    }
  }
  return out;
}

// Fresh orientation: every component runs from its smallest label onward,
// leaving the first place at which that label was listed.
void reorient(Link& l) {
  auto pl = places(l);
  std::map<int, bool> done;
  for (const auto& [e0, ps] : pl) {
    if (done[e0]) continue;
    Place at = ps[1];  // arrive here, so e0 leaves ps[0]
    int e = e0;
    do {
      done[e] = true;
      Crossing& c = l.crossings[at.crossing];
      if (at.slot % 2 == 0) {
        c.under_in = at.slot;
      } else {
        c.over_in = at.slot;
      }
      int out_slot = (at.slot + 2) % 4;
      e = c.edge[out_slot];
      const auto& next = pl.at(e);
      // the other end of e
      at = (next[0].crossing == at.crossing && next[0].slot == out_slot) ? next[1] : next[0];
    } while (e != e0);
  }
}

Link switched(const Link& l, int x) {
  Link out = l;
  const Crossing& c = l.crossings[x];
  Crossing n;
  for (int k = 0; k < 4; ++k) n.edge[k] = c.edge[(k + 1) % 4];
  n.under_in = c.over_in - 1;
  n.over_in = (c.under_in + 3) % 4;
  out.crossings[x] = n;
  return out;
}

void check_cap(const Link& l, const OracleOptions& opt) {
  if (opt.crossing_cap > 0 && static_cast<int>(l.crossings.size()) > opt.crossing_cap)
    throw CapExceeded("oracle: diagram exceeds the crossing cap");
}

class Homfly {
 public:
  explicit Homfly(const OracleOptions& opt) : opt_(opt), sp_(homfly_space()) {
    b_ = Laurent::generator(sp_, "b");
    b_inv_ = Laurent::generator(sp_, "b", -1);
    c1_ = Laurent::generator(sp_, "c1");
    ratio_ = -(Laurent::constant(sp_, 1) + b_) * Laurent::generator(sp_, "c1", -1);
  }

  Laurent value(const Link& l) {
    check_cap(l, opt_);
    Walk w = walk(l);
    if (w.first_bad < 0) return ratio_.pow(w.components + l.loops - 1);
    int p = w.first_bad;
    const Crossing& c = l.crossings[p];
    Link l0 = smooth_pairs(l, p, {{{c.under_in, (c.over_in + 2) % 4}, {c.over_in, (c.under_in + 2) % 4}}});
    Laurent other = value(switched(l, p));
    Laurent smoothed = value(l0);
    if (sign(c) > 0) return -(b_ * other) - c1_ * smoothed;
    return -(b_inv_ * (other + c1_ * smoothed));
  }

 private:
  OracleOptions opt_;
  LaurentSpacePtr sp_;
  Laurent b_, b_inv_, c1_, ratio_;
};

class Dubrovnik {
 public:
  explicit Dubrovnik(const OracleOptions& opt) : opt_(opt), sp_(dubrovnik_space()) {
    a_ = Laurent::generator(sp_, "A");
    a_inv_ = Laurent::generator(sp_, "A", -1);
    z_ = Laurent::generator(sp_, "z");
    delta_ = (a_ - a_inv_) * Laurent::generator(sp_, "z", -1) + Laurent::constant(sp_, 1);
  }

  Laurent power_of_a(int k) const { return k >= 0 ? a_.pow(k) : a_inv_.pow(-k); }

  // F(L+) - F(L-) = z (F(L0) - F(Linf)), L0 the oriented smoothing of L+.
  Laurent value(const Link& l) {
    check_cap(l, opt_);
    Walk w = walk(l);
    if (w.first_bad < 0) return power_of_a(writhe(l)) * delta_.pow(w.components + l.loops - 1);
    int p = w.first_bad;
    const Crossing& c = l.crossings[p];
    Link l0 = smooth_pairs(l, p, {{{c.under_in, (c.over_in + 2) % 4}, {c.over_in, (c.under_in + 2) % 4}}});
    Link linf = smooth_pairs(l, p, {{{c.under_in, c.over_in}, {(c.under_in + 2) % 4, (c.over_in + 2) % 4}}});
    reorient(linf);
    Laurent diff = z_ * (value(l0) - value(linf));
    Laurent other = value(switched(l, p));
    return sign(c) > 0 ? other + diff : other - diff;
  }

 private:
  OracleOptions opt_;
  LaurentSpacePtr sp_;
  Laurent a_, a_inv_, z_, delta_;
};

}  // namespace

Link from_diagram(const MarkedDiagram& d) {
  Link l;
  l.loops = d.loop_count();
  for (int x = 0; x < d.crossing_count(); ++x) {
    Crossing c;
    c.edge = d.crossing(x);
    c.under_in = 0;
    c.over_in = d.over_in_slot(x);
    l.crossings.push_back(c);
  }
  return l;
}

int sign(const Crossing& c) { return c.over_in == (c.under_in + 1) % 4 ? 1 : -1; }

int writhe(const Link& l) {
  int w = 0;
  for (const auto& c : l.crossings) w += sign(c);
  return w;
}

Laurent homfly(const MarkedDiagram& d, const OracleOptions& opt) { return Homfly(opt).value(from_diagram(d)); }

Laurent dubrovnik_hat(const MarkedDiagram& d, const OracleOptions& opt) {
  return Dubrovnik(opt).value(from_diagram(d));
}

Laurent dubrovnik(const MarkedDiagram& d, const OracleOptions& opt) {
  Dubrovnik ev(opt);
  Link l = from_diagram(d);
  return ev.power_of_a(-writhe(l)) * ev.value(l);
}

}  // namespace multiskein::oracle
