#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "multiskein/diagram.hpp"
#include "multiskein/relations.hpp"
#include "multiskein/smoothing.hpp"

namespace multiskein {

// Cross: memo keyed by the marking-free canonical form, so differently marked
// copies of one diagram share an entry. Exact: keyed by the marked diagram.
enum class MemoMode { Off, Exact, Cross };
enum class ResolutionPolicy { FirstBadPoint, SpecifiedCrossing };

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class E>
struct EvaluationConfig {
  CoefficientAssignment<E> assignment;
  bool writhe_normalized = false;
  MemoMode memo = MemoMode::Cross;
  ResolutionPolicy policy = ResolutionPolicy::FirstBadPoint;
  int crossing = -1;  // root crossing for SpecifiedCrossing
  int crossing_cap = 0;  // 0: unlimited
  SmoothingFault fault = SmoothingFault::None;
};

// One child of a single skein step: f(D) = sum coeff * f(diagram).
template <class E>
struct ResolvedTerm {
  SmoothingKind kind;  // Eplus/Eminus for the switched crossing
  CoefficientSymbol symbol;
  Scaled<E> coeff;
  MarkedDiagram diagram;
  std::vector<int> crossing_map;  // parent crossing -> child crossing, -1 if gone
};

template <class E>
class Evaluator {
 public:
  explicit Evaluator(EvaluationConfig<E> cfg);

  // Resolves at first bad points throughout; config().policy is applied by evaluate_f.
  Scaled<E> f(const MarkedDiagram& d);
  Scaled<E> F(const MarkedDiagram& d);
  // f with the root resolved at p (any crossing, bad or not).
  Scaled<E> f_at(const MarkedDiagram& d, int p);
  std::vector<ResolvedTerm<E>> resolve(const MarkedDiagram& d, int p) const;
  // Evaluation tree down to max_depth skein steps.
  nlohmann::json trace(const MarkedDiagram& d, int max_depth);

  const EvaluationConfig<E>& config() const { return cfg_; }
  std::size_t memo_size() const { return memo_.size(); }
  std::uint64_t nodes_expanded() const { return expanded_; }
  void clear() { memo_.clear(); }

 private:
  Scaled<E> eval(const MarkedDiagram& d, int p);
  Scaled<E> base_value(const MarkedDiagram& d) const;
  Scaled<E> a_power(int k) const;
  const Scaled<E>& symbol_value(const CoefficientSymbol& s) const;
  std::vector<int> memo_key(const MarkedDiagram& d) const;

  EvaluationConfig<E> cfg_;
  std::map<std::pair<Base, bool>, Scaled<E>> symbols_;
  Scaled<E> a_, a_inv_;
  bool has_a_inv_ = false;
  std::unordered_map<std::vector<int>, Scaled<E>, VecHash> memo_;
  std::uint64_t expanded_ = 0;
};

template <class E>
Scaled<E> evaluate_f(const MarkedDiagram& d, const EvaluationConfig<E>& cfg);
template <class E>
Scaled<E> evaluate_F(const MarkedDiagram& d, const EvaluationConfig<E>& cfg);
template <class E>
std::vector<ResolvedTerm<E>> resolve_at(const MarkedDiagram& d, int p, const EvaluationConfig<E>& cfg);

// Z backend, integral result.
ZElement evaluate_f_z(const MarkedDiagram& d);
ZElement evaluate_F_z(const MarkedDiagram& d);
ZElement integral(const Scaled<ZElement>& x);

struct PairMismatch {
  int p, q;
  std::string pq, qp;
};

struct OrderReport {
  int pairs_checked = 0;
  std::vector<PairMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// For each crossing pair: resolve p then q in every child, versus q then p.
// Runs with exact-marking memo so cached values cannot mask a mismatch.
template <class E>
OrderReport check_order_independence(const MarkedDiagram& d, const EvaluationConfig<E>& cfg);

struct MarkingReport {
  int markings_checked = 0;
  int resolutions_checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Every base point position on every component, every component order, and
// every choice of root resolution crossing; all must give one value.
template <class E>
MarkingReport check_marking_independence(const MarkedDiagram& d, const EvaluationConfig<E>& cfg);

struct RandomDiagramOptions {
  int max_crossings = 10;
  int moves = 20;
  bool allow_switch = false;  // crossing switches change the link
};

// Census seed plus random r1/r2/r3 moves (and r1/r2 undos), deterministic per seed.
struct RandomDiagram {
  std::string seed_name;
  MarkedDiagram start;
  MarkedDiagram result;
  std::vector<std::string> moves;
};
RandomDiagram random_diagram(std::uint64_t seed, const RandomDiagramOptions& opt);
// Same, starting from a given diagram.
RandomDiagram random_moves(const MarkedDiagram& start, std::uint64_t seed, const RandomDiagramOptions& opt);

struct FuzzTrial {
  int index = 0;
  std::string seed_name;
  int crossings = 0;
  int moves = 0;
  bool ok = true;
  std::string detail;
};

struct FuzzSummary {
  int trials = 0;
  int failures = 0;
  std::vector<FuzzTrial> results;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct FuzzOptions {
  int trials = 200;
  std::uint64_t seed = 7;
  RandomDiagramOptions diagram;
  int threads = 0;  // 0: MULTISKEIN_THREADS or hardware concurrency
  SmoothingFault fault = SmoothingFault::None;
};

// Reidemeister invariance of F in Z: each trial compares F(start) and F(result).
FuzzSummary fuzz(const FuzzOptions& opt);
int worker_count(int requested);

// Largest b, d and c' exponents over the monomials of x.
struct DegreeBounds {
  int b = 0, d = 0, cp = 0;
  bool within_bounds() const { return b <= 1 && d <= 1 && cp <= 2; }
};
DegreeBounds degree_bounds(const ZElement& x);

extern template class Evaluator<ZElement>;
extern template class Evaluator<Laurent>;

}  // namespace multiskein
