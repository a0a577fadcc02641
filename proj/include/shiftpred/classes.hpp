#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "shiftpred/finseq.hpp"
#include "shiftpred/report.hpp"
#include "shiftpred/xzero.hpp"

namespace shiftpred {

/// A point t of Z, a class X_t^(k) of free ultrafilters, or X^(inf).
struct ClassLabel {
  enum class Kind { Point, Class, Infinity };

  Kind kind = Kind::Point;
  Index t = 0;
  unsigned k = 0;

  static ClassLabel point(Index t) { return {Kind::Point, t, 0}; }
  /// Throws PreconditionError for k = 0.
  static ClassLabel cls(Index t, unsigned k);
  static ClassLabel infinity() { return {Kind::Infinity, 0, 0}; }

  std::string to_string() const;
  friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;
};

/// lambda^{-k} x0(t) on Class(t, k), x0(t) on Point(t), 0 on Infinity.
Scalar predicted_limit(const ClassLabel& label, const LambdaParam& lambda);

/// Members of a sequence converging into the class. For Class(t, k) the
/// s-th member is t + 2^{n_1} + ... + 2^{n_k} with n_i = depth + 1 + s k + i;
/// Point(t) is the constant sequence; Infinity uses sum_{i<depth/2+s} 4^i.
std::vector<Wide> class_sequence(const ClassLabel& label, unsigned depth, unsigned count = 8);

/// x0(2^n + t) against lambda^{-1} x0(t) for n up to n_max.
Report limit_law_check(const LambdaParam& lambda, Index t, unsigned n_max);

/// Prediction against direct evaluation along class sequences for all
/// |t| <= t_max, 1 <= k <= k_max at the given depth.
Report class_limit_check(const LambdaParam& lambda, Index t_max, unsigned k_max, unsigned depth);

/// Exhaustive search for
///   2^{n_1} + ... + 2^{n_k} + (s - t) = 2^{m_1} + ... + 2^{m_l}
/// with all exponents in [threshold, bound], strictly increasing.
Report class_disjointness_check(Index s, Index t, unsigned k, unsigned l, unsigned threshold,
                                unsigned bound);

/// The grid |s|,|t| <= st_max, 1 <= k,l <= kl_max with the least admissible
/// threshold for each pair.
Report class_disjointness_grid(Index st_max, unsigned kl_max, unsigned bound);

struct ClassMeasure {
  FinSeq point_mass;
  std::map<std::pair<Index, unsigned>, Scalar> class_mass;
  Scalar infinity_mass;

  void add(const ClassLabel& label, const Scalar& mass);
};

/// a_t = mu({t}) + sum_k lambda^{-k} mu(X_t^(k)).
FinSeq measure_to_l1(const ClassMeasure& mu, const LambdaParam& lambda);

/// <mu, x> against <x, a> for every battery element, with x evaluated on
/// classes by the limit rule. Also compares the rule with direct evaluation
/// along class sequences for classes with t >= 0.
Report pairing_check(const ClassMeasure& mu, const GeneratorBattery& battery,
                     const LambdaParam& lambda);

/// Recovers every a_n as <sigma^n tau^k x0, a> with 2^k past the support
/// width of a, so that a vanishes once all these pairings vanish.
Report generator_pairing(const FinSeq& a, const LambdaParam& lambda);

}  // namespace shiftpred
