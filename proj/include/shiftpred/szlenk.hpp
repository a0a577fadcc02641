#pragma once

#include <optional>
#include <vector>

#include "shiftpred/finseq.hpp"
#include "shiftpred/report.hpp"
#include "shiftpred/semigroup.hpp"
#include "shiftpred/xzero.hpp"

namespace shiftpred {

struct ShrinkParams {
  LambdaParam lambda;
  Scalar epsilon;
  Scalar r = Scalar(1);
  /// Defaults to epsilon / 100 when unset.
  std::optional<double> delta;
  /// Truncation index: coordinates |k| <= n are handled by the extension.
  Index n = 16;

  double delta_value() const { return delta.value_or(epsilon.real_part() / 100); }
};

/// r' = r - (eps/3) (1 - |lambda|^-1) / (1 + |lambda|^-1); exact when lambda,
/// eps and r are exact.
Scalar shrink_radius(const ShrinkParams& p);

/// Least alpha with 1 - alpha (eps/3) (|lambda| - 1)/(|lambda| + 1) < 0.
/// Empty for eps below 1e-9. Throws PreconditionError unless 0 < eps < 2.
std::optional<unsigned long long> shrink_iteration_bound(const LambdaParam& lambda, const Scalar& epsilon);

/// A sequence a^(n) converging weak* to `limit` and coordinatewise to
/// `coordinate_limit`.
struct WitnessFamily {
  FinSeq limit;
  std::vector<FinSeq> approximants;
  FinSeq coordinate_limit;
};

/// a = lambda^{-1} delta_0, a^(n) = delta_{2^n} for n = first..last, b = 0.
WitnessFamily canonical_family(const LambdaParam& lambda, unsigned first = 40, unsigned last = 60);

/// Checks the admissibility clauses (throwing InvariantError naming the
/// failing clause), then evaluates the chain of estimates ending in
/// ||a|| <= 2 delta + r - ((1-u)/(1+u)) (eps/3 - 2 delta), u = |lambda|^-1,
/// with the last approximant standing in for the liminf.
Report shrink_witness_check(const WitnessFamily& w, const ShrinkParams& p);

/// Norm separation ||a^m delta_{t+s} - a^{m+1} delta_t||_1 = ||a^m|| + ||a^{m+1}||
/// for m <= depth, |t| <= t_range, with the least adequate |s| per stage.
/// Requires k = 1 and ||a_1^m||_1 >= 1 for m <= depth + 1.
Report witness_chain_check(const ProjectionSpec& spec, double epsilon, unsigned depth, Index t_range);

/// ||a^m delta_{t+s} - a^{m+1} delta_t||_1.
double chain_separation(const FinSeq& a, unsigned m, Index t, Index s);

}  // namespace shiftpred
