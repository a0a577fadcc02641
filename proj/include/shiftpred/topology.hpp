#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "shiftpred/semigroup.hpp"

namespace shiftpred {

/// The basic neighbourhood V_{gamma,n}.
struct NeighborhoodSpec {
  SemiElem gamma = SemiElem::embed(0, 1);
  Index n = 1;
  Index search_bound = Index{1} << 16;
};

struct Membership {
  bool member = false;
  /// witness[i] lists the j^(i+1) used, in increasing magnitude.
  std::vector<std::vector<Index>> witness;

  Json to_json() const;
};

/// beta in V_{gamma,n}: beta_i <= gamma_i and
/// beta_0 = gamma_0 + sum_i sum_{r <= gamma_i - beta_i} j_r^(i) with j_r^(i) in
/// J^(i), |j| > n, increasing magnitudes per i and distinct magnitudes
/// overall. The search covers members up to the search bound, so `false`
/// means "not found within the window". Throws GuardError when
/// sum (gamma_i - beta_i) exceeds 6.
Membership neighborhood_member(const SemiElem& beta, const NeighborhoodSpec& nbhd,
                               const SparseFamily& family);

struct LimitOptions {
  /// Neighbourhood orders n_q = base * 2^q, q = 0..levels-1.
  Index threshold_base = 2;
  unsigned levels = 10;
  /// Each level must hold for at least this many trailing members.
  unsigned min_tail = 2;
  /// Largest number of J-terms considered in a candidate limit.
  unsigned max_terms = 3;
  Index search_bound = Index{1} << 40;
};

struct LimitPrediction {
  std::optional<SemiElem> limit;  // empty: divergent within the window
  FinSeq predicted;               // Theta(delta_limit)
  Json evidence = Json::object();
};

/// Topological limit of a sequence in S_k (integers are embedded), read
/// from decompositions of its last members and certified by membership of
/// the tail in V_{limit, n} at every configured n.
LimitPrediction limit_predict(const std::vector<SemiElem>& seq, const ProjectionSpec& spec,
                              const LimitOptions& opts = {});
LimitPrediction limit_predict(const std::vector<Index>& seq, const ProjectionSpec& spec,
                              const LimitOptions& opts = {});

/// Samples (beta, gamma, n) cells, half of them built as members, and checks
/// V_{gamma,n} + alpha = V_{gamma+alpha,n} and V_{gamma,2n} inside V_{gamma,n}.
Report neighborhood_property_check(const SparseFamily& family, unsigned cells, std::uint64_t seed = 0,
                                   Index search_bound = Index{1} << 16);

/// limit_predict along J^(1) (limit e_1), along sums of two consecutive
/// magnitudes (limit 2 e_1) and along t + j (limit (t, 1, 0, ...)), with the
/// predicted weak* limits a_1, a_1^2 and sigma^t a_1.
Report limit_check(const ProjectionSpec& spec, Index t = 3, const LimitOptions& opts = {});

}  // namespace shiftpred
