#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftpred/index.hpp"
#include "shiftpred/report.hpp"

namespace shiftpred {

/// A subset of Z enumerable within any bound: powers m^n (n >= 1), signed
/// factorials +-(m!) (m >= 1), an explicit list, or one residue piece of
/// another set (every mod-th magnitude, counted from the smallest).
class SparseSet {
 public:
  enum class Kind { Powers, Factorials, Explicit, Residue };

  static SparseSet powers(Index base);
  static SparseSet factorials();
  static SparseSet explicit_list(std::vector<Index> members);
  /// Members of `parent` whose magnitude has index = residue (mod modulus) in
  /// the increasing list of the parent's magnitudes.
  static SparseSet residue(const SparseSet& parent, unsigned modulus, unsigned residue);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Explicit || (parent_ && parent_->is_finite()); }

  /// Members j with |j| <= bound, in increasing numeric order.
  std::vector<Index> enumerate(Index bound) const;
  /// Distinct |j| over members with |j| <= bound, increasing.
  std::vector<Index> magnitudes(Index bound) const;
  /// j in J iff -j in J, within the bound.
  bool is_symmetric(Index bound) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Explicit;
  Index base_ = 0;
  std::vector<Index> members_;
  std::shared_ptr<const SparseSet> parent_;
  unsigned modulus_ = 1;
  unsigned residue_ = 0;
};

/// Upper limit accepted for enumeration bounds.
inline constexpr Index kSparseBoundLimit = Index{1} << 40;

struct SparseFamily {
  std::vector<SparseSet> sets;

  /// First pair of sets sharing a member within the bound, if any.
  std::optional<std::pair<std::size_t, std::size_t>> overlap(Index bound, Index* shared = nullptr) const;
};

/// Splits J into k pieces by magnitude index mod k. Throws PreconditionError
/// for a finite J with fewer than k magnitudes.
SparseFamily disjoint_family(const SparseSet& j, unsigned k);

struct SparseCheckParams {
  Index t_lo = -10;
  Index t_hi = 10;
  unsigned r_lo = 0;
  unsigned r_hi = 2;
  unsigned s_lo = 0;
  unsigned s_hi = 2;
  Index bound = Index{1} << 16;
  /// Largest acceptable threshold; 0 means floor(sqrt(bound)).
  Index threshold_cap = 0;

  static SparseCheckParams grid(Index t_range, unsigned r_max, unsigned s_max, Index bound);
};

/// Searches j_1 + ... + j_r = l_1 + ... + l_s + t over members with |j| <= bound
/// and strictly increasing magnitudes in each tuple. The threshold is the
/// largest n for which a solution other than (t = 0, r = s, equal tuples)
/// has every entry of modulus >= n; the set is certified within the window
/// when this threshold does not exceed the cap.
Report additively_sparse_check(const SparseSet& j, const SparseCheckParams& params);

/// The same search for the family condition: sums drawing a_i terms from the
/// i-th set on one side and b_i on the other, magnitudes distinct on each
/// side, with t = 0 and a = b as the only allowed conclusion. Sides hold at
/// most a_max terms (guard 6). Overlapping sets fail before the search.
Report hausdorff_condition_check(const SparseFamily& family, Index t_range, unsigned a_max,
                                 Index bound, Index threshold_cap = 0);

}  // namespace shiftpred
