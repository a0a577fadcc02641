#pragma once

#include <optional>

#include "shiftpred/finseq.hpp"
#include "shiftpred/report.hpp"
#include "shiftpred/window_seq.hpp"
#include "shiftpred/xzero.hpp"

namespace shiftpred {

/// x = sum_{n=1}^{2^k} y'(n) sigma^n tau^k(x0), shifted back, where y' is y
/// moved so that its support lies in [1, 2^k] with k minimal.
class ExtensionMap {
 public:
  ExtensionMap(const FinSeq& y, const LambdaParam& lambda);

  /// x(n) via x(2^k s + r) = y'(r) x0(s).
  Scalar value_at(Index n) const;
  /// x(n) by summing the 2^k terms of the defining series directly.
  Scalar value_by_sum(Index n) const;

  Index pre_shift() const { return pre_shift_; }
  unsigned k() const { return k_; }
  const FinSeq& normalized() const { return normalized_; }
  const FinSeq& source() const { return y_; }

 private:
  FinSeq y_;
  FinSeq normalized_;
  LambdaParam lambda_;
  Index pre_shift_ = 0;
  unsigned k_ = 0;
};

struct ExtensionCertificate {
  Index pre_shift = 0;
  unsigned k = 0;
  /// max |x(n) - y(n)| over the support of y.
  double support_error = 0;
  /// max |x(n)| over the window minus the support.
  double off_support_max = 0;
  /// |lambda|^{-1} sup|y|.
  double bound = 0;
  bool ok = true;

  Json to_json() const;
};

struct Extension {
  WindowSeq x;
  ExtensionCertificate certificate;
};

/// Extends y to x on w. Throws WindowError unless w covers the support of y.
Extension extend(const FinSeq& y, const LambdaParam& lambda, Window w);

/// Builds y with y(k) a(k) = |a(k)| on the support of a, extends it, and
/// checks |<x, a>| >= ||a||_1 - delta with sup |x| <= 1 on the window.
Report isometry_witness(const FinSeq& a, const LambdaParam& lambda, double delta,
                        std::optional<Window> w = std::nullopt);

}  // namespace shiftpred
