#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "shiftpred/finseq.hpp"
#include "shiftpred/index.hpp"
#include "shiftpred/report.hpp"
#include "shiftpred/scalar.hpp"
#include "shiftpred/window_seq.hpp"

namespace shiftpred {

/// The parameter lambda, |lambda| > 1.
class LambdaParam {
 public:
  /// Throws PreconditionError unless |lambda| > 1.
  explicit LambdaParam(Scalar lambda);
  /// "RE" or "RE,IM". Integers and p/q with no (or zero) imaginary part give
  /// an exact lambda.
  static LambdaParam parse(std::string_view text);

  const Scalar& value() const { return lambda_; }
  bool is_exact() const { return lambda_.is_exact(); }
  double modulus() const { return lambda_.abs(); }
  /// lambda^{-k}.
  Scalar inverse_power(unsigned k) const;
  const Scalar& inverse() const { return inv_[1]; }
  std::string to_string() const { return lambda_.to_string(); }

 private:
  Scalar lambda_;
  std::vector<Scalar> inv_;  // lambda^{-k}, k < kCached
  static constexpr unsigned kCached = 128;
};

/// Number of ones in the binary expansion of n >= 0; nullopt stands for the
/// value -infinity taken at negative n.
std::optional<int> bit_count(Index n);
std::optional<int> bit_count(Wide n);

struct X0Value {
  Scalar value;
  /// Set when a float-mode value fell below the underflow guard and was
  /// replaced by an exact zero.
  bool underflow = false;
};

X0Value x0_eval_flagged(const LambdaParam& lambda, Wide n);
/// lambda^{-b(n)}, and exact 0 for n < 0.
Scalar x0_eval(const LambdaParam& lambda, Index n);
Scalar x0_eval(const LambdaParam& lambda, Wide n);

/// tau^k(x0)(n): x0(n / 2^k) when 2^k divides n, else 0.
Scalar tau_power_x0(const LambdaParam& lambda, unsigned k, Index n);

/// x0 on a window.
WindowSeq x0_window(const LambdaParam& lambda, Window w);
/// tau^k(x0) on w, built by k applications of tau to windowed x0.
WindowSeq tau_power_window(const LambdaParam& lambda, unsigned k, Window w);

/// sigma^shift tau^k (x0).
struct Generator {
  Index shift = 0;
  unsigned tau_power = 0;

  Scalar eval(const LambdaParam& lambda, Index n) const {
    return tau_power_x0(lambda, tau_power, checked_sub(n, shift));
  }
  friend bool operator==(const Generator&, const Generator&) = default;
};

struct GeneratorBattery {
  std::vector<Generator> generators;
  Window window = Window::radius(Index{1} << 14);

  /// {sigma^m tau^k x0 : |m| <= max_shift, k <= max_tau}.
  static GeneratorBattery standard(Index max_shift = 8, unsigned max_tau = 4,
                                   Index radius = Index{1} << 14);
};

/// <x, a> = sum_n x(n) a(n) for a finitely supported a.
Scalar pair(const Generator& g, const LambdaParam& lambda, const FinSeq& a);

/// tau sigma = sigma^2 tau, applied to x0 and to random rational test data.
Report verify_intertwine(const LambdaParam& lambda, Window w, std::uint64_t seed = 0,
                         int random_trials = 4);

/// Checks on w:
///  (a) (id - lambda^-1 sigma) x0 = (lambda - 1) sum_{j>=1} lambda^-j tau^j x0,
///      the series cut where it stops contributing on w, with the geometric
///      remainder lambda^-J added at index 0;
///  (b) (id - lambda^-1 tau)(id - lambda^-1 sigma) x0 = ((lambda-1)/lambda) tau x0;
///  (c) tau x0 = sum_{j>=0} lambda^-2j sigma^2j (id - lambda^-1 sigma) x0, and the
///      partial sum over j < series_terms is within |lambda|^{-2 series_terms};
///  (d) (id - lambda^-1 sigma) x0 = (id - lambda^-2 sigma^2) tau x0.
Report verify_x0_identities(const LambdaParam& lambda, Window w, unsigned series_terms = 8);

/// Tolerance used by the identity checks: 0 for exact lambda.
double identity_tolerance(const LambdaParam& lambda);

}  // namespace shiftpred
