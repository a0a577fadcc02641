#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace shiftpred {

/// A complex scalar held either exactly (a real rational) or as a binary64
/// complex pair.
///
/// Arithmetic between two exact values stays exact; anything touching a
/// float value is carried out in float mode. Exact mode therefore covers the
/// real rational parameters (lambda = 2, 3, p/q) where identities can be
/// checked with zero tolerance.
class Scalar {
 public:
  using Complex = std::complex<double>;

  Scalar() : value_(mpq_class(0)) {}
  Scalar(int v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}
  explicit Scalar(Complex z) : value_(z) {}

  /// Exact p/q.
  static Scalar rational(long p, long q);
  /// Float-mode real value.
  static Scalar real(double x) { return Scalar(Complex(x, 0.0)); }
  static Scalar complex(double re, double im) { return Scalar(Complex(re, im)); }
  /// Parses "3", "-3/4" (exact) or a decimal such as "0.25" (float).
  static Scalar parse_real(std::string_view text);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  /// Throws std::logic_error in float mode.
  const mpq_class& exact() const;
  Complex to_complex() const;
  double real_part() const { return to_complex().real(); }

  double abs() const;
  /// Exact modulus, available in exact mode only.
  std::optional<mpq_class> exact_abs() const;
  /// Exact zero, or a float value with modulus below the underflow guard.
  bool is_zero() const;

  Scalar conj() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  /// Division by an exact zero throws std::domain_error.
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const;

  /// Value equality. Exact values compare exactly; mixed comparisons
  /// compare the binary64 images.
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  std::variant<mpq_class, Complex> value_;
};

/// Float values below this modulus are treated as zero (underflow guard).
inline constexpr double kUnderflowGuard = 1e-300;

/// |a - b| as a double; exactly 0 when both are exact and equal.
double distance(const Scalar& a, const Scalar& b);

/// a^e for a nonnegative integer exponent.
Scalar pow(const Scalar& a, unsigned e);

}  // namespace shiftpred
