#pragma once

#include <complex>
#include <initializer_list>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "shiftpred/index.hpp"
#include "shiftpred/scalar.hpp"

namespace shiftpred {

/// A finitely supported sequence on Z, i.e. an element of l1(Z) with finite
/// support. Entries are stored sparsely and never hold a zero.
class FinSeq {
 public:
  using Map = std::map<Index, Scalar>;
  using const_iterator = Map::const_iterator;

  FinSeq() = default;
  FinSeq(std::initializer_list<std::pair<const Index, Scalar>> entries);

  /// c * delta_n.
  static FinSeq delta(Index n, Scalar c = Scalar(1));

  /// Value at n; zero off the support.
  Scalar operator[](Index n) const;
  /// Overwrites the entry at n (erasing it when v is zero).
  void set(Index n, Scalar v);
  /// Adds v to the entry at n.
  void add(Index n, const Scalar& v);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }
  std::vector<Index> support() const;
  /// Requires a nonempty sequence.
  Index min_index() const;
  Index max_index() const;
  /// max_index - min_index + 1, or 0 for the zero sequence.
  Index width() const;
  /// True when every entry is exact.
  bool is_exact() const;

  FinSeq& operator+=(const FinSeq& rhs);
  FinSeq& operator-=(const FinSeq& rhs);
  FinSeq& operator*=(const Scalar& c);
  friend FinSeq operator+(FinSeq a, const FinSeq& b) { return a += b; }
  friend FinSeq operator-(FinSeq a, const FinSeq& b) { return a -= b; }
  friend FinSeq operator*(FinSeq a, const Scalar& c) { return a *= c; }
  friend FinSeq operator*(const Scalar& c, FinSeq a) { return a *= c; }
  friend bool operator==(const FinSeq& a, const FinSeq& b);

 private:
  Map entries_;
};

/// (a * b)(n) = sum_k a(k) b(n - k).
FinSeq convolve(const FinSeq& a, const FinSeq& b);
/// m-fold convolution power; power(a, 0) = delta_0.
FinSeq power(const FinSeq& a, unsigned m);

double l1_norm(const FinSeq& a);
double sup_norm(const FinSeq& a);
/// Exact norms, available when every entry is exact.
std::optional<mpq_class> l1_norm_exact(const FinSeq& a);
std::optional<mpq_class> sup_norm_exact(const FinSeq& a);

/// result(n) = a(n - m).
FinSeq shift(const FinSeq& a, Index m);
/// result(n) = conj(a(-n)).
FinSeq involution(const FinSeq& a);
/// sum_n a_n e^{i n theta}.
std::complex<double> fourier_eval(const FinSeq& a, double theta);

/// sup_n |a(n) - b(n)|; exactly 0 when a and b agree exactly.
double max_difference(const FinSeq& a, const FinSeq& b);

}  // namespace shiftpred
