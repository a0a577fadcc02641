#pragma once

#include <functional>
#include <vector>

#include "shiftpred/index.hpp"
#include "shiftpred/scalar.hpp"

namespace shiftpred {

/// An element of l_infinity(Z) known on a finite window only.
class WindowSeq {
 public:
  explicit WindowSeq(Window w) : window_(w), values_(w.size()) {}
  static WindowSeq from_function(Window w, const std::function<Scalar(Index)>& f);

  const Window& window() const { return window_; }
  /// Throws WindowError outside the window.
  const Scalar& at(Index n) const;
  Scalar& at(Index n);

  /// Copy of the values on a sub-window.
  WindowSeq restrict_to(Window w) const;

  WindowSeq& operator+=(const WindowSeq& rhs);
  WindowSeq& operator-=(const WindowSeq& rhs);
  WindowSeq& operator*=(const Scalar& c);
  friend WindowSeq operator+(WindowSeq a, const WindowSeq& b) { return a += b; }
  friend WindowSeq operator-(WindowSeq a, const WindowSeq& b) { return a -= b; }
  friend WindowSeq operator*(const Scalar& c, WindowSeq a) { return a *= c; }

 private:
  std::size_t offset(Index n) const;

  Window window_;
  std::vector<Scalar> values_;
};

/// sigma^m x on w: result(n) = x(n - m). Needs x on w shifted by -m.
WindowSeq shift_window(const WindowSeq& x, Index m, Window w);

/// tau x on w: result(n) = x(n/2) for even n, 0 for odd n. The input must
/// cover [ceil(w.lo/2), floor(w.hi/2)]; otherwise WindowError.
WindowSeq tau_apply(const WindowSeq& x, Window w);

/// max_{n in w} |a(n) - b(n)|; exactly 0 for exact agreement.
double max_discrepancy(const WindowSeq& a, const WindowSeq& b, Window w);

/// max_{n in w} |a(n)|.
double sup_on(const WindowSeq& a, Window w);

}  // namespace shiftpred
