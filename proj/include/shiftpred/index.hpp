#pragma once

#include <cstdint>
#include <string>

#include "shiftpred/errors.hpp"

namespace shiftpred {

using Index = std::int64_t;

/// 128-bit index used only for class sequences t + 2^n1 + ... + 2^nk, whose
/// terms run past the 2^62 storage guard.
__extension__ using Wide = __int128;

/// Stored indices and index results must satisfy |n| <= 2^62.
inline constexpr Index kIndexLimit = Index{1} << 62;

inline Index checked_add(Index a, Index b) {
  Index r = 0;
  if (__builtin_add_overflow(a, b, &r) || r > kIndexLimit || r < -kIndexLimit) {
    throw OverflowError("index overflow: " + std::to_string(a) + " + " + std::to_string(b));
  }
  return r;
}

inline Index checked_sub(Index a, Index b) {
  Index r = 0;
  if (__builtin_sub_overflow(a, b, &r) || r > kIndexLimit || r < -kIndexLimit) {
    throw OverflowError("index overflow: " + std::to_string(a) + " - " + std::to_string(b));
  }
  return r;
}

inline Index checked_neg(Index a) { return checked_sub(0, a); }

/// Floor division by a positive divisor.
inline Index floor_div(Index a, Index b) {
  Index q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

inline Index ceil_div(Index a, Index b) { return -floor_div(-a, b); }

/// Inclusive integer interval [lo, hi].
class Window {
 public:
  Window(Index lo, Index hi) : lo_(lo), hi_(hi) {
    if (lo > hi) {
      throw WindowError("window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is empty");
    }
  }
  /// [-radius, radius].
  static Window radius(Index r) { return Window(-r, r); }

  Index lo() const { return lo_; }
  Index hi() const { return hi_; }
  std::size_t size() const { return static_cast<std::size_t>(hi_ - lo_) + 1; }
  bool contains(Index n) const { return lo_ <= n && n <= hi_; }
  bool contains(const Window& w) const { return lo_ <= w.lo_ && w.hi_ <= hi_; }
  Window shifted(Index m) const { return Window(checked_add(lo_, m), checked_add(hi_, m)); }
  Window hull(const Window& w) const {
    return Window(lo_ < w.lo_ ? lo_ : w.lo_, hi_ > w.hi_ ? hi_ : w.hi_);
  }
  /// Smallest window containing every n/2 for even n in this window.
  Window halved() const { return Window(floor_div(lo_, 2), ceil_div(hi_, 2)); }
  Index max_abs() const { return (-lo_ > hi_) ? -lo_ : hi_; }

  friend bool operator==(const Window&, const Window&) = default;
  std::string to_string() const {
    return "[" + std::to_string(lo_) + ", " + std::to_string(hi_) + "]";
  }

 private:
  Index lo_;
  Index hi_;
};

}  // namespace shiftpred
