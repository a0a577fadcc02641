#include "shiftpred/window_seq.hpp"

#include <algorithm>

namespace shiftpred {

WindowSeq WindowSeq::from_function(Window w, const std::function<Scalar(Index)>& f) {
  WindowSeq out(w);
  for (Index n = w.lo();; ++n) {
    out.values_[static_cast<std::size_t>(n - w.lo())] = f(n);
    if (n == w.hi()) break;
  }
  return out;
}

std::size_t WindowSeq::offset(Index n) const {
  if (!window_.contains(n)) {
    throw WindowError("index " + std::to_string(n) + " outside window " + window_.to_string());
  }
  return static_cast<std::size_t>(n - window_.lo());
}

const Scalar& WindowSeq::at(Index n) const { return values_[offset(n)]; }
Scalar& WindowSeq::at(Index n) { return values_[offset(n)]; }

WindowSeq WindowSeq::restrict_to(Window w) const {
  if (!window_.contains(w)) {
    throw WindowError("window " + w.to_string() + " not inside " + window_.to_string());
  }
  WindowSeq out(w);
  std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(offset(w.lo())), w.size(),
              out.values_.begin());
  return out;
}

WindowSeq& WindowSeq::operator+=(const WindowSeq& rhs) {
  if (!(rhs.window_ == window_)) throw WindowError("window mismatch in +=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
  return *this;
}

WindowSeq& WindowSeq::operator-=(const WindowSeq& rhs) {
  if (!(rhs.window_ == window_)) throw WindowError("window mismatch in -=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
  return *this;
}

WindowSeq& WindowSeq::operator*=(const Scalar& c) {
  for (auto& v : values_) v *= c;
  return *this;
}

WindowSeq shift_window(const WindowSeq& x, Index m, Window w) {
  const Window needed = w.shifted(checked_neg(m));
  if (!x.window().contains(needed)) {
    throw WindowError("shift by " + std::to_string(m) + " on " + w.to_string() + " needs input on " +
                      needed.to_string() + ", have " + x.window().to_string());
  }
  return WindowSeq::from_function(w, [&](Index n) { return x.at(n - m); });
}

WindowSeq tau_apply(const WindowSeq& x, Window w) {
  const Index need_lo = ceil_div(w.lo(), 2);
  const Index need_hi = floor_div(w.hi(), 2);
  if (need_lo <= need_hi && !x.window().contains(Window(need_lo, need_hi))) {
    throw WindowError("tau on " + w.to_string() + " needs input on [" + std::to_string(need_lo) +
                      ", " + std::to_string(need_hi) + "], have " + x.window().to_string());
  }
  return WindowSeq::from_function(w, [&](Index n) {
    return (n % 2 == 0) ? x.at(n / 2) : Scalar(0);
  });
}

double max_discrepancy(const WindowSeq& a, const WindowSeq& b, Window w) {
  double worst = 0;
  for (Index n = w.lo();; ++n) {
    worst = std::max(worst, distance(a.at(n), b.at(n)));
    if (n == w.hi()) break;
  }
  return worst;
}

double sup_on(const WindowSeq& a, Window w) {
  double worst = 0;
  for (Index n = w.lo();; ++n) {
    worst = std::max(worst, a.at(n).abs());
    if (n == w.hi()) break;
  }
  return worst;
}

}  // namespace shiftpred
