#include "shiftpred/finseq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shiftpred {

FinSeq::FinSeq(std::initializer_list<std::pair<const Index, Scalar>> entries) {
  for (const auto& [n, v] : entries) add(n, v);
}

FinSeq FinSeq::delta(Index n, Scalar c) {
  FinSeq s;
  s.set(n, std::move(c));
  return s;
}

Scalar FinSeq::operator[](Index n) const {
  auto it = entries_.find(n);
  return it == entries_.end() ? Scalar(0) : it->second;
}

void FinSeq::set(Index n, Scalar v) {
  if (n > kIndexLimit || n < -kIndexLimit) {
    throw OverflowError("index " + std::to_string(n) + " outside the 2^62 guard");
  }
  if (v.is_zero()) {
    entries_.erase(n);
  } else {
    entries_.insert_or_assign(n, std::move(v));
  }
}

void FinSeq::add(Index n, const Scalar& v) {
  if (v.is_zero()) return;
  auto it = entries_.find(n);
  if (it == entries_.end()) {
    set(n, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) entries_.erase(it);
}

std::vector<Index> FinSeq::support() const {
  std::vector<Index> out;
  out.reserve(entries_.size());
  for (const auto& [n, v] : entries_) out.push_back(n);
  return out;
}

Index FinSeq::min_index() const {
  if (entries_.empty()) throw PreconditionError("min_index of the zero sequence");
  return entries_.begin()->first;
}

Index FinSeq::max_index() const {
  if (entries_.empty()) throw PreconditionError("max_index of the zero sequence");
  return entries_.rbegin()->first;
}

Index FinSeq::width() const {
  if (entries_.empty()) return 0;
  return checked_sub(max_index(), min_index()) + 1;
}

bool FinSeq::is_exact() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return e.second.is_exact(); });
}

FinSeq& FinSeq::operator+=(const FinSeq& rhs) {
  for (const auto& [n, v] : rhs) add(n, v);
  return *this;
}

FinSeq& FinSeq::operator-=(const FinSeq& rhs) {
  for (const auto& [n, v] : rhs) add(n, -v);
  return *this;
}

FinSeq& FinSeq::operator*=(const Scalar& c) {
  Map out;
  for (auto& [n, v] : entries_) {
    Scalar p = v * c;
    if (!p.is_zero()) out.emplace(n, std::move(p));
  }
  entries_ = std::move(out);
  return *this;
}

bool operator==(const FinSeq& a, const FinSeq& b) {
  if (a.size() != b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) {
    return x.first == y.first && x.second == y.second;
  });
}

FinSeq convolve(const FinSeq& a, const FinSeq& b) {
  FinSeq out;
  if (a.empty() || b.empty()) return out;
  const Index lo = checked_add(a.min_index(), b.min_index());
  const Index hi = checked_add(a.max_index(), b.max_index());
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const auto pairs = static_cast<std::uint64_t>(a.size()) * b.size();
  if (span <= 2 * pairs + 64) {
    // Dense accumulator over the sumset hull.
    std::vector<Scalar> acc(span);
    for (const auto& [i, x] : a) {
      for (const auto& [j, y] : b) acc[static_cast<std::size_t>(i + j - lo)] += x * y;
    }
    for (std::size_t k = 0; k < acc.size(); ++k) {
      if (!acc[k].is_zero()) out.set(lo + static_cast<Index>(k), std::move(acc[k]));
    }
    return out;
  }
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) out.add(checked_add(i, j), x * y);
  }
  return out;
}

FinSeq power(const FinSeq& a, unsigned m) {
  FinSeq result = FinSeq::delta(0);
  for (unsigned i = 0; i < m; ++i) result = convolve(result, a);
  return result;
}

double l1_norm(const FinSeq& a) {
  double s = 0;
  for (const auto& [n, v] : a) s += v.abs();
  return s;
}

double sup_norm(const FinSeq& a) {
  double s = 0;
  for (const auto& [n, v] : a) s = std::max(s, v.abs());
  return s;
}

std::optional<mpq_class> l1_norm_exact(const FinSeq& a) {
  mpq_class s(0);
  for (const auto& [n, v] : a) {
    if (!v.is_exact()) return std::nullopt;
    s += ::abs(v.exact());
  }
  return s;
}

std::optional<mpq_class> sup_norm_exact(const FinSeq& a) {
  mpq_class s(0);
  for (const auto& [n, v] : a) {
    if (!v.is_exact()) return std::nullopt;
    mpq_class m = ::abs(v.exact());
    if (m > s) s = m;
  }
  return s;
}

FinSeq shift(const FinSeq& a, Index m) {
  FinSeq out;
  for (const auto& [n, v] : a) out.set(checked_add(n, m), v);
  return out;
}

FinSeq involution(const FinSeq& a) {
  FinSeq out;
  for (const auto& [n, v] : a) out.set(checked_neg(n), v.conj());
  return out;
}

std::complex<double> fourier_eval(const FinSeq& a, double theta) {
  std::complex<double> s(0.0, 0.0);
  for (const auto& [n, v] : a) {
    // Reduce n * theta before the trig call to keep large indices accurate.
    const double phase = std::remainder(static_cast<double>(n) * theta, 2.0 * std::numbers::pi);
    s += v.to_complex() * std::polar(1.0, phase);
  }
  return s;
}

double max_difference(const FinSeq& a, const FinSeq& b) {
  double worst = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      worst = std::max(worst, ia->second.abs());
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      worst = std::max(worst, ib->second.abs());
      ++ib;
    } else {
      worst = std::max(worst, distance(ia->second, ib->second));
      ++ia;
      ++ib;
    }
  }
  return worst;
}

}  // namespace shiftpred
