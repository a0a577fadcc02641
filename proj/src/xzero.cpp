#include "shiftpred/xzero.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace shiftpred {

LambdaParam::LambdaParam(Scalar lambda) : lambda_(std::move(lambda)) {
  bool outside = false;
  if (lambda_.is_exact()) {
    outside = abs(lambda_.exact()) > 1;
  } else {
    outside = lambda_.abs() > 1.0;
  }
  if (!outside) throw PreconditionError("|lambda| must exceed 1, got " + lambda_.to_string());
  inv_.reserve(kCached);
  inv_.emplace_back(1);
  const Scalar step = Scalar(1) / lambda_;
  for (unsigned k = 1; k < kCached; ++k) {
    Scalar next = inv_.back() * step;
    if (!next.is_exact() && next.is_zero()) next = Scalar(0);
    inv_.push_back(std::move(next));
  }
}

LambdaParam LambdaParam::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return LambdaParam(Scalar::parse_real(text));
  Scalar re = Scalar::parse_real(text.substr(0, comma));
  Scalar im = Scalar::parse_real(text.substr(comma + 1));
  if (im.is_exact() && im.is_zero() && re.is_exact()) return LambdaParam(std::move(re));
  return LambdaParam(Scalar::complex(re.real_part(), im.real_part()));
}

Scalar LambdaParam::inverse_power(unsigned k) const {
  if (k < kCached) return inv_[k];
  return pow(inv_[1], k);
}

std::optional<int> bit_count(Index n) {
  if (n < 0) return std::nullopt;
  return std::popcount(static_cast<std::uint64_t>(n));
}

std::optional<int> bit_count(Wide n) {
  if (n < 0) return std::nullopt;
  __extension__ using UWide = unsigned __int128;
  const auto u = static_cast<UWide>(n);
  return std::popcount(static_cast<std::uint64_t>(u)) +
         std::popcount(static_cast<std::uint64_t>(u >> 64));
}

X0Value x0_eval_flagged(const LambdaParam& lambda, Wide n) {
  const auto b = bit_count(n);
  if (!b) return {Scalar(0), false};
  Scalar v = lambda.inverse_power(static_cast<unsigned>(*b));
  if (!v.is_exact() && std::pow(lambda.modulus(), -*b) < kUnderflowGuard) {
    return {Scalar(0), true};
  }
  return {std::move(v), false};
}

Scalar x0_eval(const LambdaParam& lambda, Wide n) { return x0_eval_flagged(lambda, n).value; }

Scalar x0_eval(const LambdaParam& lambda, Index n) {
  const auto b = bit_count(n);
  if (!b) return Scalar(0);
  return lambda.inverse_power(static_cast<unsigned>(*b));
}

Scalar tau_power_x0(const LambdaParam& lambda, unsigned k, Index n) {
  if (k >= 63) return n == 0 ? Scalar(1) : Scalar(0);
  const Index step = Index{1} << k;
  if (n % step != 0) return Scalar(0);
  return x0_eval(lambda, n / step);
}

WindowSeq x0_window(const LambdaParam& lambda, Window w) {
  return WindowSeq::from_function(w, [&](Index n) { return x0_eval(lambda, n); });
}

WindowSeq tau_power_window(const LambdaParam& lambda, unsigned k, Window w) {
  if (k == 0) return x0_window(lambda, w);
  return tau_apply(tau_power_window(lambda, k - 1, w.halved()), w);
}

GeneratorBattery GeneratorBattery::standard(Index max_shift, unsigned max_tau, Index radius) {
  GeneratorBattery b;
  for (unsigned k = 0; k <= max_tau; ++k) {
    for (Index m = -max_shift; m <= max_shift; ++m) b.generators.push_back({m, k});
  }
  b.window = Window::radius(radius);
  return b;
}

Scalar pair(const Generator& g, const LambdaParam& lambda, const FinSeq& a) {
  Scalar sum(0);
  for (const auto& [n, v] : a) sum += g.eval(lambda, n) * v;
  return sum;
}

double identity_tolerance(const LambdaParam& lambda) { return lambda.is_exact() ? 0.0 : 1e-10; }

namespace {

struct Worst {
  double error = 0;
  Index at = 0;
};

Worst compare(const WindowSeq& a, const WindowSeq& b, Window w) {
  Worst worst;
  for (Index n = w.lo();; ++n) {
    const double d = distance(a.at(n), b.at(n));
    if (d > worst.error) worst = {d, n};
    if (n == w.hi()) break;
  }
  return worst;
}

void record(Report& r, const std::string& clause, const Worst& worst, double tol) {
  r.details[clause + "_error"] = worst.error;
  r.note_error(worst.error);
  r.require(worst.error <= tol, {{"clause", clause}, {"index", worst.at}, {"error", worst.error}});
}

Scalar random_scalar(std::mt19937_64& rng, bool exact) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  if (exact) return Scalar::rational(num(rng), den(rng));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return Scalar::complex(u(rng), u(rng));
}

unsigned ceil_log2(Index n) {
  unsigned j = 0;
  while ((Index{1} << j) < n) ++j;
  return j;
}

}  // namespace

Report verify_intertwine(const LambdaParam& lambda, Window w, std::uint64_t seed,
                         int random_trials) {
  Report r("verify_intertwine");
  r.parameters = {{"lambda", lambda.to_string()}, {"window", w.to_string()}, {"seed", seed},
                  {"random_trials", random_trials}};
  const double tol = identity_tolerance(lambda);
  const Window input = w.halved().shifted(-1).hull(w.shifted(-2).halved());

  auto check = [&](const WindowSeq& x, const std::string& clause) {
    const WindowSeq lhs = tau_apply(shift_window(x, 1, w.halved()), w);
    const WindowSeq rhs = shift_window(tau_apply(x, w.shifted(-2)), 2, w);
    record(r, clause, compare(lhs, rhs, w), tol);
  };

  check(x0_window(lambda, input), "x0");
  std::mt19937_64 rng(seed);
  for (int t = 0; t < random_trials; ++t) {
    const WindowSeq x =
        WindowSeq::from_function(input, [&](Index) { return random_scalar(rng, lambda.is_exact()); });
    check(x, "random_" + std::to_string(t));
  }
  return r;
}

Report verify_x0_identities(const LambdaParam& lambda, Window w, unsigned series_terms) {
  if (series_terms == 0) throw PreconditionError("series_terms must be positive");
  if (w.hi() > (Index{1} << 24) || w.lo() < -(Index{1} << 24)) {
    throw WindowError("identity window " + w.to_string() + " exceeds radius 2^24");
  }
  Report r("verify_x0_identities");
  const double tol = identity_tolerance(lambda);
  const Scalar& li = lambda.inverse();
  const Scalar one(1);
  const Index top = std::max<Index>(w.hi(), 1);
  const unsigned terms_a = ceil_log2(top) + 1;
  r.parameters = {{"lambda", lambda.to_string()}, {"window", w.to_string()},
                  {"series_terms", series_terms}, {"truncation_a", terms_a}};

  // u = (id - lambda^-1 sigma) x0 on a window holding w, w/2 and w - 2.
  const Window uw = w.hull(w.halved()).hull(w.shifted(-2)).hull(Window(0, std::max<Index>(w.hi(), 0)));
  const WindowSeq x = x0_window(lambda, uw.hull(uw.shifted(-1)));
  const WindowSeq u = x.restrict_to(uw) - li * shift_window(x, 1, uw);
  const WindowSeq t1 = tau_power_window(lambda, 1, uw);

  // (a)
  {
    WindowSeq rhs(w);
    WindowSeq tj = t1.restrict_to(w);
    for (unsigned j = 1; j <= terms_a; ++j) {
      if (j > 1) tj = tau_power_window(lambda, j, w);
      rhs += lambda.inverse_power(j) * tj;
    }
    rhs *= lambda.value() - one;
    if (w.contains(0)) rhs.at(0) += lambda.inverse_power(terms_a);
    record(r, "tau_series", compare(u, rhs, w), tol);
  }
  // (b)
  {
    const WindowSeq lhs = u.restrict_to(w) - li * tau_apply(u, w);
    const WindowSeq rhs = ((lambda.value() - one) * li) * t1.restrict_to(w);
    record(r, "tau_resolvent", compare(lhs, rhs, w), tol);
  }
  // (c)
  {
    const Scalar li2 = li * li;
    const Index hi = w.hi();
    std::vector<Scalar> s;  // s[n] = series at n >= 0
    if (hi >= 0) {
      s.resize(static_cast<std::size_t>(hi) + 1);
      for (Index n = 0; n <= hi; ++n) {
        Scalar v = u.at(n);
        if (n >= 2) v += li2 * s[static_cast<std::size_t>(n - 2)];
        s[static_cast<std::size_t>(n)] = std::move(v);
      }
    }
    auto series = [&](Index n) { return n < 0 ? Scalar(0) : s[static_cast<std::size_t>(n)]; };
    const WindowSeq full = WindowSeq::from_function(w, series);
    record(r, "power_series", compare(full, t1, w), tol);

    const Scalar scale = lambda.inverse_power(2 * series_terms);
    const Index lag = 2 * static_cast<Index>(series_terms);
    const WindowSeq partial = WindowSeq::from_function(
        w, [&](Index n) { return series(n) - scale * series(n - lag); });
    const double tail = max_discrepancy(partial, t1, w);
    const double bound = std::pow(lambda.modulus(), -2.0 * series_terms);
    r.details["truncation_tail"] = tail;
    r.details["truncation_bound"] = bound;
    r.require(tail <= bound * (1 + 1e-12),
              {{"clause", "power_series_tail"}, {"tail", tail}, {"bound", bound}});
  }
  // (d)
  {
    const WindowSeq rhs = t1.restrict_to(w) - (li * li) * shift_window(t1, 2, w);
    record(r, "two_step", compare(u, rhs, w), tol);
  }
  return r;
}

}  // namespace shiftpred
