#include "shiftpred/extension.hpp"

#include <algorithm>

namespace shiftpred {

ExtensionMap::ExtensionMap(const FinSeq& y, const LambdaParam& lambda)
    : y_(y), lambda_(lambda) {
  if (y.empty()) return;
  pre_shift_ = checked_sub(1, y.min_index());
  normalized_ = shift(y, pre_shift_);
  const Index top = normalized_.max_index();
  while ((Index{1} << k_) < top) ++k_;
}

Scalar ExtensionMap::value_at(Index n) const {
  if (normalized_.empty()) return Scalar(0);
  const Index m = checked_add(n, pre_shift_);
  const Index block = Index{1} << k_;
  const Index s = floor_div(m - 1, block);
  const Index r = m - block * s;
  const Scalar yr = normalized_[r];
  if (yr.is_zero()) return Scalar(0);
  return yr * x0_eval(lambda_, s);
}

Scalar ExtensionMap::value_by_sum(Index n) const {
  const Index m = checked_add(n, pre_shift_);
  Scalar sum(0);
  for (const auto& [idx, v] : normalized_) sum += v * tau_power_x0(lambda_, k_, m - idx);
  return sum;
}

Json ExtensionCertificate::to_json() const {
  return {{"pre_shift", pre_shift}, {"k", k},
          {"support_error", support_error}, {"off_support_max", off_support_max},
          {"bound", bound}, {"ok", ok}};
}

Extension extend(const FinSeq& y, const LambdaParam& lambda, Window w) {
  if (!y.empty() && !w.contains(Window(y.min_index(), y.max_index()))) {
    throw WindowError("window " + w.to_string() + " does not cover the support of y");
  }
  const ExtensionMap map(y, lambda);
  Extension out{WindowSeq::from_function(w, [&](Index n) { return map.value_at(n); }), {}};
  auto& cert = out.certificate;
  cert.pre_shift = map.pre_shift();
  cert.k = map.k();
  cert.bound = sup_norm(y) / lambda.modulus();
  for (Index n = w.lo();; ++n) {
    const Scalar& xn = out.x.at(n);
    const Scalar yn = y[n];
    if (!yn.is_zero()) {
      cert.support_error = std::max(cert.support_error, distance(xn, yn));
    } else {
      cert.off_support_max = std::max(cert.off_support_max, xn.abs());
    }
    if (n == w.hi()) break;
  }
  const double tol = lambda.is_exact() && y.is_exact() ? 0.0 : 1e-12;
  cert.ok = cert.support_error <= tol && cert.off_support_max <= cert.bound + 1e-12;
  return out;
}

Report isometry_witness(const FinSeq& a, const LambdaParam& lambda, double delta,
                        std::optional<Window> w) {
  if (a.empty()) throw PreconditionError("isometry witness needs a nonzero element");
  Report r("isometry_witness");
  const Window win = w.value_or(Window(a.min_index(), a.max_index()).hull(Window::radius(64)));
  r.parameters = {{"lambda", lambda.to_string()}, {"delta", delta}, {"window", win.to_string()},
                  {"support_size", a.size()}};

  FinSeq y;
  for (const auto& [n, v] : a) {
    if (v.is_exact()) {
      y.set(n, Scalar(sgn(v.exact())));
    } else {
      y.set(n, v.conj() / Scalar::real(v.abs()));
    }
  }
  const Extension ext = extend(y, lambda, win);
  Scalar pairing(0);
  for (const auto& [n, v] : a) pairing += ext.x.at(n) * v;
  const double norm = l1_norm(a);
  const double sup = sup_on(ext.x, win);
  r.details["pairing"] = pairing.abs();
  r.details["l1_norm"] = norm;
  r.details["sup_x"] = sup;
  r.details["certificate"] = ext.certificate.to_json();
  r.note_error(std::max(0.0, norm - pairing.abs()));
  r.require(pairing.abs() >= norm - delta, {{"pairing", pairing.abs()}, {"l1_norm", norm}});
  r.require(sup <= 1.0 + 1e-12, {{"sup_x", sup}});
  r.require(ext.certificate.ok, ext.certificate.to_json());
  return r;
}

}  // namespace shiftpred
