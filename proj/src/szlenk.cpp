#include "shiftpred/szlenk.hpp"

#include <algorithm>
#include <cmath>

#include "shiftpred/extension.hpp"

namespace shiftpred {

namespace {

std::optional<mpq_class> exact_modulus(const LambdaParam& lambda) {
  if (!lambda.is_exact()) return std::nullopt;
  return abs(lambda.value().exact());
}

double tail_l1(const FinSeq& a, Index n) {
  double s = 0;
  for (const auto& [k, v] : a) {
    if (k > n || k < -n) s += v.abs();
  }
  return s;
}

double head_l1(const FinSeq& a, Index n) { return l1_norm(a) - tail_l1(a, n); }

FinSeq head(const FinSeq& a, Index n) {
  FinSeq out;
  for (const auto& [k, v] : a) {
    if (k >= -n && k <= n) out.set(k, v);
  }
  return out;
}

Scalar pairing(const ExtensionMap& x, const FinSeq& a) {
  Scalar s(0);
  for (const auto& [k, v] : a) s += x.value_at(k) * v;
  return s;
}

}  // namespace

Scalar shrink_radius(const ShrinkParams& p) {
  const auto mod = exact_modulus(p.lambda);
  if (mod && p.epsilon.is_exact() && p.r.is_exact()) {
    const mpq_class u = 1 / *mod;
    mpq_class out = p.r.exact() - (p.epsilon.exact() / 3) * (1 - u) / (1 + u);
    out.canonicalize();
    return Scalar(out);
  }
  const double u = 1 / p.lambda.modulus();
  return Scalar::real(p.r.real_part() - (p.epsilon.real_part() / 3) * (1 - u) / (1 + u));
}

std::optional<unsigned long long> shrink_iteration_bound(const LambdaParam& lambda,
                                                         const Scalar& epsilon) {
  const double e = epsilon.real_part();
  if (!(e > 0 && e < 2)) throw PreconditionError("epsilon must lie in (0, 2)");
  if (e < 1e-9) return std::nullopt;
  const auto mod = exact_modulus(lambda);
  if (mod && epsilon.is_exact()) {
    mpq_class c = (epsilon.exact() / 3) * (*mod - 1) / (*mod + 1);
    c.canonicalize();
    // least alpha with alpha * c > 1
    mpz_class q = c.get_den() / c.get_num();
    return q.get_ui() + 1;
  }
  const double c = (e / 3) * (lambda.modulus() - 1) / (lambda.modulus() + 1);
  return static_cast<unsigned long long>(std::floor(1 / c)) + 1;
}

WitnessFamily canonical_family(const LambdaParam& lambda, unsigned first, unsigned last) {
  if (last > 61 || first > last) throw PreconditionError("canonical family needs first <= last <= 61");
  WitnessFamily w;
  w.limit = FinSeq::delta(0, lambda.inverse());
  for (unsigned n = first; n <= last; ++n) w.approximants.push_back(FinSeq::delta(Index{1} << n));
  return w;
}

Report shrink_witness_check(const WitnessFamily& w, const ShrinkParams& p) {
  const double eps = p.epsilon.real_part();
  const double r = p.r.real_part();
  const double delta = p.delta_value();
  const double u = 1 / p.lambda.modulus();
  const Index n = p.n;
  if (w.approximants.empty()) throw InvariantError("clause approximants: family is empty");

  // Admissibility gate.
  for (std::size_t i = 0; i < w.approximants.size(); ++i) {
    const double norm = l1_norm(w.approximants[i]);
    if (norm > r + 1e-12) {
      throw InvariantError("clause norm: ||a^(" + std::to_string(i) + ")|| = " +
                           std::to_string(norm) + " exceeds r");
    }
    const double gap = l1_norm(w.approximants[i] - w.limit);
    if (gap < eps / 3 - 1e-12) {
      throw InvariantError("clause separation: ||a^(" + std::to_string(i) + ") - a|| = " +
                           std::to_string(gap) + " is below eps/3");
    }
  }
  const FinSeq& last = w.approximants.back();
  const double coord_gap = l1_norm(head(last, n) - head(w.coordinate_limit, n));
  if (coord_gap > 1e-8) {
    throw InvariantError("clause coordinatewise: last approximant differs from b by " +
                         std::to_string(coord_gap) + " on |k| <= N");
  }
  double battery_gap = 0;
  for (const auto& g : GeneratorBattery::standard().generators) {
    battery_gap = std::max(battery_gap,
                           distance(pair(g, p.lambda, last), pair(g, p.lambda, w.limit)));
  }
  if (battery_gap > 1e-8) {
    throw InvariantError("clause weak*: battery pairings differ by " + std::to_string(battery_gap));
  }
  if (tail_l1(w.limit, n) > delta + 1e-15) {
    throw InvariantError("clause truncation: sum_{|k|>N} |a_k| exceeds delta");
  }

  Report rep("shrink_witness_check");
  rep.parameters = {{"lambda", p.lambda.to_string()}, {"epsilon", eps}, {"r", r},
                    {"delta", delta}, {"N", n}, {"approximants", w.approximants.size()}};

  // Sign-matching y on |k| <= N and its extension x.
  FinSeq y;
  for (const auto& [k, v] : head(w.limit - w.coordinate_limit, n)) {
    y.set(k, v.is_exact() ? Scalar(sgn(v.exact())) : v.conj() / Scalar::real(v.abs()));
  }
  const ExtensionMap x(y, p.lambda);
  const Extension ext = extend(y, p.lambda, Window::radius(std::max<Index>(n, 1) + 64));

  const double tail_a = tail_l1(w.limit, n);
  const double liminf_tail = tail_l1(last, n);  // stands in for the liminf
  const double head_diff = head_l1(w.limit - w.coordinate_limit, n);
  const double b_norm = l1_norm(w.coordinate_limit);
  const double pair_gap = distance(pairing(x, w.limit), pairing(x, last));
  const double slack = coord_gap + pair_gap;

  // <x, a> - sum_{|k|<=N} x_k b_k against sum_{|k|>N} x_k a^(n)_k.
  Scalar tail_lhs = pairing(x, w.limit) - pairing(x, head(w.coordinate_limit, n));
  FinSeq far = last - head(last, n);
  Scalar tail_rhs = pairing(x, far);

  const double b_bound = b_norm;
  const double head_lhs = head_diff - tail_a;
  const double head_rhs = u * liminf_tail + slack;
  const double split_lhs = eps / 3;
  const double split_rhs = 2 * delta + (1 + u) * liminf_tail + slack;
  const double radius_lhs = liminf_tail + head_l1(w.coordinate_limit, n);
  const double radius_rhs = r + slack;
  const double norm_a = l1_norm(w.limit);
  const double final_rhs = 2 * delta + r - ((1 - u) / (1 + u)) * (eps / 3 - 2 * delta) + 2 * slack;
  const double rprime = shrink_radius(p).real_part();

  rep.details = {{"extension", ext.certificate.to_json()},
                 {"coordinate_gap", coord_gap},
                 {"pairing_gap", pair_gap},
                 {"battery_gap", battery_gap},
                 {"liminf_tail", liminf_tail},
                 {"b_norm_bound", {{"b_norm", b_bound}, {"r", r}}},
                 {"tail_pairing", {{"lhs", tail_lhs.abs()}, {"rhs", tail_rhs.abs()}, {"gap", distance(tail_lhs, tail_rhs)}}},
                 {"head_vs_tail", {{"lhs", head_lhs}, {"rhs", head_rhs}}},
                 {"epsilon_split", {{"lhs", split_lhs}, {"rhs", split_rhs}}},
                 {"radius_split", {{"lhs", radius_lhs}, {"rhs", radius_rhs}}},
                 {"final_bound", {{"norm_a", norm_a}, {"bound", final_rhs}}},
                 {"r_prime", rprime}};
  const double tol = 1e-9;
  rep.require(ext.certificate.ok, {{"clause", "extension"}, {"certificate", ext.certificate.to_json()}});
  rep.require(b_bound <= r + tol, {{"clause", "b_norm_bound"}, {"b_norm", b_bound}});
  rep.require(distance(tail_lhs, tail_rhs) <= slack + tol, {{"clause", "tail_pairing"}});
  rep.require(head_lhs <= head_rhs + tol, {{"clause", "head_vs_tail"}, {"lhs", head_lhs}, {"rhs", head_rhs}});
  rep.require(split_lhs <= split_rhs + tol, {{"clause", "epsilon_split"}, {"lhs", split_lhs}, {"rhs", split_rhs}});
  rep.require(radius_lhs <= radius_rhs + tol, {{"clause", "radius_split"}, {"lhs", radius_lhs}, {"rhs", radius_rhs}});
  rep.require(norm_a <= final_rhs + tol, {{"clause", "final_bound"}, {"norm_a", norm_a}, {"bound", final_rhs}});
  rep.note_error(slack);
  return rep;
}

double chain_separation(const FinSeq& a, unsigned m, Index t, Index s) {
  return l1_norm(shift(power(a, m), checked_add(t, s)) - shift(power(a, m + 1), t));
}

Report witness_chain_check(const ProjectionSpec& spec, double epsilon, unsigned depth, Index t_range) {
  if (spec.k() != 1) throw PreconditionError("witness chains need k = 1");
  const FinSeq& a = spec.images.front();
  std::vector<FinSeq> powers{FinSeq::delta(0)};
  for (unsigned m = 1; m <= depth + 1; ++m) {
    powers.push_back(convolve(powers.back(), a));
    if (l1_norm(powers.back()) < 1 - 1e-12) {
      throw PreconditionError("||a^" + std::to_string(m) + "||_1 = " +
                              std::to_string(l1_norm(powers.back())) + " is below 1");
    }
  }
  Report r("witness_chain_check");
  r.parameters = {{"epsilon", epsilon}, {"depth", depth}, {"t_range", t_range}};
  const bool exact = a.is_exact();
  Json stages = Json::array();
  for (unsigned m = 1; m <= depth; ++m) {
    const FinSeq& p = powers[m];
    const FinSeq& q = powers[m + 1];
    const double target = l1_norm(p) + l1_norm(q);
    const Index disjoint = std::max(q.max_index() - p.min_index() + 1, p.max_index() - q.min_index() + 1);
    Index least = -1;
    double separation = 0;
    auto is_full = [&](const FinSeq& diff) {
      return exact ? *l1_norm_exact(diff) == *l1_norm_exact(p) + *l1_norm_exact(q)
                   : std::abs(l1_norm(diff) - target) <= 1e-12;
    };
    for (Index t = -t_range; t <= t_range; ++t) {
      // Least |s| with full separation.
      for (Index s = 0; s <= disjoint; ++s) {
        bool found = false;
        for (Index signed_s : {s, -s}) {
          const FinSeq diff = shift(p, t + signed_s) - shift(q, t);
          if (is_full(diff)) {
            found = true;
            separation = l1_norm(diff);
            break;
          }
        }
        if (found) {
          least = std::max(least, s);
          break;
        }
      }
      const FinSeq apart = shift(p, t + disjoint) - shift(q, t);
      const double at_disjoint = l1_norm(apart);
      r.note_error(std::abs(at_disjoint - target));
      r.require(is_full(apart) && at_disjoint > epsilon,
                {{"m", m}, {"t", t}, {"s", disjoint}, {"separation", at_disjoint}});
    }
    stages.push_back({{"m", m}, {"least_s", least}, {"disjoint_s", disjoint},
                      {"separation", separation}, {"norm_sum", target}});
    r.require(least >= 0, {{"m", m}, {"reason", "no adequate shift"}});
  }
  r.details["stages"] = stages;
  return r;
}

}  // namespace shiftpred
