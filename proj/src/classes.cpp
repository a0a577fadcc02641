#include "shiftpred/classes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace shiftpred {

namespace {

constexpr unsigned kMaxWideExponent = 125;

Wide pow2(unsigned e) { return Wide{1} << e; }

unsigned bit_length(Index v) {
  unsigned len = 0;
  for (auto u = static_cast<std::uint64_t>(v < 0 ? -v : v); u != 0; u >>= 1) ++len;
  return len;
}

// sigma^m tau^k x0 at a wide index.
Scalar generator_eval_wide(const Generator& g, const LambdaParam& lambda, Wide n) {
  const Wide m = n - g.shift;
  const Wide step = pow2(g.tau_power);
  if (m % step != 0) return Scalar(0);
  return x0_eval(lambda, m / step);
}

double tolerance_for(const LambdaParam& lambda) { return lambda.is_exact() ? 0.0 : 1e-9; }

}  // namespace

ClassLabel ClassLabel::cls(Index t, unsigned k) {
  if (k == 0) throw PreconditionError("class order k must be positive");
  return {Kind::Class, t, k};
}

std::string ClassLabel::to_string() const {
  switch (kind) {
    case Kind::Point:
      return "Point(" + std::to_string(t) + ")";
    case Kind::Class:
      return "Class(" + std::to_string(t) + "," + std::to_string(k) + ")";
    case Kind::Infinity:
      return "Infinity";
  }
  return "?";
}

Scalar predicted_limit(const ClassLabel& label, const LambdaParam& lambda) {
  switch (label.kind) {
    case ClassLabel::Kind::Point:
      return x0_eval(lambda, label.t);
    case ClassLabel::Kind::Class:
      return lambda.inverse_power(label.k) * x0_eval(lambda, label.t);
    case ClassLabel::Kind::Infinity:
      return Scalar(0);
  }
  return Scalar(0);
}

std::vector<Wide> class_sequence(const ClassLabel& label, unsigned depth, unsigned count) {
  if (depth == 0) throw PreconditionError("class sequence depth must be positive");
  std::vector<Wide> out;
  out.reserve(count);
  switch (label.kind) {
    case ClassLabel::Kind::Point:
      out.assign(count, Wide{label.t});
      break;
    case ClassLabel::Kind::Class: {
      const unsigned last = depth + count * label.k;
      if (last > kMaxWideExponent) {
        throw GuardError("class sequence exponent " + std::to_string(last) + " exceeds 125");
      }
      for (unsigned s = 0; s < count; ++s) {
        Wide v = label.t;
        for (unsigned i = 0; i < label.k; ++i) v += pow2(depth + 1 + s * label.k + i);
        out.push_back(v);
      }
      break;
    }
    case ClassLabel::Kind::Infinity: {
      const unsigned base = depth / 2;
      if (base + count > 63) throw GuardError("infinity sequence too long for 128-bit indices");
      for (unsigned s = 0; s < count; ++s) {
        Wide v = 0;
        for (unsigned i = 0; i < base + s; ++i) v += pow2(2 * i);
        out.push_back(v);
      }
      break;
    }
  }
  return out;
}

Report limit_law_check(const LambdaParam& lambda, Index t, unsigned n_max) {
  if (n_max > kMaxWideExponent) throw GuardError("n_max above 125");
  if (pow2(n_max) <= Wide{t < 0 ? -t : t}) {
    throw PreconditionError("2^n_max must exceed |t|");
  }
  Report r("limit_law_check");
  r.parameters = {{"lambda", lambda.to_string()}, {"t", t}, {"n_max", n_max}};
  const double tol = tolerance_for(lambda);
  const Scalar target = lambda.inverse() * x0_eval(lambda, t);
  const unsigned kt = bit_length(t);
  Json values = Json::array();
  unsigned settled = 0;
  for (unsigned n = 1; n <= n_max; ++n) {
    const Scalar v = x0_eval(lambda, pow2(n) + t);
    const bool past = pow2(n) > Wide{t < 0 ? -t : t};
    if (t >= 0) {
      const double d = distance(v, target);
      if (d <= tol) {
        if (settled == 0) settled = n;
      } else {
        settled = 0;
      }
      if (past) {
        r.note_error(d);
        r.require(d <= tol, {{"n", n}, {"value", v.to_string()}, {"expected", target.to_string()}});
      }
    } else if (past) {
      const double envelope = std::pow(lambda.modulus(), -static_cast<double>(n - kt));
      r.require(v.abs() <= envelope * (1 + 1e-12),
                {{"n", n}, {"modulus", v.abs()}, {"envelope", envelope}});
    }
    if (n <= 16) values.push_back(v.to_string());
  }
  r.details["values"] = values;
  if (t >= 0) {
    r.details["limit"] = target.to_string();
    if (settled != 0) r.details["first_exact_n"] = settled;
  } else {
    r.details["limit"] = "0";
    r.details["k_t"] = kt;
  }
  return r;
}

Report class_limit_check(const LambdaParam& lambda, Index t_max, unsigned k_max, unsigned depth) {
  Report r("class_limit_check");
  r.parameters = {{"lambda", lambda.to_string()}, {"t_max", t_max}, {"k_max", k_max},
                  {"depth", depth}};
  const double tol = tolerance_for(lambda);
  const unsigned count = 4;
  double worst_ratio = 0;
  std::size_t evaluations = 0;
  for (Index t = -t_max; t <= t_max; ++t) {
    for (unsigned k = 1; k <= k_max; ++k) {
      const ClassLabel label = ClassLabel::cls(t, k);
      const Scalar pred = predicted_limit(label, lambda);
      const auto seq = class_sequence(label, depth, count);
      for (unsigned s = 0; s < seq.size(); ++s) {
        const Scalar v = x0_eval(lambda, seq[s]);
        ++evaluations;
        if (t >= 0) {
          const double d = distance(v, pred);
          r.note_error(d);
          r.require(d <= tol, {{"label", label.to_string()}, {"member", s},
                               {"value", v.to_string()}, {"predicted", pred.to_string()}});
        } else {
          const unsigned n1 = depth + 1 + s * k;
          const double envelope = std::pow(lambda.modulus(), -static_cast<double>(n1 - bit_length(t)));
          worst_ratio = std::max(worst_ratio, v.abs() / envelope);
          r.require(pred.is_zero() && v.abs() <= envelope * (1 + 1e-12),
                    {{"label", label.to_string()}, {"member", s}, {"modulus", v.abs()},
                     {"envelope", envelope}});
        }
      }
    }
  }
  const auto inf = class_sequence(ClassLabel::infinity(), depth, count);
  for (unsigned s = 0; s < inf.size(); ++s) {
    const Scalar v = x0_eval(lambda, inf[s]);
    const double envelope = std::pow(lambda.modulus(), -static_cast<double>(depth / 2 + s));
    r.require(v.abs() <= envelope * (1 + 1e-12),
              {{"label", "Infinity"}, {"member", s}, {"modulus", v.abs()}, {"envelope", envelope}});
  }
  r.details["evaluations"] = evaluations;
  r.details["negative_t_envelope_ratio_max"] = worst_ratio;
  return r;
}

namespace {

void for_each_subset(unsigned lo, unsigned hi, unsigned size,
                     const std::function<void(const std::vector<unsigned>&)>& f) {
  std::vector<unsigned> cur;
  std::function<void(unsigned)> rec = [&](unsigned next) {
    if (cur.size() == size) {
      f(cur);
      return;
    }
    for (unsigned e = next; e + (size - cur.size()) <= hi + 1; ++e) {
      cur.push_back(e);
      rec(e + 1);
      cur.pop_back();
    }
  };
  rec(lo);
}

struct SumTable {
  std::unordered_map<Index, std::vector<unsigned>> by_value;
};

SumTable sums_of(unsigned lo, unsigned hi, unsigned size) {
  SumTable table;
  for_each_subset(lo, hi, size, [&](const std::vector<unsigned>& e) {
    Index v = 0;
    for (unsigned x : e) v += Index{1} << x;
    table.by_value[v] = e;
  });
  return table;
}

struct DisjointnessCounts {
  std::size_t tuples = 0;
  std::size_t trivial = 0;
  std::size_t nontrivial = 0;
};

DisjointnessCounts search_cell(Index s, Index t, unsigned k, unsigned l, unsigned threshold,
                               unsigned bound, const SumTable& rhs, Report& r) {
  DisjointnessCounts c;
  for_each_subset(threshold, bound, k, [&](const std::vector<unsigned>& n) {
    ++c.tuples;
    Index v = s - t;
    for (unsigned x : n) v += Index{1} << x;
    const auto it = rhs.by_value.find(v);
    if (it == rhs.by_value.end()) return;
    if (k == l && s == t && it->second == n) {
      ++c.trivial;
      return;
    }
    ++c.nontrivial;
    if (r.witnesses.size() < 8) {
      r.fail({{"s", s}, {"t", t}, {"n", n}, {"m", it->second}});
    } else {
      r.status = Status::Fail;
    }
  });
  return c;
}

void disjointness_guards(unsigned k, unsigned l, unsigned bound) {
  if (k == 0 || l == 0) throw PreconditionError("class orders must be positive");
  if (k > 4 || l > 4) throw GuardError("class orders above 4");
  if (bound > 16) throw GuardError("exponent bound above 16");
}

unsigned least_threshold(Index d) {
  unsigned th = 1;
  while ((Index{1} << th) <= (d < 0 ? -d : d)) ++th;
  return th;
}

}  // namespace

Report class_disjointness_check(Index s, Index t, unsigned k, unsigned l, unsigned threshold,
                                unsigned bound) {
  disjointness_guards(k, l, bound);
  if (threshold >= 62 || (Index{1} << threshold) <= std::abs(s - t)) {
    throw PreconditionError("2^threshold must exceed |s - t|");
  }
  Report r("class_disjointness_check");
  r.parameters = {{"s", s}, {"t", t}, {"k", k}, {"l", l}, {"threshold", threshold},
                  {"bound", bound}};
  if (threshold > bound) return r;
  const SumTable rhs = sums_of(threshold, bound, l);
  const auto c = search_cell(s, t, k, l, threshold, bound, rhs, r);
  r.details = {{"tuples", c.tuples}, {"trivial_solutions", c.trivial},
               {"nontrivial_solutions", c.nontrivial}};
  return r;
}

Report class_disjointness_grid(Index st_max, unsigned kl_max, unsigned bound) {
  disjointness_guards(kl_max, kl_max, bound);
  Report r("class_disjointness_grid");
  r.parameters = {{"st_max", st_max}, {"kl_max", kl_max}, {"bound", bound}};
  std::map<std::pair<unsigned, unsigned>, SumTable> tables;
  DisjointnessCounts total;
  std::size_t cells = 0;
  for (Index s = -st_max; s <= st_max; ++s) {
    for (Index t = -st_max; t <= st_max; ++t) {
      const unsigned th = least_threshold(s - t);
      if (th > bound) continue;
      for (unsigned l = 1; l <= kl_max; ++l) {
        auto it = tables.find({th, l});
        if (it == tables.end()) it = tables.emplace(std::make_pair(th, l), sums_of(th, bound, l)).first;
        for (unsigned k = 1; k <= kl_max; ++k) {
          const auto c = search_cell(s, t, k, l, th, bound, it->second, r);
          total.tuples += c.tuples;
          total.trivial += c.trivial;
          total.nontrivial += c.nontrivial;
          ++cells;
        }
      }
    }
  }
  r.details = {{"cells", cells}, {"tuples", total.tuples}, {"trivial_solutions", total.trivial},
               {"nontrivial_solutions", total.nontrivial}};
  return r;
}

void ClassMeasure::add(const ClassLabel& label, const Scalar& mass) {
  switch (label.kind) {
    case ClassLabel::Kind::Point:
      point_mass.add(label.t, mass);
      break;
    case ClassLabel::Kind::Class: {
      auto& slot = class_mass[{label.t, label.k}];
      slot += mass;
      if (slot.is_zero()) class_mass.erase({label.t, label.k});
      break;
    }
    case ClassLabel::Kind::Infinity:
      infinity_mass += mass;
      break;
  }
}

FinSeq measure_to_l1(const ClassMeasure& mu, const LambdaParam& lambda) {
  FinSeq a = mu.point_mass;
  for (const auto& [key, mass] : mu.class_mass) {
    a.add(key.first, lambda.inverse_power(key.second) * mass);
  }
  return a;
}

Report pairing_check(const ClassMeasure& mu, const GeneratorBattery& battery,
                     const LambdaParam& lambda) {
  Report r("pairing_check");
  r.parameters = {{"lambda", lambda.to_string()}, {"battery_size", battery.generators.size()},
                  {"classes", mu.class_mass.size()}, {"points", mu.point_mass.size()}};
  const double tol = identity_tolerance(lambda);
  const FinSeq a = measure_to_l1(mu, lambda);
  constexpr unsigned kDepth = 60;
  double rule_gap = 0;
  for (const auto& g : battery.generators) {
    Scalar lhs(0);
    for (const auto& [t, mass] : mu.point_mass) lhs += mass * g.eval(lambda, t);
    for (const auto& [key, mass] : mu.class_mass) {
      const auto [t, k] = key;
      const Scalar rule = lambda.inverse_power(k) * g.eval(lambda, t);
      lhs += mass * rule;
      if (t - g.shift >= 0) {
        for (Wide v : class_sequence(ClassLabel::cls(t, k), kDepth, 2)) {
          const double d = distance(generator_eval_wide(g, lambda, v), rule);
          rule_gap = std::max(rule_gap, d);
          r.require(d <= tol, {{"generator", {g.shift, g.tau_power}},
                               {"class", ClassLabel::cls(t, k).to_string()}, {"rule_gap", d}});
        }
      }
    }
    const Scalar rhs = pair(g, lambda, a);
    const double d = distance(lhs, rhs);
    r.note_error(d);
    r.require(d <= tol, {{"generator", {g.shift, g.tau_power}}, {"measure_side", lhs.to_string()},
                         {"sequence_side", rhs.to_string()}});
  }
  r.details["rule_vs_sequence_max"] = rule_gap;
  return r;
}

Report generator_pairing(const FinSeq& a, const LambdaParam& lambda) {
  Report r("generator_pairing");
  r.parameters = {{"lambda", lambda.to_string()}, {"support_size", a.size()}};
  if (a.empty()) return r;
  unsigned k = 0;
  while ((Index{1} << k) <= a.max_index() - a.min_index()) ++k;
  r.details["tau_power"] = k;
  const double tol = identity_tolerance(lambda);
  for (Index n = a.min_index() - 2; n <= a.max_index() + 2; ++n) {
    const Scalar got = pair(Generator{n, k}, lambda, a);
    const double d = distance(got, a[n]);
    r.note_error(d);
    r.require(d <= tol, {{"index", n}, {"recovered", got.to_string()}, {"actual", a[n].to_string()}});
  }
  return r;
}

}  // namespace shiftpred
