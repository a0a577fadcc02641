#include "shiftpred/topology.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

namespace shiftpred {

namespace {

Index magnitude(Index v) { return v < 0 ? -v : v; }

// Members of J with |j| > n, ordered by magnitude (ties by value).
std::vector<Index> large_members(const SparseSet& j, Index n, Index bound) {
  std::vector<Index> out;
  for (Index v : j.enumerate(bound)) {
    if (magnitude(v) > n) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), [](Index a, Index b) {
    return magnitude(a) < magnitude(b) || (magnitude(a) == magnitude(b) && a < b);
  });
  return out;
}

// Enumerates choices of d[i] members of pool[i] (increasing magnitude within
// each i, distinct magnitudes overall) whose total lies in [lo, hi]. The
// callback returns false to stop the search.
void decompositions(const std::vector<std::vector<Index>>& pool, const std::vector<unsigned>& d,
                    Index lo, Index hi,
                    const std::function<bool(const std::vector<std::vector<Index>>&, Index)>& visit) {
  const std::size_t k = pool.size();
  std::vector<std::vector<Index>> chosen(k);
  std::set<Index> used;
  unsigned remaining = std::accumulate(d.begin(), d.end(), 0u);
  Index max_mag = 0;
  for (const auto& p : pool) {
    for (Index v : p) max_mag = std::max(max_mag, magnitude(v));
  }
  bool stop = false;
  std::function<void(std::size_t, std::size_t, Index)> rec = [&](std::size_t i, std::size_t start,
                                                                 Index sum) {
    if (stop) return;
    while (i < k && chosen[i].size() == d[i]) {
      ++i;
      start = 0;
    }
    if (i == k) {
      if (sum >= lo && sum <= hi && !visit(chosen, sum)) stop = true;
      return;
    }
    // Every remaining term has modulus at most max_mag.
    const Index reach = static_cast<Index>(remaining) * max_mag;
    if (sum + reach < lo || sum - reach > hi) return;
    const auto& p = pool[i];
    for (std::size_t pos = start; pos < p.size() && !stop; ++pos) {
      const Index v = p[pos];
      if (used.count(magnitude(v)) != 0) continue;
      if (!chosen[i].empty() && magnitude(v) <= magnitude(chosen[i].back())) continue;
      chosen[i].push_back(v);
      used.insert(magnitude(v));
      --remaining;
      rec(i, pos + 1, sum + v);
      ++remaining;
      used.erase(magnitude(v));
      chosen[i].pop_back();
    }
  };
  rec(0, 0, 0);
}

}  // namespace

Json Membership::to_json() const { return {{"member", member}, {"witness", witness}}; }

Membership neighborhood_member(const SemiElem& beta, const NeighborhoodSpec& nbhd,
                               const SparseFamily& family) {
  const SemiElem& gamma = nbhd.gamma;
  if (beta.is_infinity() || gamma.is_infinity()) {
    throw PreconditionError("neighbourhood membership needs finite elements");
  }
  if (beta.k() != gamma.k() || gamma.k() != family.sets.size()) {
    throw PreconditionError("k mismatch between elements and family");
  }
  const std::size_t k = gamma.k();
  std::vector<unsigned> d(k);
  unsigned total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (beta.exponents()[i] > gamma.exponents()[i]) return {};
    d[i] = gamma.exponents()[i] - beta.exponents()[i];
    total += d[i];
  }
  if (total > 6) throw GuardError("more than 6 terms in a neighbourhood witness");
  const Index target = checked_sub(beta.g0(), gamma.g0());
  Membership out;
  if (total == 0) {
    out.member = target == 0;
    if (out.member) out.witness.assign(k, {});
    return out;
  }
  std::vector<std::vector<Index>> pool;
  for (std::size_t i = 0; i < k; ++i) {
    pool.push_back(d[i] == 0 ? std::vector<Index>{}
                             : large_members(family.sets[i], nbhd.n, nbhd.search_bound));
  }
  decompositions(pool, d, target, target, [&](const std::vector<std::vector<Index>>& c, Index) {
    out.member = true;
    out.witness = c;
    return false;
  });
  return out;
}

LimitPrediction limit_predict(const std::vector<Index>& seq, const ProjectionSpec& spec,
                              const LimitOptions& opts) {
  std::vector<SemiElem> lifted;
  lifted.reserve(seq.size());
  for (Index v : seq) lifted.push_back(SemiElem::embed(v, spec.k()));
  return limit_predict(lifted, spec, opts);
}

LimitPrediction limit_predict(const std::vector<SemiElem>& seq, const ProjectionSpec& spec,
                              const LimitOptions& opts) {
  LimitPrediction out;
  if (seq.empty() || opts.levels == 0) {
    out.evidence["reason"] = "empty sequence";
    return out;
  }
  const std::size_t k = spec.k();
  if (spec.family.sets.size() != k) throw PreconditionError("family size differs from k");
  std::vector<Index> levels;
  for (unsigned q = 0; q < opts.levels; ++q) levels.push_back(opts.threshold_base << q);
  const Index top = levels.back();
  out.evidence["levels"] = levels;

  const SemiElem& last = seq.back();
  if (last.is_infinity()) {
    out.evidence["reason"] = "sequence ends at infinity";
    return out;
  }

  // Candidates: last = gamma_0 + sum of J-terms beyond the top level, with
  // |gamma_0| <= top.
  std::vector<std::vector<Index>> pool;
  for (std::size_t i = 0; i < k; ++i) pool.push_back(large_members(spec.family.sets[i], top, opts.search_bound));
  std::set<SemiElem> candidates;
  std::vector<unsigned> d(k, 0);
  std::function<void(std::size_t, unsigned)> counts = [&](std::size_t i, unsigned left) {
    if (i == k) {
      decompositions(pool, d, last.g0() - top, last.g0() + top,
                     [&](const std::vector<std::vector<Index>>&, Index sum) {
                       std::vector<unsigned> g = last.exponents();
                       for (std::size_t x = 0; x < k; ++x) g[x] += d[x];
                       candidates.insert(SemiElem::finite(last.g0() - sum, std::move(g)));
                       return true;
                     });
      return;
    }
    for (unsigned c = 0; c <= left; ++c) {
      d[i] = c;
      counts(i + 1, left - c);
    }
    d[i] = 0;
  };
  counts(0, opts.max_terms);

  Json tried = Json::array();
  std::vector<SemiElem> certified;
  for (const auto& cand : candidates) {
    Json tails = Json::array();
    bool ok = true;
    for (Index n : levels) {
      const NeighborhoodSpec nb{cand, n, opts.search_bound};
      std::size_t tail = 0;
      for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        if (it->is_infinity() || !neighborhood_member(*it, nb, spec.family).member) break;
        ++tail;
      }
      tails.push_back(tail);
      if (tail < opts.min_tail) ok = false;
    }
    tried.push_back({{"candidate", cand.to_json()}, {"tail_lengths", tails}, {"certified", ok}});
    if (ok) certified.push_back(cand);
  }
  out.evidence["candidates"] = tried;
  if (certified.size() == 1) {
    out.limit = certified.front();
    out.predicted = Theta(spec).of(*out.limit);
  } else {
    out.evidence["reason"] = certified.empty() ? "no certified limit" : "several certified limits";
  }
  return out;
}

}  // namespace shiftpred

namespace shiftpred {

Report neighborhood_property_check(const SparseFamily& family, unsigned cells, std::uint64_t seed,
                                   Index search_bound) {
  Report r("neighborhood_property_check");
  r.parameters = {{"cells", cells}, {"seed", seed}, {"search_bound", search_bound}};
  const std::size_t k = family.sets.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> small(-8, 8);
  std::uniform_int_distribution<Index> wide(-300, 300);
  std::uniform_int_distribution<Index> shift_dist(-50, 50);
  std::uniform_int_distribution<unsigned> expo(0, 2);
  std::uniform_int_distribution<int> level(0, 6);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<std::vector<Index>> members;
  for (const auto& s : family.sets) members.push_back(s.enumerate(search_bound));

  std::size_t inside = 0;
  std::size_t built = 0;
  for (unsigned c = 0; c < cells; ++c) {
    std::vector<unsigned> g(k);
    for (auto& v : g) v = expo(rng);
    const SemiElem gamma = SemiElem::finite(small(rng), g);
    const Index n = Index{1} << level(rng);
    SemiElem beta = gamma;
    bool constructed = false;
    if (coin(rng) == 1) {
      // Remove a few generators, paying with members beyond n.
      std::vector<unsigned> b = g;
      Index b0 = gamma.g0();
      std::set<Index> used;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        std::uniform_int_distribution<unsigned> drop(0, g[i]);
        const unsigned d = drop(rng);
        std::vector<Index> pool;
        for (Index v : members[i]) {
          if (magnitude(v) > n) pool.push_back(v);
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        unsigned taken = 0;
        for (Index v : pool) {
          if (taken == d) break;
          if (used.insert(magnitude(v)).second) {
            b0 += v;
            ++taken;
          }
        }
        ok = taken == d;
        b[i] -= d;
      }
      if (ok) {
        beta = SemiElem::finite(b0, b);
        constructed = true;
      }
    }
    if (!constructed) {
      std::vector<unsigned> b(k);
      for (std::size_t i = 0; i < k; ++i) b[i] = std::min<unsigned>(g[i], expo(rng));
      beta = SemiElem::finite(gamma.g0() + wide(rng), b);
    }
    const NeighborhoodSpec nb{gamma, n, search_bound};
    const bool in = neighborhood_member(beta, nb, family).member;
    inside += in ? 1 : 0;
    built += constructed ? 1 : 0;
    const Json cell = {{"beta", beta.to_json()}, {"gamma", gamma.to_json()}, {"n", n}};
    r.require(!constructed || in, {{"clause", "constructed member"}, {"cell", cell}});

    const SemiElem alpha = SemiElem::embed(shift_dist(rng), k);
    const bool shifted = neighborhood_member(beta + alpha, {gamma + alpha, n, search_bound}, family).member;
    r.require(in == shifted, {{"clause", "shift equivariance"}, {"cell", cell},
                              {"alpha", alpha.to_json()}, {"member", in}, {"shifted", shifted}});
    const bool finer = neighborhood_member(beta, {gamma, 2 * n, search_bound}, family).member;
    r.require(!finer || in, {{"clause", "monotone in n"}, {"cell", cell}});
  }
  r.details["members"] = inside;
  r.details["constructed"] = built;
  return r;
}

Report limit_check(const ProjectionSpec& spec, Index t, const LimitOptions& opts) {
  Report r("limit_check");
  r.parameters = {{"k", spec.k()}, {"t", t}, {"levels", opts.levels},
                  {"threshold_base", opts.threshold_base}};
  if (spec.k() == 0) throw PreconditionError("limit check needs k >= 1");
  const double tol = spec.is_exact() ? 0.0 : 1e-10;
  const std::size_t k = spec.k();
  // One member per magnitude, preferring the positive one.
  std::vector<Index> along;
  {
    std::vector<Index> e = spec.family.sets.front().enumerate(opts.search_bound);
    std::sort(e.begin(), e.end(), [](Index a, Index b) {
      return magnitude(a) < magnitude(b) || (magnitude(a) == magnitude(b) && a > b);
    });
    for (Index v : e) {
      if (along.empty() || magnitude(along.back()) != magnitude(v)) along.push_back(v);
    }
  }
  std::vector<Index> pairs;
  std::vector<Index> shifted;
  for (std::size_t q = 0; q + 1 < along.size(); ++q) pairs.push_back(along[q] + along[q + 1]);
  for (Index v : along) shifted.push_back(v + t);

  Theta th(spec);
  const SemiElem e1 = SemiElem::generator(1, k);
  struct Case {
    std::string name;
    const std::vector<Index>* seq;
    SemiElem expected;
  };
  const std::vector<Case> cases = {
      {"along_J1", &along, e1},
      {"two_term_sums", &pairs, e1 + e1},
      {"shifted", &shifted, e1 + SemiElem::embed(t, k)},
  };
  Json results = Json::array();
  for (const auto& c : cases) {
    const LimitPrediction pred = limit_predict(*c.seq, spec, opts);
    const FinSeq want = th.of(c.expected);
    const bool match = pred.limit && *pred.limit == c.expected;
    const double d = match ? max_difference(pred.predicted, want) : -1;
    results.push_back({{"case", c.name},
                       {"limit", pred.limit ? pred.limit->to_json() : Json("divergent")},
                       {"expected", c.expected.to_json()},
                       {"predicted_error", d},
                       {"evidence", pred.evidence}});
    r.require(match, {{"case", c.name}, {"expected", c.expected.to_json()},
                      {"limit", pred.limit ? pred.limit->to_json() : Json("divergent")}});
    if (match) {
      r.note_error(d);
      r.require(d <= tol, {{"case", c.name}, {"predicted_error", d}});
    }
  }
  r.details["cases"] = results;
  return r;
}

}  // namespace shiftpred
