#include "shiftpred/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>

namespace shiftpred {

namespace {

constexpr std::size_t kMaxTuples = 2'000'000;
constexpr std::size_t kMaxEnumeration = 1 << 16;
constexpr Index kNoEntry = std::numeric_limits<Index>::max();

void check_bound(Index bound) {
  if (bound < 0) throw PreconditionError("negative enumeration bound");
  if (bound > kSparseBoundLimit) throw GuardError("enumeration bound above 2^40");
}

Index abs_index(Index v) { return v < 0 ? -v : v; }

Index default_cap(Index bound, Index cap) {
  if (cap > 0) return cap;
  return static_cast<Index>(std::floor(std::sqrt(static_cast<double>(bound))));
}

}  // namespace

SparseSet SparseSet::powers(Index base) {
  if (base < 2) throw PreconditionError("powers need base >= 2");
  SparseSet s;
  s.kind_ = Kind::Powers;
  s.base_ = base;
  return s;
}

SparseSet SparseSet::factorials() {
  SparseSet s;
  s.kind_ = Kind::Factorials;
  return s;
}

SparseSet SparseSet::explicit_list(std::vector<Index> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  SparseSet s;
  s.kind_ = Kind::Explicit;
  s.members_ = std::move(members);
  return s;
}

SparseSet SparseSet::residue(const SparseSet& parent, unsigned modulus, unsigned residue) {
  if (modulus == 0 || residue >= modulus) throw PreconditionError("bad residue piece");
  SparseSet s;
  s.kind_ = Kind::Residue;
  s.parent_ = std::make_shared<const SparseSet>(parent);
  s.modulus_ = modulus;
  s.residue_ = residue;
  return s;
}

std::vector<Index> SparseSet::enumerate(Index bound) const {
  check_bound(bound);
  std::vector<Index> out;
  switch (kind_) {
    case Kind::Powers:
      for (Index p = base_; p <= bound; p *= base_) {
        out.push_back(p);
        if (p > bound / base_) break;
      }
      break;
    case Kind::Factorials: {
      Index f = 1;
      for (Index m = 1; f <= bound; ++m) {
        f *= m;
        if (f > bound) break;
        out.push_back(f);
        out.push_back(-f);
        if (f > bound / (m + 1)) break;
      }
      break;
    }
    case Kind::Explicit:
      for (Index v : members_) {
        if (abs_index(v) <= bound) out.push_back(v);
      }
      break;
    case Kind::Residue: {
      const auto mags = parent_->magnitudes(bound);
      std::set<Index> keep;
      for (std::size_t i = residue_; i < mags.size(); i += modulus_) keep.insert(mags[i]);
      for (Index v : parent_->enumerate(bound)) {
        if (keep.count(abs_index(v)) != 0) out.push_back(v);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() > kMaxEnumeration) throw GuardError("enumeration above 65536 members");
  return out;
}

std::vector<Index> SparseSet::magnitudes(Index bound) const {
  std::vector<Index> out;
  for (Index v : enumerate(bound)) out.push_back(abs_index(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool SparseSet::is_symmetric(Index bound) const {
  const auto e = enumerate(bound);
  return std::all_of(e.begin(), e.end(),
                     [&](Index v) { return std::binary_search(e.begin(), e.end(), -v); });
}

std::string SparseSet::describe() const {
  switch (kind_) {
    case Kind::Powers:
      return "powers(" + std::to_string(base_) + ")";
    case Kind::Factorials:
      return "signed_factorials";
    case Kind::Explicit: {
      std::string s = "explicit(";
      for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i == 8) {
          s += ",...";
          break;
        }
        s += (i ? "," : "") + std::to_string(members_[i]);
      }
      return s + ")";
    }
    case Kind::Residue:
      return parent_->describe() + "[" + std::to_string(residue_) + " mod " +
             std::to_string(modulus_) + "]";
  }
  return "?";
}

std::optional<std::pair<std::size_t, std::size_t>> SparseFamily::overlap(Index bound,
                                                                         Index* shared) const {
  std::vector<std::vector<Index>> e;
  for (const auto& s : sets) e.push_back(s.enumerate(bound));
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      std::vector<Index> common;
      std::set_intersection(e[i].begin(), e[i].end(), e[j].begin(), e[j].end(),
                            std::back_inserter(common));
      if (!common.empty()) {
        if (shared) *shared = common.front();
        return std::make_pair(i, j);
      }
    }
  }
  return std::nullopt;
}

SparseFamily disjoint_family(const SparseSet& j, unsigned k) {
  if (k == 0) throw PreconditionError("family size must be positive");
  if (j.is_finite() && j.magnitudes(kSparseBoundLimit).size() < k) {
    throw PreconditionError("finite set " + j.describe() + " has fewer than " + std::to_string(k) +
                            " magnitudes");
  }
  SparseFamily f;
  if (k == 1) {
    f.sets.push_back(j);
    return f;
  }
  for (unsigned r = 0; r < k; ++r) f.sets.push_back(SparseSet::residue(j, k, r));
  return f;
}

SparseCheckParams SparseCheckParams::grid(Index t_range, unsigned r_max, unsigned s_max,
                                          Index bound) {
  SparseCheckParams p;
  p.t_lo = -t_range;
  p.t_hi = t_range;
  p.r_hi = r_max;
  p.s_hi = s_max;
  p.bound = bound;
  return p;
}

namespace {

struct Tuple {
  std::vector<Index> entries;  // increasing magnitude
  Index sum = 0;
  Index min_abs = kNoEntry;
  Index max_abs = 0;
  std::vector<unsigned> counts;  // terms per family member (family search only)
};

// Tuples with strictly increasing magnitudes drawn from `members`.
std::vector<Tuple> tuples_of_size(const std::vector<Index>& members, unsigned size) {
  std::vector<Index> mags;
  for (Index v : members) mags.push_back(abs_index(v));
  std::sort(mags.begin(), mags.end());
  mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
  std::vector<std::vector<Index>> by_mag(mags.size());
  for (Index v : members) {
    const auto pos = std::lower_bound(mags.begin(), mags.end(), abs_index(v)) - mags.begin();
    by_mag[static_cast<std::size_t>(pos)].push_back(v);
  }
  std::vector<Tuple> out;
  Tuple cur;
  std::function<void(std::size_t)> rec = [&](std::size_t next) {
    if (cur.entries.size() == size) {
      if (out.size() >= kMaxTuples) throw GuardError("tuple enumeration above 2e6");
      out.push_back(cur);
      return;
    }
    for (std::size_t m = next; m + (size - cur.entries.size()) <= mags.size(); ++m) {
      for (Index v : by_mag[m]) {
        const Tuple saved = cur;
        cur.entries.push_back(v);
        cur.sum += v;
        cur.min_abs = std::min(cur.min_abs, abs_index(v));
        cur.max_abs = std::max(cur.max_abs, abs_index(v));
        rec(m + 1);
        cur = saved;
      }
    }
  };
  rec(0);
  return out;
}

Json tuple_json(const Tuple& t) { return Json(t.entries); }

struct Search {
  Index threshold = 0;
  std::size_t nontrivial = 0;
  std::size_t trivial = 0;
  std::optional<Json> first;
  Index first_key = kNoEntry;
  std::optional<Json> blocking;

  void record(Json witness, Index min_entry, Index max_entry) {
    ++nontrivial;
    if (max_entry < first_key) {
      first_key = max_entry;
      first = witness;
    }
    if (!blocking || min_entry > threshold) {
      threshold = std::max(threshold, min_entry);
      blocking = std::move(witness);
    }
  }
};

void finish(Report& r, const Search& s, Index cap, Index bound) {
  r.details["window_bound"] = bound;
  r.details["threshold"] = s.threshold;
  r.details["threshold_cap"] = cap;
  r.details["nontrivial_solutions"] = s.nontrivial;
  r.details["trivial_solutions"] = s.trivial;
  if (s.first) r.details["first_witness"] = *s.first;
  if (s.blocking) r.details["blocking_witness"] = *s.blocking;
  r.details["certified_within_window"] = s.threshold <= cap;
  if (s.threshold > cap) {
    r.fail({{"reason", "threshold above cap"}, {"threshold", s.threshold}, {"cap", cap},
            {"first", s.first.value_or(Json())}, {"blocking", s.blocking.value_or(Json())}});
  }
}

}  // namespace

Report additively_sparse_check(const SparseSet& j, const SparseCheckParams& p) {
  if (p.r_hi > 5 || p.s_hi > 5) throw GuardError("r, s above 5");
  if (p.t_lo > p.t_hi || p.r_lo > p.r_hi || p.s_lo > p.s_hi) throw PreconditionError("empty ranges");
  check_bound(p.bound);
  Report r("additively_sparse_check");
  const Index cap = default_cap(p.bound, p.threshold_cap);
  r.parameters = {{"set", j.describe()}, {"t", {p.t_lo, p.t_hi}}, {"r", {p.r_lo, p.r_hi}},
                  {"s", {p.s_lo, p.s_hi}}, {"bound", p.bound}};
  const auto members = j.enumerate(p.bound);
  r.details["members"] = members.size();

  std::vector<std::vector<Tuple>> by_size(std::max(p.r_hi, p.s_hi) + 1);
  std::vector<std::unordered_map<Index, std::vector<std::size_t>>> buckets(by_size.size());
  for (unsigned n = 0; n < by_size.size(); ++n) {
    by_size[n] = tuples_of_size(members, n);
    for (std::size_t i = 0; i < by_size[n].size(); ++i) buckets[n][by_size[n][i].sum].push_back(i);
  }

  Search search;
  Json per_rs = Json::array();
  for (unsigned rr = p.r_lo; rr <= p.r_hi; ++rr) {
    for (unsigned ss = p.s_lo; ss <= p.s_hi; ++ss) {
      Index cell_threshold = 0;
      for (const Tuple& a : by_size[rr]) {
        for (Index t = p.t_lo; t <= p.t_hi; ++t) {
          const auto it = buckets[ss].find(a.sum - t);
          if (it == buckets[ss].end()) continue;
          for (std::size_t bi : it->second) {
            const Tuple& b = by_size[ss][bi];
            if (t == 0 && rr == ss && a.entries == b.entries) {
              ++search.trivial;
              continue;
            }
            const Index lo = std::min(a.min_abs, b.min_abs);
            cell_threshold = std::max(cell_threshold, lo);
            search.record({{"t", t}, {"j", tuple_json(a)}, {"l", tuple_json(b)}}, lo,
                          std::max(a.max_abs, b.max_abs));
          }
        }
      }
      per_rs.push_back({rr, ss, cell_threshold});
    }
  }
  r.details["threshold_by_r_s"] = per_rs;
  finish(r, search, cap, p.bound);
  return r;
}

Report hausdorff_condition_check(const SparseFamily& family, Index t_range, unsigned a_max,
                                 Index bound, Index threshold_cap) {
  if (a_max > 6) throw GuardError("more than 6 terms per side");
  if (family.sets.empty()) throw PreconditionError("empty family");
  check_bound(bound);
  Report r("hausdorff_condition_check");
  const Index cap = default_cap(bound, threshold_cap);
  std::vector<std::string> names;
  for (const auto& s : family.sets) names.push_back(s.describe());
  r.parameters = {{"family", names}, {"t_range", t_range}, {"a_max", a_max}, {"bound", bound}};

  Index shared = 0;
  if (const auto clash = family.overlap(bound, &shared)) {
    r.fail({{"reason", "sets overlap"}, {"sets", {clash->first, clash->second}}, {"member", shared}});
    return r;
  }

  const std::size_t k = family.sets.size();
  std::vector<std::vector<Index>> members;
  for (const auto& s : family.sets) members.push_back(s.enumerate(bound));

  // All sides: a_i terms from set i, magnitudes distinct across the side.
  std::vector<Tuple> sides;
  Tuple cur;
  cur.counts.assign(k, 0);
  std::set<Index> used;
  std::function<void(std::size_t, std::size_t, unsigned)> rec = [&](std::size_t set, std::size_t next,
                                                                    unsigned total) {
    if (sides.size() >= kMaxTuples) throw GuardError("side enumeration above 2e6");
    sides.push_back(cur);
    for (std::size_t i = set; i < k && total < a_max; ++i) {
      const auto& m = members[i];
      // Within one set, magnitudes increase; members are sorted by value, so
      // order them by magnitude first.
      std::vector<Index> order = m;
      std::sort(order.begin(), order.end(),
                [](Index x, Index y) { return abs_index(x) < abs_index(y) || (abs_index(x) == abs_index(y) && x < y); });
      const std::size_t start = (i == set) ? next : 0;
      for (std::size_t pos = start; pos < order.size(); ++pos) {
        const Index v = order[pos];
        if (used.count(abs_index(v)) != 0) continue;
        if (i == set && !cur.entries.empty() && cur.counts[i] > 0 &&
            abs_index(v) <= abs_index(cur.entries.back())) {
          continue;
        }
        const Tuple saved = cur;
        cur.entries.push_back(v);
        cur.counts[i] += 1;
        cur.sum += v;
        cur.min_abs = std::min(cur.min_abs, abs_index(v));
        cur.max_abs = std::max(cur.max_abs, abs_index(v));
        used.insert(abs_index(v));
        rec(i, pos + 1, total + 1);
        used.erase(abs_index(v));
        cur = saved;
      }
    }
  };
  rec(0, 0, 0);

  std::unordered_map<Index, std::vector<std::size_t>> bucket;
  for (std::size_t i = 0; i < sides.size(); ++i) bucket[sides[i].sum].push_back(i);

  Search search;
  for (const Tuple& a : sides) {
    for (Index t = -t_range; t <= t_range; ++t) {
      const auto it = bucket.find(a.sum - t);
      if (it == bucket.end()) continue;
      for (std::size_t bi : it->second) {
        const Tuple& b = sides[bi];
        if (t == 0 && a.counts == b.counts) {
          ++search.trivial;
          continue;
        }
        search.record({{"t", t}, {"j", tuple_json(a)}, {"a", a.counts}, {"l", tuple_json(b)},
                       {"b", b.counts}},
                      std::min(a.min_abs, b.min_abs), std::max(a.max_abs, b.max_abs));
      }
    }
  }
  r.details["sides"] = sides.size();
  finish(r, search, cap, bound);
  return r;
}

}  // namespace shiftpred
