#include "shiftpred/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "shiftpred/power.hpp"

namespace shiftpred {

SemiElem SemiElem::finite(Index g0, std::vector<unsigned> g) {
  SemiElem e;
  e.infinite_ = false;
  e.g0_ = g0;
  e.g_ = std::move(g);
  return e;
}

SemiElem SemiElem::generator(std::size_t i, std::size_t k) {
  if (i == 0 || i > k) throw PreconditionError("generator index out of range");
  std::vector<unsigned> g(k, 0);
  g[i - 1] = 1;
  return finite(0, std::move(g));
}

bool SemiElem::in_z() const {
  return !infinite_ && std::all_of(g_.begin(), g_.end(), [](unsigned v) { return v == 0; });
}

std::string SemiElem::to_string() const {
  if (infinite_) return "inf";
  std::string s = "(" + std::to_string(g0_);
  for (unsigned v : g_) s += "," + std::to_string(v);
  return s + ")";
}

Json SemiElem::to_json() const {
  if (infinite_) return "inf";
  Json j = Json::array({g0_});
  for (unsigned v : g_) j.push_back(v);
  return j;
}

SemiElem operator+(const SemiElem& a, const SemiElem& b) {
  if (a.infinite_ || b.infinite_) return SemiElem::infinity();
  if (a.g_.size() != b.g_.size()) throw PreconditionError("adding elements of different S_k");
  std::vector<unsigned> g(a.g_.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = a.g_[i] + b.g_[i];
  return SemiElem::finite(checked_add(a.g0_, b.g0_), std::move(g));
}

SemiElem semi_involution(const SemiElem& g) {
  if (g.is_infinity()) return g;
  return SemiElem::finite(checked_neg(g.g0()), g.exponents());
}

SemiMeasure SemiMeasure::delta(const SemiElem& g, Scalar c) {
  SemiMeasure m;
  m.add(g, c);
  return m;
}

SemiMeasure SemiMeasure::embed(const FinSeq& a, std::size_t k) {
  SemiMeasure m;
  for (const auto& [n, v] : a) m.add(SemiElem::embed(n, k), v);
  return m;
}

void SemiMeasure::add(const SemiElem& g, const Scalar& c) {
  auto it = entries_.find(g);
  if (it == entries_.end()) {
    if (!c.is_zero()) entries_.emplace(g, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) entries_.erase(it);
}

Scalar SemiMeasure::operator[](const SemiElem& g) const {
  const auto it = entries_.find(g);
  return it == entries_.end() ? Scalar(0) : it->second;
}

Scalar SemiMeasure::infinity_mass() const { return (*this)[SemiElem::infinity()]; }

double SemiMeasure::l1_norm() const {
  double s = 0;
  for (const auto& [g, c] : entries_) s += c.abs();
  return s;
}

SemiMeasure& SemiMeasure::operator+=(const SemiMeasure& rhs) {
  for (const auto& [g, c] : rhs.entries_) add(g, c);
  return *this;
}

SemiMeasure& SemiMeasure::operator-=(const SemiMeasure& rhs) {
  for (const auto& [g, c] : rhs.entries_) add(g, -c);
  return *this;
}

Json SemiMeasure::to_json() const {
  Json j = Json::array();
  for (const auto& [g, c] : entries_) j.push_back({g.to_json(), c.to_string()});
  return j;
}

SemiMeasure convolve_measures(const SemiMeasure& mu, const SemiMeasure& nu) {
  SemiMeasure out;
  for (const auto& [a, x] : mu) {
    for (const auto& [b, y] : nu) out.add(a + b, x * y);
  }
  return out;
}

SemiMeasure adjoint(const SemiMeasure& mu) {
  SemiMeasure out;
  for (const auto& [g, c] : mu) out.add(semi_involution(g), c.conj());
  return out;
}

bool ProjectionSpec::is_exact() const {
  return std::all_of(images.begin(), images.end(), [](const FinSeq& a) { return a.is_exact(); });
}

ProjectionSpec example_spec(const Scalar& lambda_inverse) {
  ProjectionSpec spec;
  spec.images.push_back(FinSeq::delta(0, lambda_inverse));
  spec.family.sets.push_back(SparseSet::powers(2));
  return spec;
}

const FinSeq& Theta::power_of(std::size_t i, unsigned e) {
  const auto key = std::make_pair(i, e);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  FinSeq p = e == 0 ? FinSeq::delta(0) : convolve(power_of(i, e - 1), spec_.images[i]);
  return cache_.emplace(key, std::move(p)).first->second;
}

FinSeq Theta::of(const SemiElem& g) {
  if (g.is_infinity()) return FinSeq();
  if (g.k() != spec_.k()) throw PreconditionError("element of S_" + std::to_string(g.k()) +
                                                  " used with a spec of k = " + std::to_string(spec_.k()));
  FinSeq p = FinSeq::delta(0);
  for (std::size_t i = 0; i < g.k(); ++i) {
    if (g.exponents()[i] != 0) p = convolve(p, power_of(i, g.exponents()[i]));
  }
  return shift(p, g.g0());
}

FinSeq Theta::operator()(const SemiMeasure& mu) {
  FinSeq out;
  for (const auto& [g, c] : mu) {
    if (g.is_infinity()) continue;
    out += of(g) * c;
  }
  return out;
}

FinSeq theta(const SemiMeasure& mu, const ProjectionSpec& spec) { return Theta(spec)(mu); }

namespace {

double tolerance(const ProjectionSpec& spec) { return spec.is_exact() ? 0.0 : 1e-10; }

Scalar random_coefficient(std::mt19937_64& rng, bool exact) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 8);
  if (exact) {
    long p = 0;
    while (p == 0) p = num(rng);
    return Scalar::rational(p, den(rng));
  }
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return Scalar::complex(u(rng), u(rng));
}

SemiElem random_elem(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<int> coin(0, 7);
  if (coin(rng) == 0) return SemiElem::infinity();
  std::uniform_int_distribution<Index> g0(-4, 4);
  std::uniform_int_distribution<unsigned> gi(0, 3);
  std::vector<unsigned> g(k);
  for (auto& v : g) v = gi(rng);
  return SemiElem::finite(g0(rng), std::move(g));
}

SemiMeasure random_measure(std::mt19937_64& rng, std::size_t k, bool exact) {
  std::uniform_int_distribution<int> size(1, 6);
  SemiMeasure m;
  const int n = size(rng);
  for (int i = 0; i < n; ++i) m.add(random_elem(rng, k), random_coefficient(rng, exact));
  return m;
}

FinSeq random_finseq(std::mt19937_64& rng, bool exact) {
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_int_distribution<Index> idx(-10, 10);
  FinSeq a;
  const int n = size(rng);
  for (int i = 0; i < n; ++i) a.add(idx(rng), random_coefficient(rng, exact));
  return a;
}

}  // namespace

double probed_power_constant(const ProjectionSpec& spec) {
  double best = 0;
  for (const auto& a : spec.images) {
    for (const auto& row : power_norm_table(a, spec.probe_depth).rows) best = std::max(best, row.l1);
  }
  return best;
}

Report spec_probe(const ProjectionSpec& spec, Index t_range, unsigned a_max) {
  Report r("spec_probe");
  r.parameters = {{"k", spec.k()}, {"probe_depth", spec.probe_depth}, {"K", spec.probe_bound},
                  {"search_bound", spec.search_bound}};
  if (spec.family.sets.size() != spec.k()) {
    r.fail({{"reason", "family size differs from k"}});
    return r;
  }
  Json probes = Json::array();
  for (std::size_t i = 0; i < spec.k(); ++i) {
    const Report p = power_bounded_probe(spec.images[i], spec.probe_depth, spec.probe_bound);
    probes.push_back(p.to_json());
    if (!p.passed()) r.fail({{"image", i + 1}, {"probe", p.witnesses}});
  }
  const Report h = hausdorff_condition_check(spec.family, t_range, a_max, spec.search_bound);
  r.details["power_probes"] = probes;
  r.details["family"] = h.to_json();
  if (!h.passed()) r.fail({{"family", h.witnesses}});
  r.mark_evidence_only();
  return r;
}

Report theta_homomorphism_check(const ProjectionSpec& spec, unsigned trials, std::uint64_t seed) {
  Report r("theta_homomorphism_check");
  r.parameters = {{"k", spec.k()}, {"trials", trials}, {"seed", seed}};
  const double tol = tolerance(spec);
  const bool exact = spec.is_exact();
  Theta th(spec);
  std::mt19937_64 rng(seed);
  double hom = 0;
  double proj = 0;
  for (unsigned i = 0; i < trials; ++i) {
    const SemiMeasure mu = random_measure(rng, spec.k(), exact);
    const SemiMeasure nu = random_measure(rng, spec.k(), exact);
    const double d = max_difference(th(convolve_measures(mu, nu)), convolve(th(mu), th(nu)));
    hom = std::max(hom, d);
    r.require(d <= tol, {{"clause", "homomorphism"}, {"trial", i}, {"mu", mu.to_json()},
                         {"nu", nu.to_json()}, {"error", d}});
    const FinSeq a = random_finseq(rng, exact);
    const double e = max_difference(th(SemiMeasure::embed(a, spec.k())), a);
    proj = std::max(proj, e);
    r.require(e <= tol, {{"clause", "projection"}, {"trial", i}, {"error", e}});
  }
  const FinSeq at_inf = th(SemiMeasure::delta(SemiElem::infinity()));
  r.require(at_inf.empty(), {{"clause", "theta_infinity"}, {"size", at_inf.size()}});
  r.details["homomorphism_error"] = hom;
  r.details["projection_error"] = proj;
  r.note_error(std::max(hom, proj));
  return r;
}

std::vector<SemiMeasure> kernel_generators(const ProjectionSpec& spec,
                                           const std::vector<SemiElem>& gammas) {
  Theta th(spec);
  std::vector<SemiMeasure> out;
  for (const auto& g : gammas) {
    if (g.is_infinity()) throw PreconditionError("kernel generators need finite elements");
    out.push_back(SemiMeasure::delta(g) - SemiMeasure::embed(th.of(g), spec.k()));
  }
  return out;
}

Report kernel_check(const ProjectionSpec& spec, const std::vector<SemiElem>& gammas) {
  Report r("kernel_check");
  r.parameters = {{"k", spec.k()}, {"generators", gammas.size()}};
  const double tol = tolerance(spec);
  Theta th(spec);
  const auto gens = kernel_generators(spec, gammas);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const double d = sup_norm(th(gens[i]));
    r.note_error(d);
    r.require(d <= tol, {{"gamma", gammas[i].to_string()}, {"residual", d}});
  }
  return r;
}

double kernel_tail_bound(const ProjectionSpec& spec, double eps, std::optional<double> k_const) {
  const double kk = k_const.value_or(probed_power_constant(spec));
  const double k = static_cast<double>(spec.k());
  const double norm_theta = std::pow(kk, k);
  return k * eps * norm_theta * (std::pow(kk, k) + 1);
}

Report involution_check(const ProjectionSpec& spec, unsigned trials, std::uint64_t seed) {
  for (std::size_t i = 0; i < spec.family.sets.size(); ++i) {
    if (!spec.family.sets[i].is_symmetric(spec.search_bound)) {
      throw PreconditionError("J^(" + std::to_string(i + 1) + ") = " + spec.family.sets[i].describe() +
                              " is not symmetric");
    }
  }
  for (std::size_t i = 0; i < spec.k(); ++i) {
    if (max_difference(involution(spec.images[i]), spec.images[i]) > 1e-12) {
      throw PreconditionError("a_" + std::to_string(i + 1) + " is not self-adjoint");
    }
  }
  Report r("involution_check");
  r.parameters = {{"k", spec.k()}, {"trials", trials}, {"seed", seed}};
  const double tol = tolerance(spec);
  Theta th(spec);
  std::mt19937_64 rng(seed);
  for (unsigned i = 0; i < trials; ++i) {
    const SemiMeasure mu = random_measure(rng, spec.k(), spec.is_exact());
    const double d = max_difference(th(adjoint(mu)), involution(th(mu)));
    r.note_error(d);
    r.require(d <= tol, {{"trial", i}, {"mu", mu.to_json()}, {"error", d}});
  }
  return r;
}

Report idempotent_scan(const ProjectionSpec& spec, const std::vector<SemiElem>& samples) {
  Report r("idempotent_scan");
  r.parameters = {{"k", spec.k()}, {"samples", samples.size()}};
  const double tol = tolerance(spec);
  Theta th(spec);
  std::vector<FinSeq> images;
  Json idempotents = Json::array();
  for (const auto& g : samples) {
    const FinSeq p = th.of(g);
    const bool idem = max_difference(convolve(p, p), p) <= tol;
    const bool expected = g.is_infinity() || (g.in_z() && g.g0() == 0);
    if (idem) idempotents.push_back(g.to_json());
    r.require(idem == expected, {{"gamma", g.to_string()}, {"idempotent", idem}, {"expected", expected}});
    images.push_back(p);
  }
  Json collisions = Json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (!(samples[i] == samples[j]) && max_difference(images[i], images[j]) <= tol) {
        collisions.push_back({samples[i].to_json(), samples[j].to_json()});
      }
    }
  }
  r.details["idempotents"] = idempotents;
  r.details["collisions"] = collisions;
  r.details["injective_on_samples"] = collisions.empty();
  return r;
}

}  // namespace shiftpred
