#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "shiftpred/finseq.hpp"
#include "shiftpred/report.hpp"
#include "shiftpred/sparse.hpp"

namespace shiftpred {

/// An element of S_k = Z x (Z+)^k u {inf}.
class SemiElem {
 public:
  static SemiElem finite(Index g0, std::vector<unsigned> g);
  static SemiElem infinity() { return SemiElem(); }
  /// n -> (n, 0, ..., 0).
  static SemiElem embed(Index n, std::size_t k) { return finite(n, std::vector<unsigned>(k, 0)); }
  /// e_i, 1 <= i <= k.
  static SemiElem generator(std::size_t i, std::size_t k);

  bool is_infinity() const { return infinite_; }
  Index g0() const { return g0_; }
  const std::vector<unsigned>& exponents() const { return g_; }
  std::size_t k() const { return g_.size(); }
  /// True for (n, 0, ..., 0).
  bool in_z() const;

  std::string to_string() const;
  Json to_json() const;

  friend SemiElem operator+(const SemiElem& a, const SemiElem& b);
  friend auto operator<=>(const SemiElem&, const SemiElem&) = default;

 private:
  SemiElem() = default;

  bool infinite_ = true;
  Index g0_ = 0;
  std::vector<unsigned> g_;
};

inline SemiElem add(const SemiElem& a, const SemiElem& b) { return a + b; }

/// (-g0, g1, ..., gk); inf is fixed.
SemiElem semi_involution(const SemiElem& g);

/// Finitely supported measure on S_k.
class SemiMeasure {
 public:
  using Map = std::map<SemiElem, Scalar>;

  SemiMeasure() = default;
  static SemiMeasure delta(const SemiElem& g, Scalar c = Scalar(1));
  /// a on Z, placed at (n, 0, ..., 0).
  static SemiMeasure embed(const FinSeq& a, std::size_t k);

  void add(const SemiElem& g, const Scalar& c);
  Scalar operator[](const SemiElem& g) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }
  /// The mass at inf.
  Scalar infinity_mass() const;
  double l1_norm() const;

  SemiMeasure& operator+=(const SemiMeasure& rhs);
  SemiMeasure& operator-=(const SemiMeasure& rhs);
  friend SemiMeasure operator-(SemiMeasure a, const SemiMeasure& b) { return a -= b; }
  friend bool operator==(const SemiMeasure&, const SemiMeasure&) = default;

  Json to_json() const;

 private:
  Map entries_;
};

/// sum_{alpha + beta = gamma} mu(alpha) nu(beta).
SemiMeasure convolve_measures(const SemiMeasure& mu, const SemiMeasure& nu);
/// sum conj(c_gamma) delta_{phi(gamma)}.
SemiMeasure adjoint(const SemiMeasure& mu);

struct ProjectionSpec {
  std::vector<FinSeq> images;  // a_1, ..., a_k
  SparseFamily family;         // J^(1), ..., J^(k)
  unsigned probe_depth = 64;
  double probe_bound = 2.0;
  Index search_bound = Index{1} << 16;

  std::size_t k() const { return images.size(); }
  bool is_exact() const;
};

/// k = 1, J = powers of 2, a_1 = lambda^{-1} delta_0.
ProjectionSpec example_spec(const Scalar& lambda_inverse);

/// Evaluates Theta, caching the powers of each a_i.
class Theta {
 public:
  explicit Theta(const ProjectionSpec& spec) : spec_(spec) {}

  /// Theta(delta_gamma) = shift(prod a_i^{gamma_i}, gamma_0); 0 at inf.
  FinSeq of(const SemiElem& g);
  FinSeq operator()(const SemiMeasure& mu);

 private:
  const FinSeq& power_of(std::size_t i, unsigned e);

  const ProjectionSpec& spec_;
  std::map<std::pair<std::size_t, unsigned>, FinSeq> cache_;
};

FinSeq theta(const SemiMeasure& mu, const ProjectionSpec& spec);

/// Power-boundedness probes of the images and the family condition.
Report spec_probe(const ProjectionSpec& spec, Index t_range = 20, unsigned a_max = 2);

/// Random pairs (mu, nu): Theta(mu * nu) = Theta(mu) * Theta(nu); Theta
/// restricted to Z is the identity; Theta(delta_inf) = 0.
Report theta_homomorphism_check(const ProjectionSpec& spec, unsigned trials, std::uint64_t seed = 0);

/// delta_gamma - embed(Theta(delta_gamma)) for each gamma.
std::vector<SemiMeasure> kernel_generators(const ProjectionSpec& spec, const std::vector<SemiElem>& gammas);
Report kernel_check(const ProjectionSpec& spec, const std::vector<SemiElem>& gammas);

/// k eps ||Theta|| (K^k + 1) with ||Theta|| estimated as K^k; K defaults to
/// the largest ||a_i^m||_1 seen for m <= probe_depth.
double kernel_tail_bound(const ProjectionSpec& spec, double eps, std::optional<double> k_const = std::nullopt);
/// max_{i, m <= probe_depth} ||a_i^m||_1.
double probed_power_constant(const ProjectionSpec& spec);

/// Theta(mu*) = Theta(mu)* on random trials. Throws PreconditionError unless
/// every J^(i) is symmetric within the search bound and every a_i is
/// self-adjoint.
Report involution_check(const ProjectionSpec& spec, unsigned trials, std::uint64_t seed = 0);

/// Tests Theta(delta_gamma) * Theta(delta_gamma) = Theta(delta_gamma) on the
/// samples; only gamma = 0 and gamma = inf may pass. Collisions of
/// gamma -> Theta(delta_gamma) among the samples are reported, not enforced.
Report idempotent_scan(const ProjectionSpec& spec, const std::vector<SemiElem>& samples);

}  // namespace shiftpred
