#include <doctest.h>

#include "shiftpred/errors.hpp"
#include "shiftpred/semigroup.hpp"

using namespace shiftpred;

namespace {

ProjectionSpec binomial_spec() {
  ProjectionSpec s;
  s.images.push_back(FinSeq{{0, Scalar::rational(1, 2)}, {1, Scalar::rational(1, 2)}});
  s.family.sets.push_back(SparseSet::powers(2));
  return s;
}

}  // namespace

TEST_CASE("semigroup arithmetic") {
  const SemiElem a = SemiElem::finite(2, {1, 0});
  const SemiElem b = SemiElem::finite(-5, {0, 3});
  CHECK(a + b == SemiElem::finite(-3, {1, 3}));
  CHECK((a + SemiElem::infinity()).is_infinity());
  CHECK(SemiElem::embed(4, 2).in_z());
  CHECK(semi_involution(a) == SemiElem::finite(-2, {1, 0}));
}

TEST_CASE("measure convolution and adjoint") {
  const SemiMeasure mu = SemiMeasure::delta(SemiElem::finite(1, {1}), Scalar(2));
  const SemiMeasure nu = SemiMeasure::delta(SemiElem::infinity(), Scalar(3));
  const SemiMeasure p = convolve_measures(mu, nu);
  CHECK(p.infinity_mass() == Scalar(6));
  CHECK(adjoint(mu)[SemiElem::finite(-1, {1})] == Scalar(2));
  CHECK(adjoint(adjoint(mu)) == mu);
}

TEST_CASE("Theta on generators") {
  const ProjectionSpec s = binomial_spec();
  Theta th(s);
  CHECK(th.of(SemiElem::finite(3, {0})) == FinSeq::delta(3));
  CHECK(th.of(SemiElem::finite(0, {2})) ==
        (FinSeq{{0, Scalar::rational(1, 4)}, {1, Scalar::rational(1, 2)}, {2, Scalar::rational(1, 4)}}));
  CHECK(th.of(SemiElem::infinity()).empty());
  const ProjectionSpec ex = example_spec(Scalar::rational(1, 3));
  CHECK(Theta(ex).of(SemiElem::generator(1, 1)) == FinSeq::delta(0, Scalar::rational(1, 3)));
}

TEST_CASE("Theta is a homomorphism and a projection") {
  const ProjectionSpec s = binomial_spec();
  const Report r = theta_homomorphism_check(s, 40, 1);
  CHECK(r.status == Status::Pass);
  CHECK(r.max_error == 0.0);
}

TEST_CASE("kernel generators are killed") {
  const ProjectionSpec s = binomial_spec();
  const std::vector<SemiElem> g{SemiElem::finite(0, {1}), SemiElem::finite(-2, {3})};
  for (const auto& k : kernel_generators(s, g)) CHECK(theta(k, s).empty());
  CHECK(kernel_check(s, g).status == Status::Pass);
  CHECK(kernel_tail_bound(s, 0.1, 1.0) == doctest::Approx(0.2));
}

TEST_CASE("involution needs a symmetric family") {
  CHECK_THROWS_AS(involution_check(binomial_spec(), 5), PreconditionError);
  ProjectionSpec s;
  s.images.push_back(FinSeq{{-1, Scalar::rational(1, 4)}, {0, Scalar::rational(1, 2)}, {1, Scalar::rational(1, 4)}});
  s.family.sets.push_back(SparseSet::factorials());
  s.search_bound = 40320;
  CHECK(involution_check(s, 20).status == Status::Pass);
}

TEST_CASE("only 0 and infinity are idempotent") {
  const ProjectionSpec s = binomial_spec();
  std::vector<SemiElem> samples{SemiElem::infinity()};
  for (Index t = -2; t <= 2; ++t) {
    for (unsigned e = 0; e <= 2; ++e) samples.push_back(SemiElem::finite(t, {e}));
  }
  const Report r = idempotent_scan(s, samples);
  CHECK(r.status == Status::Pass);
  CHECK(r.details["idempotents"].size() == 2);
}
