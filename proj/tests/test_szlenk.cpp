#include <doctest.h>

#include <random>

#include "shiftpred/errors.hpp"
#include "shiftpred/szlenk.hpp"

using namespace shiftpred;

namespace {

ShrinkParams params(const char* lambda, Scalar eps, Scalar r = Scalar(1)) {
  return ShrinkParams{LambdaParam::parse(lambda), std::move(eps), std::move(r), std::nullopt, 16};
}

}  // namespace

TEST_CASE("shrink radius and iteration bound") {
  CHECK(shrink_radius(params("2", Scalar(1))) == Scalar::rational(8, 9));
  CHECK(shrink_radius(params("3", Scalar::rational(3, 2))) == Scalar::rational(3, 4));
  CHECK(*shrink_iteration_bound(LambdaParam::parse("2"), Scalar(1)) == 10);
  CHECK_FALSE(shrink_iteration_bound(LambdaParam::parse("2"), Scalar::real(1e-12)).has_value());
  CHECK_THROWS_AS(shrink_iteration_bound(LambdaParam::parse("2"), Scalar(3)), PreconditionError);
}

TEST_CASE("canonical witness family") {
  for (const char* lam : {"2", "3", "1.2,0.9"}) {
    const LambdaParam l = LambdaParam::parse(lam);
    CHECK(shrink_witness_check(canonical_family(l), params(lam, Scalar(1))).status == Status::Pass);
  }
}

TEST_CASE("inadmissible families are rejected") {
  const LambdaParam l = LambdaParam::parse("2");
  WitnessFamily w = canonical_family(l);
  w.limit = FinSeq::delta(0);
  CHECK_THROWS_AS(shrink_witness_check(w, params("2", Scalar(1))), InvariantError);
}

TEST_CASE("random admissible families") {
  // delta_{t + 2^n} -> lambda^{-1} delta_t weak*, so the limit is b + c.
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> num(-3, 3);
  const LambdaParam l = LambdaParam::parse("2");
  for (int trial = 0; trial < 8; ++trial) {
    FinSeq b;
    for (Index k = -2; k <= 2; ++k) b.add(k, Scalar::rational(num(rng), 4));
    FinSeq c;
    for (Index t = 0; t <= 3; ++t) c.add(t, Scalar::rational(num(rng), 4));
    if (c.empty()) continue;
    WitnessFamily w;
    w.coordinate_limit = b;
    w.limit = b + c;
    for (unsigned n = 40; n <= 44; ++n) {
      FinSeq a = b;
      for (const auto& [t, v] : c) a.add(t + (Index{1} << n), l.value() * v);
      w.approximants.push_back(a);
    }
    const Scalar r(*l1_norm_exact(w.approximants.back()));
    const Report rep = shrink_witness_check(w, params("2", Scalar(1), r));
    CHECK(rep.status == Status::Pass);
  }
}

TEST_CASE("witness chain separation") {
  ProjectionSpec s;
  s.images.push_back(FinSeq{{0, Scalar::rational(1, 2)}, {1, Scalar::rational(1, 2)}});
  s.family.sets.push_back(SparseSet::powers(2));
  const Report r = witness_chain_check(s, 1.0, 6, 2);
  CHECK(r.status == Status::Pass);
  const FinSeq a = s.images[0];
  CHECK(chain_separation(a, 3, 0, 10) == doctest::Approx(2.0));
  CHECK(chain_separation(a, 3, 0, 0) < 2.0);
  ProjectionSpec shrinking = s;
  shrinking.images[0] = FinSeq::delta(0, Scalar::rational(1, 2));
  CHECK_THROWS_AS(witness_chain_check(shrinking, 1.0, 3, 1), PreconditionError);
}
