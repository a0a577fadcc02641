#include <doctest.h>

#include "shiftpred/errors.hpp"
#include "shiftpred/xzero.hpp"

using namespace shiftpred;

TEST_CASE("lambda parsing") {
  CHECK(LambdaParam::parse("2").is_exact());
  CHECK(LambdaParam::parse("5/2").is_exact());
  CHECK(LambdaParam::parse("3,0").is_exact());
  CHECK_FALSE(LambdaParam::parse("1.5,0.5").is_exact());
  CHECK_THROWS_AS(LambdaParam::parse("1"), PreconditionError);
  CHECK_THROWS_AS(LambdaParam::parse("0.5,0.5"), PreconditionError);
}

TEST_CASE("binary digit counts") {
  CHECK(*bit_count(Index{0}) == 0);
  CHECK(*bit_count(Index{7}) == 3);
  CHECK(*bit_count(Index{1024}) == 1);
  CHECK_FALSE(bit_count(Index{-1}).has_value());
}

TEST_CASE("x0 for lambda = 3") {
  const LambdaParam l = LambdaParam::parse("3");
  CHECK(x0_eval(l, Index{0}) == Scalar(1));
  CHECK(x0_eval(l, Index{5}) == Scalar::rational(1, 9));
  CHECK(x0_eval(l, Index{-5}).is_zero());
}

TEST_CASE("tau^k x0 vanishes strictly between 0 and 2^k") {
  const LambdaParam l = LambdaParam::parse("2");
  for (unsigned k = 1; k <= 6; ++k) {
    const Index top = Index{1} << k;
    CHECK(tau_power_x0(l, k, 0) == Scalar(1));
    CHECK(tau_power_x0(l, k, top) == Scalar::rational(1, 2));
    for (Index n = 1; n < top; ++n) {
      CHECK(tau_power_x0(l, k, n).is_zero());
      CHECK(tau_power_x0(l, k, -n).is_zero());
    }
  }
}

TEST_CASE("window evaluation matches pointwise evaluation") {
  const LambdaParam l = LambdaParam::parse("2");
  const WindowSeq w = tau_power_window(l, 3, Window(-100, 300));
  for (Index n = -100; n <= 300; ++n) CHECK(w.at(n) == tau_power_x0(l, 3, n));
}

TEST_CASE("identity suites pass in both modes") {
  CHECK(verify_intertwine(LambdaParam::parse("2"), Window::radius(512)).passed());
  const Report r = verify_x0_identities(LambdaParam::parse("2"), Window::radius(1024));
  CHECK(r.status == Status::Pass);
  CHECK(r.max_error == 0.0);
  const Report c = verify_x0_identities(LambdaParam::parse("1.5,0.5"), Window::radius(1024));
  CHECK(c.status == Status::Pass);
  CHECK(c.max_error <= 1e-10);
  CHECK_THROWS_AS(verify_x0_identities(LambdaParam::parse("2"), Window::radius(Index{1} << 25)), WindowError);
}

TEST_CASE("generator battery pairing") {
  const LambdaParam l = LambdaParam::parse("2");
  const Generator g{3, 0};
  const FinSeq a = FinSeq::delta(4, Scalar(6));
  // x0(1) = 1/2
  CHECK(pair(g, l, a) == Scalar(3));
  CHECK(GeneratorBattery::standard(2, 1).generators.size() == 10);
}
